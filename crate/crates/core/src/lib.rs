//! Verification toolkit for P1 interpolation and P1 finite-element error
//! estimates in `W^{1,p}(0,1)`.
//!
//! The floating-point machinery (meshes, test functions, expansions,
//! quadrature norms, the finite-element solver) is generic over [`Real`],
//! so it runs in `f32` or `f64`. Error-estimate constants are exact
//! [`BigRational`](num_rational::BigRational) values and are only converted
//! to floating point when a numeric bound is evaluated.
//!
//! The `f64` aliases at the crate root are what most callers want.

// `!(x > 0)` deliberately sends NaN down the error path
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod expansion;
pub mod fem;
pub mod function;
pub mod interp;
pub mod mesh;
pub mod quadrature;
pub mod report;
pub mod scalar;

pub use bounds::{BoundMethod, NormOrder};
pub use error::{Error, Result};
pub use scalar::Real;

/// Mesh of `[0, 1]` in double precision.
pub type Mesh = mesh::Mesh1D<f64>;
/// Double-precision test function with second-derivative bounds.
pub type Function = function::SmoothFunction<f64>;
/// Double-precision P1 interpolant.
pub type Interpolant = interp::PiecewiseLinear<f64>;
/// Double-precision expansion step result.
pub type Expansion = expansion::ExpansionResult<f64>;
/// Double-precision bound report.
pub type Report = bounds::BoundReport<f64>;
/// Double-precision boundary-value problem.
pub type Problem = fem::BvpProblem<f64>;
/// Double-precision finite-element solution.
pub type Solution = fem::FemSolution<f64>;

/// Single-precision mesh.
pub type Mesh32 = mesh::Mesh1D<f32>;
/// Single-precision test function.
pub type Function32 = function::SmoothFunction<f32>;
