//! P1 interpolation and quadrature-measured interpolation errors.

use crate::bounds::{interpolation_bound, BoundMethod, BoundReport, NormOrder};
use crate::error::{Error, Result};
use crate::function::SmoothFunction;
use crate::mesh::Mesh1D;
use crate::quadrature::{CompositeRule, QuadratureSpec};
use crate::scalar::Real;

/// Continuous piecewise-affine function on a mesh, stored by nodal values.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear<T> {
    mesh: Mesh1D<T>,
    values: Vec<T>,
}

impl<T: Real> PiecewiseLinear<T> {
    pub fn new(mesh: Mesh1D<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != mesh.num_nodes() {
            return Err(Error::InvalidArgument(format!(
                "{} values for {} nodes",
                values.len(),
                mesh.num_nodes()
            )));
        }
        Ok(Self { mesh, values })
    }

    pub fn mesh(&self) -> &Mesh1D<T> {
        &self.mesh
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Constant derivative on a cell.
    pub fn slope(&self, cell: usize) -> Result<T> {
        let h = self.mesh.width(cell)?;
        Ok((self.values[cell + 1] - self.values[cell]) / h)
    }

    fn eval_in(&self, cell: usize, x: T) -> T {
        let nodes = self.mesh.nodes();
        let (a, b) = (nodes[cell], nodes[cell + 1]);
        if x == a {
            return self.values[cell];
        }
        if x == b {
            return self.values[cell + 1];
        }
        let t = (x - a) / (b - a);
        self.values[cell] * (T::one() - t) + self.values[cell + 1] * t
    }

    fn slope_in(&self, cell: usize) -> T {
        let nodes = self.mesh.nodes();
        (self.values[cell + 1] - self.values[cell]) / (nodes[cell + 1] - nodes[cell])
    }

    pub fn eval(&self, x: T) -> Result<T> {
        let c = self.mesh.locate(x)?;
        Ok(self.eval_in(c, x))
    }

    /// Derivative; at interior nodes the left cell's slope is returned.
    pub fn eval_d1(&self, x: T) -> Result<T> {
        let c = self.mesh.locate(x)?;
        Ok(self.slope_in(c))
    }
}

/// Nodal P1 interpolant `u_I` of `f`.
pub fn interpolate<T: Real>(f: &SmoothFunction<T>, mesh: &Mesh1D<T>) -> PiecewiseLinear<T> {
    let values = mesh.nodes().iter().map(|&x| f.value(x)).collect();
    PiecewiseLinear {
        mesh: mesh.clone(),
        values,
    }
}

/// `L^p` norms of `v - pl` and `v' - pl'` and the combined `W^{1,p}` norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms<T> {
    pub l_p: T,
    pub d1_l_p: T,
    pub w1p: T,
}

/// Integrates `|v - pl|^p` and `|v' - pl'|^p` cell by cell.
///
/// Panels never straddle mesh nodes, so the kinks of `pl` are honoured.
pub fn error_norms_of<T, V, D>(
    value: V,
    d1: D,
    pl: &PiecewiseLinear<T>,
    p: NormOrder,
    quad: QuadratureSpec,
) -> ErrorNorms<T>
where
    T: Real,
    V: Fn(T) -> T,
    D: Fn(T) -> T,
{
    let rule = CompositeRule::new(quad);
    let pi = p.get() as i32;
    let inv_p = p.as_real::<T>().recip();
    let mut l_pow = T::zero();
    let mut d_pow = T::zero();
    for c in 0..pl.mesh.num_cells() {
        let (a, b) = (pl.mesh.nodes()[c], pl.mesh.nodes()[c + 1]);
        let slope = pl.slope_in(c);
        l_pow += rule.integrate(a, b, |x| (value(x) - pl.eval_in(c, x)).abs().powi(pi));
        d_pow += rule.integrate(a, b, |x| (d1(x) - slope).abs().powi(pi));
    }
    ErrorNorms {
        l_p: l_pow.powf(inv_p),
        d1_l_p: d_pow.powf(inv_p),
        w1p: (l_pow + d_pow).powf(inv_p),
    }
}

/// All three error norms of `f - pl`.
pub fn error_norms<T: Real>(
    f: &SmoothFunction<T>,
    pl: &PiecewiseLinear<T>,
    p: NormOrder,
    quad: QuadratureSpec,
) -> ErrorNorms<T> {
    error_norms_of(|x| f.value(x), |x| f.d1(x), pl, p, quad)
}

/// `||u - u_I||_{0,p}`.
pub fn error_norm_0p<T: Real>(f: &SmoothFunction<T>, pl: &PiecewiseLinear<T>, p: NormOrder, quad: QuadratureSpec) -> T {
    error_norms(f, pl, p, quad).l_p
}

/// `||u' - u_I'||_{0,p}`.
pub fn error_norm_d1_0p<T: Real>(
    f: &SmoothFunction<T>,
    pl: &PiecewiseLinear<T>,
    p: NormOrder,
    quad: QuadratureSpec,
) -> T {
    error_norms(f, pl, p, quad).d1_l_p
}

/// `||u - u_I||_{1,p}`.
pub fn error_norm_1p<T: Real>(f: &SmoothFunction<T>, pl: &PiecewiseLinear<T>, p: NormOrder, quad: QuadratureSpec) -> T {
    error_norms(f, pl, p, quad).w1p
}

/// Measures `||u - u_I||_{1,p}` on `mesh` and pairs it with the bound of
/// `method` at `h = mesh_size(mesh)`.
///
/// Functions with estimated second-derivative bounds are refused.
pub fn verify_bound<T: Real>(
    f: &SmoothFunction<T>,
    mesh: &Mesh1D<T>,
    p: NormOrder,
    method: BoundMethod,
    quad: QuadratureSpec,
) -> Result<BoundReport<T>> {
    let measured = error_norm_1p(f, &interpolate(f, mesh), p, quad);
    bound_for_measured(f, mesh, p, method, measured)
}

/// [`verify_bound`] with an already measured error, so one quadrature pass
/// can serve several methods.
pub fn bound_for_measured<T: Real>(
    f: &SmoothFunction<T>,
    mesh: &Mesh1D<T>,
    p: NormOrder,
    method: BoundMethod,
    measured: T,
) -> Result<BoundReport<T>> {
    if !f.has_exact_bounds() {
        return Err(Error::ApproximateBounds(f.name().to_string()));
    }
    let mut report = interpolation_bound(method, p, mesh.mesh_size(), f.sup_d2(), f.oscillation())?;
    report.measured_error = Some(measured);
    Ok(report)
}
