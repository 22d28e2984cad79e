//! P1 finite elements for `-u'' + u = f` on `(0,1)`, `u(0) = u(1) = 0`.
//!
//! The bilinear form `a(u, v) = int u'v' + uv` is the `H^1` inner product, so
//! for `p = 2` the discrete solution is the `H^1`-orthogonal projection onto
//! the P1 space and its error never exceeds the interpolation error. For other
//! exponents the quasi-optimality constant is a user input ([`CeaConstant`]).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::bounds::{interpolation_bound, mesh_savings, BoundMethod, BoundReport, MeshSavings, NormOrder};
use crate::error::{Error, Result};
use crate::function::{ScalarFn, SecondDerivativeBounds, SmoothFunction};
use crate::interp::{error_norms, error_norms_of, interpolate, PiecewiseLinear};
use crate::mesh::Mesh1D;
use crate::quadrature::{CompositeRule, QuadratureSpec};
use crate::scalar::Real;

/// Largest mesh searched by [`savings_experiment`].
pub const MAX_SAVINGS_CELLS: usize = 1 << 14;

#[derive(Clone)]
pub struct BvpProblem<T> {
    name: String,
    load: ScalarFn<T>,
    exact: Option<SmoothFunction<T>>,
}

impl<T: Real> fmt::Debug for BvpProblem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BvpProblem")
            .field("name", &self.name)
            .field("exact", &self.exact)
            .finish()
    }
}

impl<T: Real> BvpProblem<T> {
    /// Problem with load `f` and no known solution.
    pub fn new<F>(name: impl Into<String>, load: F) -> Self
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            load: Arc::new(load),
            exact: None,
        }
    }

    /// Problem with load and exact solution supplied separately; checks
    /// `-u'' + u = f` on a 101-point grid and the boundary conditions.
    pub fn with_exact<F>(name: impl Into<String>, load: F, exact: SmoothFunction<T>) -> Result<Self>
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        let tol = T::lit(1e-10);
        if exact.value(T::zero()).abs() > tol || exact.value(T::one()).abs() > tol {
            return Err(Error::Precondition(format!(
                "exact solution `{}` must vanish at 0 and 1",
                exact.name()
            )));
        }
        for i in 0..=100 {
            let x = T::from_count(i) / T::lit(100.0);
            let residual = -exact.d2(x) + exact.value(x) - load(x);
            if !(residual.abs() <= tol * (T::one() + load(x).abs())) {
                return Err(Error::Precondition(format!(
                    "-u'' + u != f at x = {x} (residual {residual})"
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            load: Arc::new(load),
            exact: Some(exact),
        })
    }

    /// Manufactured problem: the load is `-u'' + u` of the given solution.
    pub fn manufactured(exact: SmoothFunction<T>) -> Result<Self> {
        let u = exact.clone();
        Self::with_exact(exact.name().to_string(), move |x| -u.d2(x) + u.value(x), exact)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn load(&self, x: T) -> T {
        (self.load)(x)
    }

    pub fn exact(&self) -> Option<&SmoothFunction<T>> {
        self.exact.as_ref()
    }

    fn require_exact(&self) -> Result<&SmoothFunction<T>> {
        self.exact
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("problem `{}` has no exact solution", self.name)))
    }
}

/// Built-in manufactured problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemPreset {
    /// `u = sin(pi x)`, `f = (1 + pi^2) sin(pi x)`
    SinPi,
    /// `u = x (1 - x)`, `f = 2 + x - x^2`
    Parabola,
    /// `u = 0`, `f = 0`
    Zero,
}

impl ProblemPreset {
    pub const ALL: [ProblemPreset; 3] = [ProblemPreset::SinPi, ProblemPreset::Parabola, ProblemPreset::Zero];

    pub fn name(self) -> &'static str {
        match self {
            ProblemPreset::SinPi => "sin_pi",
            ProblemPreset::Parabola => "parabola",
            ProblemPreset::Zero => "zero",
        }
    }

    pub fn build<T: Real>(self) -> BvpProblem<T> {
        let bounds = |lo: T, hi: T| SecondDerivativeBounds::tight(lo, hi).expect("preset bounds");
        match self {
            ProblemPreset::SinPi => {
                let pi = T::PI();
                let exact = crate::function::Preset::SinPi.build();
                BvpProblem::with_exact(self.name(), move |x| (T::one() + pi * pi) * (pi * x).sin(), exact)
            }
            ProblemPreset::Parabola => {
                let two = T::lit(2.0);
                let exact = SmoothFunction::new(
                    "parabola",
                    |x: T| x * (T::one() - x),
                    move |x: T| T::one() - two * x,
                    move |_| -two,
                    bounds(-two, -two),
                );
                BvpProblem::with_exact(self.name(), move |x| two + x - x * x, exact)
            }
            ProblemPreset::Zero => {
                let exact = SmoothFunction::new(
                    "zero",
                    |_| T::zero(),
                    |_| T::zero(),
                    |_| T::zero(),
                    bounds(T::zero(), T::zero()),
                );
                BvpProblem::with_exact(self.name(), |_| T::zero(), exact)
            }
        }
        .expect("preset problems are consistent")
    }
}

impl fmt::Display for ProblemPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemPreset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::NotFound {
                kind: "problem preset",
                name: s.to_string(),
                valid: Self::ALL.map(ProblemPreset::name).join(", "),
            })
    }
}

/// Symmetric tridiagonal matrix over the interior nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem<T> {
    pub diag: Vec<T>,
    /// `off[j]` couples unknowns `j` and `j + 1`.
    pub off: Vec<T>,
}

impl<T: Real> TridiagonalSystem<T> {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn mul(&self, x: &[T]) -> Vec<T> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut v = self.diag[i] * x[i];
                if i > 0 {
                    v += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    v += self.off[i] * x[i + 1];
                }
                v
            })
            .collect()
    }

    /// Thomas elimination without pivoting. A nonpositive pivot means the
    /// matrix is not SPD.
    pub fn solve(&self, rhs: &[T]) -> Result<Vec<T>> {
        let n = self.len();
        if rhs.len() != n {
            return Err(Error::InvalidArgument(format!(
                "rhs has {} entries for {n} unknowns",
                rhs.len()
            )));
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        let mut pivots = Vec::with_capacity(n);
        let mut y = Vec::with_capacity(n);
        pivots.push(self.diag[0]);
        y.push(rhs[0]);
        if !(pivots[0] > T::zero()) {
            return Err(Error::NotPositiveDefinite(0));
        }
        for i in 1..n {
            let m = self.off[i - 1] / pivots[i - 1];
            let d = self.diag[i] - m * self.off[i - 1];
            if !(d > T::zero()) {
                return Err(Error::NotPositiveDefinite(i));
            }
            pivots.push(d);
            y.push(rhs[i] - m * y[i - 1]);
        }
        let mut x = vec![T::zero(); n];
        x[n - 1] = y[n - 1] / pivots[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = (y[i] - self.off[i] * x[i + 1]) / pivots[i];
        }
        Ok(x)
    }
}

/// Stiffness plus mass matrix from exact element integrals: per cell
/// `[1, -1; -1, 1]/h + h [1/3, 1/6; 1/6, 1/3]`.
pub fn assemble<T: Real>(mesh: &Mesh1D<T>) -> TridiagonalSystem<T> {
    let interior = mesh.num_cells() - 1;
    let widths: Vec<T> = mesh.widths().collect();
    let (third, sixth) = (T::lit(3.0).recip(), T::lit(6.0).recip());
    let diag = (1..=interior)
        .map(|j| {
            let (hl, hr) = (widths[j - 1], widths[j]);
            hl.recip() + hr.recip() + (hl + hr) * third
        })
        .collect();
    let off = (1..interior).map(|j| -widths[j].recip() + widths[j] * sixth).collect();
    TridiagonalSystem { diag, off }
}

/// Nodal coefficients of `u_h`; boundary entries are exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct FemSolution<T> {
    pub mesh: Mesh1D<T>,
    pub coefficients: Vec<T>,
}

impl<T: Real> FemSolution<T> {
    pub fn as_piecewise_linear(&self) -> PiecewiseLinear<T> {
        PiecewiseLinear::new(self.mesh.clone(), self.coefficients.clone()).expect("one coefficient per node")
    }
}

/// `int f phi_j` for every interior hat function `phi_j`.
pub fn load_vector<T: Real>(problem: &BvpProblem<T>, mesh: &Mesh1D<T>, quad: QuadratureSpec) -> Result<Vec<T>> {
    let rule = CompositeRule::new(quad);
    let nodes = mesh.nodes();
    let mut full = vec![T::zero(); mesh.num_nodes()];
    let mut bad: Option<T> = None;
    for c in 0..mesh.num_cells() {
        let (a, b) = (nodes[c], nodes[c + 1]);
        let h = b - a;
        let mut eval = |x: T| {
            let v = problem.load(x);
            if !v.is_finite() {
                bad.get_or_insert(x);
            }
            v
        };
        full[c] += rule.integrate(a, b, |x| eval(x) * (b - x) / h);
        full[c + 1] += rule.integrate(a, b, |x| eval(x) * (x - a) / h);
    }
    if let Some(x) = bad {
        return Err(Error::NumericDomain(format!("load f({x}) is not finite")));
    }
    Ok(full[1..mesh.num_nodes() - 1].to_vec())
}

/// Galerkin solution in the P1 space with homogeneous Dirichlet conditions.
pub fn solve<T: Real>(problem: &BvpProblem<T>, mesh: &Mesh1D<T>, quad: QuadratureSpec) -> Result<FemSolution<T>> {
    let rhs = load_vector(problem, mesh, quad)?;
    let interior = assemble(mesh).solve(&rhs)?;
    let mut coefficients = Vec::with_capacity(mesh.num_nodes());
    coefficients.push(T::zero());
    coefficients.extend(interior);
    coefficients.push(T::zero());
    Ok(FemSolution {
        mesh: mesh.clone(),
        coefficients,
    })
}

/// `||u - u_h||_{1,p}` against the problem's exact solution.
pub fn fem_error<T: Real>(
    problem: &BvpProblem<T>,
    sol: &FemSolution<T>,
    p: NormOrder,
    quad: QuadratureSpec,
) -> Result<T> {
    let u = problem.require_exact()?;
    Ok(error_norms_of(|x| u.value(x), |x| u.d1(x), &sol.as_piecewise_linear(), p, quad).w1p)
}

/// Quasi-optimality constant `C >= 1` relating FEM and best-approximation errors.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CeaConstant<T>(T);

impl<T: Real> CeaConstant<T> {
    pub fn new(value: T) -> Result<Self> {
        if !(value >= T::one()) || !value.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "Cea constant must be a finite value >= 1, got {value}"
            )));
        }
        Ok(Self(value))
    }

    /// `C = 1`, exact for `p = 2` with the `H^1` inner-product form.
    pub fn one() -> Self {
        Self(T::one())
    }

    pub fn value(self) -> T {
        self.0
    }
}

impl<T: Real> Default for CeaConstant<T> {
    fn default() -> Self {
        Self::one()
    }
}

/// FEM error, interpolation error and interpolation bound for one mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct CeaReport<T> {
    pub problem: String,
    pub num_cells: usize,
    pub h: T,
    pub p: NormOrder,
    pub method: BoundMethod,
    pub fem_error: T,
    pub interp_error: T,
    pub interp_bound: BoundReport<T>,
    pub cea: CeaConstant<T>,
    /// `fem_error <= interp_error` was asserted (only for `p = 2`, `C = 1`).
    pub galerkin_checked: bool,
    pub ok: bool,
}

impl<T: Real> CeaReport<T> {
    /// `C` times the interpolation bound: the bound on the FEM error.
    pub fn fem_bound(&self) -> T {
        self.cea.value() * self.interp_bound.bound
    }
}

/// Relative slack for quadrature noise in containment checks.
const REL_SLACK: f64 = 1e-10;
/// Absolute slack for the Galerkin-optimality check.
const GALERKIN_ABS_SLACK: f64 = 1e-9;

/// Solves on `mesh` and checks `||u - u_h|| <= C ||u - u_I|| <= C * bound`.
///
/// `interp_error <= bound` is always asserted. `fem_error <= interp_error`
/// is asserted only for `p = 2` with `C = 1`.
pub fn cea_chain<T: Real>(
    problem: &BvpProblem<T>,
    mesh: &Mesh1D<T>,
    p: NormOrder,
    cea: CeaConstant<T>,
    method: BoundMethod,
    quad: QuadratureSpec,
) -> Result<CeaReport<T>> {
    let u = problem.require_exact()?;
    if !u.has_exact_bounds() {
        return Err(Error::ApproximateBounds(u.name().to_string()));
    }
    let sol = solve(problem, mesh, quad)?;
    let fem = fem_error(problem, &sol, p, quad)?;
    let interp = error_norms(u, &interpolate(u, mesh), p, quad).w1p;
    let mut bound = interpolation_bound(method, p, mesh.mesh_size(), u.sup_d2(), u.oscillation())?;
    bound.measured_error = Some(interp);

    let rel = T::one() + T::lit(REL_SLACK);
    let mut ok = interp <= bound.bound * rel + T::lit(1e-13);
    let galerkin_checked = p.get() == 2 && cea.value() == T::one();
    if galerkin_checked {
        ok &= fem <= interp * rel + T::lit(GALERKIN_ABS_SLACK);
    }
    Ok(CeaReport {
        problem: problem.name().to_string(),
        num_cells: mesh.num_cells(),
        h: mesh.mesh_size(),
        p,
        method,
        fem_error: fem,
        interp_error: interp,
        interp_bound: bound,
        cea,
        galerkin_checked,
        ok,
    })
}

/// Outcome of the bound-driven mesh search.
#[derive(Debug, Clone, PartialEq)]
pub struct SavingsReport<T> {
    pub p: NormOrder,
    pub dim: u32,
    pub target: T,
    pub cea: CeaConstant<T>,
    pub coarse_method: BoundMethod,
    pub fine_method: BoundMethod,
    /// Fewest uniform cells meeting the target under each bound;
    /// `MAX_SAVINGS_CELLS` when saturated.
    pub coarse_cells: usize,
    pub fine_cells: usize,
    pub coarse_bound: T,
    pub fine_bound: T,
    /// `fine_cells / coarse_cells` (equal to `h_coarse / h_fine`).
    pub h_ratio: T,
    pub node_factor: T,
    pub theory: MeshSavings<T>,
    /// Measured `||u - u_h||_{1,p}` on the two meshes, when the exact
    /// solution is known.
    pub coarse_fem_error: Option<T>,
    pub fine_fem_error: Option<T>,
    /// The target is not reachable with `MAX_SAVINGS_CELLS` cells.
    pub saturated: bool,
}

fn fem_bound_at<T: Real>(
    method: BoundMethod,
    p: NormOrder,
    cells: usize,
    u: &SmoothFunction<T>,
    cea: CeaConstant<T>,
) -> Result<T> {
    let h = T::from_count(cells).recip();
    Ok(cea.value() * interpolation_bound(method, p, h, u.sup_d2(), u.oscillation())?.bound)
}

/// Fewest uniform cells in `1..=MAX_SAVINGS_CELLS` whose bound is at most
/// `target`, by bisection. `Err(bound at the finest mesh)` if none.
fn coarsest_mesh<T: Real>(
    method: BoundMethod,
    p: NormOrder,
    target: T,
    u: &SmoothFunction<T>,
    cea: CeaConstant<T>,
) -> Result<std::result::Result<(usize, T), T>> {
    let b1 = fem_bound_at(method, p, 1, u, cea)?;
    if b1 <= target {
        return Ok(Ok((1, b1)));
    }
    let bmax = fem_bound_at(method, p, MAX_SAVINGS_CELLS, u, cea)?;
    if bmax > target {
        return Ok(Err(bmax));
    }
    // invariant: bound(lo) > target >= bound(hi)
    let (mut lo, mut hi, mut bhi) = (1usize, MAX_SAVINGS_CELLS, bmax);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let b = fem_bound_at(method, p, mid, u, cea)?;
        if b <= target {
            hi = mid;
            bhi = b;
        } else {
            lo = mid;
        }
    }
    Ok(Ok((hi, bhi)))
}

/// Compares the coarsest uniform meshes on which the Taylor and asymptotic
/// Taylor-like bounds (times `C`) guarantee `||u - u_h||_{1,p} <= target`.
pub fn savings_experiment<T: Real>(
    problem: &BvpProblem<T>,
    p: NormOrder,
    target: T,
    dim: u32,
    cea: CeaConstant<T>,
    quad: QuadratureSpec,
) -> Result<SavingsReport<T>> {
    if !(target > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "target error must be positive, got {target}"
        )));
    }
    let coarse_method = BoundMethod::TaylorLikeAsymptotic;
    let fine_method = BoundMethod::Taylor;
    let theory = mesh_savings(p, coarse_method, fine_method, dim)?;
    let u = problem.require_exact()?;
    if !u.has_exact_bounds() {
        return Err(Error::ApproximateBounds(u.name().to_string()));
    }
    let coarse = coarsest_mesh(coarse_method, p, target, u, cea)?;
    let fine = coarsest_mesh(fine_method, p, target, u, cea)?;
    let saturated = coarse.is_err() || fine.is_err();
    let unpack = |r: std::result::Result<(usize, T), T>| match r {
        Ok(v) => v,
        Err(b) => (MAX_SAVINGS_CELLS, b),
    };
    let (coarse_cells, coarse_bound) = unpack(coarse);
    let (fine_cells, fine_bound) = unpack(fine);
    let h_ratio = T::from_count(fine_cells) / T::from_count(coarse_cells);

    let measure = |cells: usize| -> Result<T> {
        let mesh = Mesh1D::uniform(cells)?;
        fem_error(problem, &solve(problem, &mesh, quad)?, p, quad)
    };
    Ok(SavingsReport {
        p,
        dim,
        target,
        cea,
        coarse_method,
        fine_method,
        coarse_cells,
        fine_cells,
        coarse_bound,
        fine_bound,
        h_ratio,
        node_factor: h_ratio.powi(dim as i32),
        theory,
        coarse_fem_error: Some(measure(coarse_cells)?),
        fine_fem_error: Some(measure(fine_cells)?),
        saturated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn p(v: u32) -> NormOrder {
        NormOrder::new(v).unwrap()
    }

    fn q() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn assembly_closed_forms() {
        let sys = assemble(&Mesh1D::<f64>::uniform(2).unwrap());
        assert_eq!(sys.len(), 1);
        assert!((sys.diag[0] - (4.0 + 1.0 / 3.0)).abs() < 1e-15);
        assert!(sys.off.is_empty());

        let sys = assemble(&Mesh1D::<f64>::uniform(1).unwrap());
        assert!(sys.is_empty());

        let sys = assemble(&Mesh1D::<f64>::perturbed(10, 0.4, 3).unwrap());
        assert_eq!((sys.diag.len(), sys.off.len()), (9, 8));
        assert!(sys.diag.iter().all(|&d| d > 0.0));
        assert!(sys.off.iter().all(|&o| o < 0.0));
    }

    #[test]
    fn thomas_solves_spd_systems() {
        let sys = TridiagonalSystem {
            diag: vec![4.0f64, 4.0, 4.0, 4.0],
            off: vec![-1.0, -1.0, -1.0],
        };
        let x = vec![1.0, -2.0, 0.5, 3.0];
        let b = sys.mul(&x);
        let got = sys.solve(&b).unwrap();
        for (g, e) in got.iter().zip(&x) {
            assert!((g - e).abs() < 1e-14);
        }
        let bad = TridiagonalSystem {
            diag: vec![1.0, 1.0],
            off: vec![2.0],
        };
        assert_eq!(bad.solve(&[1.0, 1.0]), Err(Error::NotPositiveDefinite(1)));
        assert!(sys.solve(&[1.0]).is_err());
    }

    #[test]
    fn zero_load_gives_zero_solution() {
        let prob = ProblemPreset::Zero.build::<f64>();
        let mesh = Mesh1D::uniform(8).unwrap();
        let sol = solve(&prob, &mesh, q()).unwrap();
        assert!(sol.coefficients.iter().all(|&c| c == 0.0));
        assert_eq!(fem_error(&prob, &sol, p(2), q()).unwrap(), 0.0);
        let r = cea_chain(&prob, &mesh, p(2), CeaConstant::one(), BoundMethod::Taylor, q()).unwrap();
        assert_eq!((r.fem_error, r.interp_error, r.fem_bound()), (0.0, 0.0, 0.0));
        assert!(r.ok);
    }

    #[test]
    fn single_cell_mesh() {
        let prob = ProblemPreset::SinPi.build::<f64>();
        let sol = solve(&prob, &Mesh1D::uniform(1).unwrap(), q()).unwrap();
        assert_eq!(sol.coefficients, vec![0.0, 0.0]);
    }

    #[test]
    fn boundary_coefficients_are_zero() {
        let prob = ProblemPreset::Parabola.build::<f64>();
        let sol = solve(&prob, &Mesh1D::perturbed(12, 0.3, 8).unwrap(), q()).unwrap();
        assert_eq!(sol.coefficients[0], 0.0);
        assert_eq!(*sol.coefficients.last().unwrap(), 0.0);
    }

    #[test]
    fn non_finite_load_rejected() {
        let poisoned = BvpProblem::<f64>::new("nan", |_| f64::NAN);
        assert!(matches!(
            solve(&poisoned, &Mesh1D::uniform(4).unwrap(), q()),
            Err(Error::NumericDomain(_))
        ));
    }

    #[test]
    fn missing_exact_solution() {
        let prob = BvpProblem::<f64>::new("load only", |x| x);
        let mesh = Mesh1D::uniform(4).unwrap();
        let sol = solve(&prob, &mesh, q()).unwrap();
        assert!(matches!(fem_error(&prob, &sol, p(2), q()), Err(Error::Precondition(_))));
    }

    #[test]
    fn inconsistent_manufactured_problem() {
        let exact = crate::function::Preset::SinPi.build::<f64>();
        assert!(BvpProblem::with_exact("wrong", |x| (PI * x).sin(), exact).is_err());
        let nonzero_bc = crate::function::Preset::Quadratic.build::<f64>();
        assert!(BvpProblem::manufactured(nonzero_bc).is_err());
    }

    #[test]
    fn parabola_converges_first_order() {
        let prob = ProblemPreset::Parabola.build::<f64>();
        let errs: Vec<f64> = [8, 16, 32, 64]
            .iter()
            .map(|&n| {
                let mesh = Mesh1D::uniform(n).unwrap();
                fem_error(&prob, &solve(&prob, &mesh, q()).unwrap(), p(2), q()).unwrap()
            })
            .collect();
        for w in errs.windows(2) {
            let rate = (w[0] / w[1]).log2();
            assert!((0.9..=1.1).contains(&rate), "rate {rate}");
        }
    }

    #[test]
    fn galerkin_optimality_for_presets() {
        for preset in ProblemPreset::ALL {
            let prob = preset.build::<f64>();
            for n in [8, 16, 32, 64] {
                let mesh = Mesh1D::uniform(n).unwrap();
                let r = cea_chain(&prob, &mesh, p(2), CeaConstant::one(), BoundMethod::Taylor, q()).unwrap();
                assert!(r.galerkin_checked);
                assert!(r.fem_error <= r.interp_error + 1e-9, "{} n={n}", preset.name());
                assert!(r.ok);
            }
        }
    }

    #[test]
    fn banach_case_only_checks_interpolation() {
        let prob = ProblemPreset::SinPi.build::<f64>();
        let mesh = Mesh1D::uniform(32).unwrap();
        let cea = CeaConstant::new(2.0).unwrap();
        let r = cea_chain(&prob, &mesh, p(5), cea, BoundMethod::Taylor, q()).unwrap();
        assert!(!r.galerkin_checked);
        assert!(r.ok);
        assert_eq!(r.fem_bound(), 2.0 * r.interp_bound.bound);
    }

    #[test]
    fn cea_constant_validation() {
        assert!(CeaConstant::new(0.5f64).is_err());
        assert!(CeaConstant::new(f64::INFINITY).is_err());
        assert_eq!(CeaConstant::<f64>::default().value(), 1.0);
    }

    #[test]
    fn load_quadrature_is_converged() {
        let prob = ProblemPreset::SinPi.build::<f64>();
        let mesh = Mesh1D::uniform(16).unwrap();
        let a = solve(&prob, &mesh, q()).unwrap();
        let b = solve(&prob, &mesh, q().refined()).unwrap();
        let diff = a
            .coefficients
            .iter()
            .zip(&b.coefficients)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        assert!(diff < 1e-10);
    }

    #[test]
    fn savings_saturation_at_one_cell() {
        let prob = ProblemPreset::SinPi.build::<f64>();
        let r = savings_experiment(&prob, p(2), 1e3, 3, CeaConstant::one(), q()).unwrap();
        assert_eq!((r.coarse_cells, r.fine_cells), (1, 1));
        assert_eq!(r.h_ratio, 1.0);
        assert!(!r.saturated);
    }

    #[test]
    fn savings_unreachable_target() {
        let prob = ProblemPreset::SinPi.build::<f64>();
        let r = savings_experiment(
            &prob,
            p(2),
            1e-12,
            3,
            CeaConstant::one(),
            QuadratureSpec::new(2, 1).unwrap(),
        )
        .unwrap();
        assert!(r.saturated);
        assert_eq!(r.fine_cells, MAX_SAVINGS_CELLS);
        assert!(savings_experiment(&prob, p(2), -1.0, 3, CeaConstant::one(), q()).is_err());
    }

    #[test]
    fn bisection_finds_the_coarsest_mesh() {
        let prob = ProblemPreset::SinPi.build::<f64>();
        let u = prob.exact().unwrap();
        let target = 0.05;
        let cea = CeaConstant::one();
        let (n, _) = coarsest_mesh(BoundMethod::Taylor, p(3), target, u, cea)
            .unwrap()
            .unwrap();
        assert!(fem_bound_at(BoundMethod::Taylor, p(3), n, u, cea).unwrap() <= target);
        assert!(fem_bound_at(BoundMethod::Taylor, p(3), n - 1, u, cea).unwrap() > target);
    }
}
