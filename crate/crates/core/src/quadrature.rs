//! Composite Gauss–Legendre quadrature over mesh cells.

use crate::error::{Error, Result};
use crate::mesh::Mesh1D;
use crate::scalar::Real;

/// Gauss–Legendre order per panel and number of equal panels per cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadratureSpec {
    points_per_panel: usize,
    panels_per_cell: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            points_per_panel: 8,
            panels_per_cell: 16,
        }
    }
}

impl QuadratureSpec {
    pub fn new(points_per_panel: usize, panels_per_cell: usize) -> Result<Self> {
        if points_per_panel < 2 || panels_per_cell < 1 {
            return Err(Error::InvalidArgument(format!(
                "quadrature needs >= 2 points per panel and >= 1 panel per cell \
                 (got {points_per_panel}, {panels_per_cell})"
            )));
        }
        Ok(Self {
            points_per_panel,
            panels_per_cell,
        })
    }

    pub fn points_per_panel(&self) -> usize {
        self.points_per_panel
    }

    pub fn panels_per_cell(&self) -> usize {
        self.panels_per_cell
    }

    /// Same rule with twice as many panels.
    pub fn refined(&self) -> Self {
        Self {
            points_per_panel: self.points_per_panel,
            panels_per_cell: 2 * self.panels_per_cell,
        }
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Roots of `P_n` by Newton iteration from Chebyshev-like guesses,
    /// computed in `f64` and then converted.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one point");
        let mut nodes = vec![0.0f64; n];
        let mut weights = vec![0.0f64; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self {
            nodes: nodes.into_iter().map(T::lit).collect(),
            weights: weights.into_iter().map(T::lit).collect(),
        }
    }
}

/// `(P_n(x), P_n'(x))` via the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A [`QuadratureSpec`] with its rule precomputed.
#[derive(Debug, Clone)]
pub struct CompositeRule<T> {
    spec: QuadratureSpec,
    rule: GaussLegendre<T>,
}

impl<T: Real> CompositeRule<T> {
    pub fn new(spec: QuadratureSpec) -> Self {
        Self {
            rule: GaussLegendre::new(spec.points_per_panel),
            spec,
        }
    }

    pub fn spec(&self) -> QuadratureSpec {
        self.spec
    }

    /// `int_a^b g` with `panels_per_cell` equal panels.
    pub fn integrate<F: FnMut(T) -> T>(&self, a: T, b: T, mut g: F) -> T {
        let m = self.spec.panels_per_cell;
        let width = (b - a) / T::from_count(m);
        let half = width / T::lit(2.0);
        let mut total = T::zero();
        for j in 0..m {
            let lo = a + T::from_count(j) * width;
            let mid = lo + half;
            let mut panel = T::zero();
            for (x, w) in self.rule.nodes.iter().zip(&self.rule.weights) {
                panel += *w * g(mid + half * *x);
            }
            total += panel * half;
        }
        total
    }

    /// Sum over cells of `int_cell g(cell, x) dx`, in cell order.
    pub fn integrate_mesh<F: FnMut(usize, T) -> T>(&self, mesh: &Mesh1D<T>, mut g: F) -> T {
        let nodes = mesh.nodes();
        let mut total = T::zero();
        for c in 0..mesh.num_cells() {
            total += self.integrate(nodes[c], nodes[c + 1], |x| g(c, x));
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(1, 4).is_err());
        assert!(QuadratureSpec::new(4, 0).is_err());
        let s = QuadratureSpec::default();
        assert_eq!((s.points_per_panel(), s.panels_per_cell()), (8, 16));
        assert_eq!(s.refined().panels_per_cell(), 32);
    }

    #[test]
    fn known_rules() {
        let r = GaussLegendre::<f64>::new(2);
        let x = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + x).abs() < 1e-15 && (r.nodes[1] - x).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
        let r = GaussLegendre::<f64>::new(3);
        assert_eq!(r.nodes[1], 0.0);
        assert!((r.weights[1] - 8.0 / 9.0).abs() < 1e-15);
        assert!((r.nodes[2] - 0.6f64.sqrt()).abs() < 1e-15);
        for n in 1..30 {
            let r = GaussLegendre::<f64>::new(n);
            let s: f64 = r.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n}");
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn exact_for_degree_2g_minus_1() {
        for g in 2..=10 {
            let rule = CompositeRule::<f64>::new(QuadratureSpec::new(g, 3).unwrap());
            for deg in 0..=(2 * g - 1) as i32 {
                let got = rule.integrate(0.2, 0.7, |x| x.powi(deg));
                let exact = (0.7f64.powi(deg + 1) - 0.2f64.powi(deg + 1)) / (deg + 1) as f64;
                assert!((got - exact).abs() <= 1e-13 * exact.abs(), "g={g} deg={deg}");
            }
        }
    }

    #[test]
    fn mesh_integration() {
        let mesh = Mesh1D::<f64>::perturbed(7, 0.3, 4).unwrap();
        let rule = CompositeRule::<f64>::new(QuadratureSpec::default());
        let v = rule.integrate_mesh(&mesh, |_, x| (std::f64::consts::PI * x).sin());
        assert!((v - 2.0 / std::f64::consts::PI).abs() < 1e-14);
    }
}
