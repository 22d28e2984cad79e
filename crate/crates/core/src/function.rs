//! `C^2([0,1])` test functions with analytic derivatives and bounds on `u''`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Pure, thread-safe scalar map.
pub type ScalarFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Whether the second-derivative bounds are analytic or sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    Estimated,
}

/// `m2 <= u''(x) <= max_d2` on `[0,1]` and `sup = ||u''||_inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondDerivativeBounds<T> {
    pub min: T,
    pub max: T,
    pub sup: T,
}

impl<T: Real> SecondDerivativeBounds<T> {
    /// Tight bounds: `sup = max(|min|, |max|)`.
    pub fn tight(min: T, max: T) -> Result<Self> {
        Self::new(min, max, min.abs().max(max.abs()))
    }

    pub fn new(min: T, max: T, sup: T) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && sup.is_finite()) {
            return Err(Error::NumericDomain("second-derivative bounds".into()));
        }
        if min > max {
            return Err(Error::InvalidArgument(format!(
                "lower bound {min} exceeds upper bound {max}"
            )));
        }
        if sup < min.abs().max(max.abs()) {
            return Err(Error::InvalidArgument(format!(
                "sup {sup} is below max(|{min}|, |{max}|)"
            )));
        }
        Ok(Self { min, max, sup })
    }

    /// `M2 - m2`.
    pub fn oscillation(&self) -> T {
        self.max - self.min
    }
}

/// A function `u` together with `u'`, `u''` and bounds on `u''`.
#[derive(Clone)]
pub struct SmoothFunction<T> {
    name: String,
    value: ScalarFn<T>,
    d1: ScalarFn<T>,
    d2: ScalarFn<T>,
    bounds: SecondDerivativeBounds<T>,
    provenance: Provenance,
}

impl<T: Real> fmt::Debug for SmoothFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmoothFunction")
            .field("name", &self.name)
            .field("bounds", &self.bounds)
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl<T: Real> SmoothFunction<T> {
    /// Builds a function whose bounds the caller guarantees to be exact.
    pub fn new<V, D1, D2>(name: impl Into<String>, value: V, d1: D1, d2: D2, bounds: SecondDerivativeBounds<T>) -> Self
    where
        V: Fn(T) -> T + Send + Sync + 'static,
        D1: Fn(T) -> T + Send + Sync + 'static,
        D2: Fn(T) -> T + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            value: Arc::new(value),
            d1: Arc::new(d1),
            d2: Arc::new(d2),
            bounds,
            provenance: Provenance::Exact,
        }
    }

    /// Builds a function whose bounds are sampled from `d2` with
    /// [`estimate_bounds`]. Such functions are rejected by bound verification.
    pub fn with_estimated_bounds<V, D1, D2>(
        name: impl Into<String>,
        value: V,
        d1: D1,
        d2: D2,
        samples: usize,
    ) -> Result<Self>
    where
        V: Fn(T) -> T + Send + Sync + 'static,
        D1: Fn(T) -> T + Send + Sync + 'static,
        D2: Fn(T) -> T + Send + Sync + 'static,
    {
        let bounds = estimate_bounds(&d2, samples)?;
        let mut f = Self::new(name, value, d1, d2, bounds);
        f.provenance = Provenance::Estimated;
        Ok(f)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self, x: T) -> T {
        (self.value)(x)
    }

    pub fn d1(&self, x: T) -> T {
        (self.d1)(x)
    }

    pub fn d2(&self, x: T) -> T {
        (self.d2)(x)
    }

    pub fn bounds(&self) -> SecondDerivativeBounds<T> {
        self.bounds
    }

    /// `m2`.
    pub fn min_d2(&self) -> T {
        self.bounds.min
    }

    /// `M2`.
    pub fn max_d2(&self) -> T {
        self.bounds.max
    }

    /// `||u''||_inf`.
    pub fn sup_d2(&self) -> T {
        self.bounds.sup
    }

    pub fn oscillation(&self) -> T {
        self.bounds.oscillation()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn has_exact_bounds(&self) -> bool {
        self.provenance == Provenance::Exact
    }

    /// `c * u`, with bounds rescaled.
    pub fn scaled(&self, c: T) -> Self {
        let (v, d1, d2) = (self.value.clone(), self.d1.clone(), self.d2.clone());
        let (lo, hi) = if c >= T::zero() {
            (self.bounds.min * c, self.bounds.max * c)
        } else {
            (self.bounds.max * c, self.bounds.min * c)
        };
        Self {
            name: format!("{}*{}", c, self.name),
            value: Arc::new(move |x| c * v(x)),
            d1: Arc::new(move |x| c * d1(x)),
            d2: Arc::new(move |x| c * d2(x)),
            bounds: SecondDerivativeBounds {
                min: lo,
                max: hi,
                sup: self.bounds.sup * c.abs(),
            },
            provenance: self.provenance,
        }
    }
}

/// Built-in test functions on `[0,1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Preset {
    /// `1 + 2x`
    Affine,
    /// `x^2`
    Quadratic,
    /// `x^3`
    Cubic,
    /// `sin(pi x)`
    SinPi,
    /// `e^x`
    ExpX,
    /// `exp(-25 (x - 1/2)^2)`
    GaussBump,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::Affine,
        Preset::Quadratic,
        Preset::Cubic,
        Preset::SinPi,
        Preset::ExpX,
        Preset::GaussBump,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Affine => "affine",
            Preset::Quadratic => "quadratic",
            Preset::Cubic => "cubic",
            Preset::SinPi => "sin_pi",
            Preset::ExpX => "expx",
            Preset::GaussBump => "gauss_bump",
        }
    }

    pub fn valid_names() -> String {
        Self::ALL.map(Preset::name).join(", ")
    }

    pub fn build<T: Real>(self) -> SmoothFunction<T> {
        let bounds = |lo: T, hi: T| SecondDerivativeBounds::tight(lo, hi).expect("preset bounds");
        let name = self.name();
        match self {
            Preset::Affine => {
                let two = T::lit(2.0);
                SmoothFunction::new(
                    name,
                    move |x| T::one() + two * x,
                    move |_| two,
                    |_| T::zero(),
                    bounds(T::zero(), T::zero()),
                )
            }
            Preset::Quadratic => {
                let two = T::lit(2.0);
                SmoothFunction::new(name, |x: T| x * x, move |x| two * x, move |_| two, bounds(two, two))
            }
            Preset::Cubic => {
                let (three, six) = (T::lit(3.0), T::lit(6.0));
                SmoothFunction::new(
                    name,
                    |x: T| x * x * x,
                    move |x| three * x * x,
                    move |x| six * x,
                    // u'' = 6x is increasing: extrema at the endpoints
                    bounds(T::zero(), six),
                )
            }
            Preset::SinPi => {
                let pi = T::PI();
                SmoothFunction::new(
                    name,
                    move |x| (pi * x).sin(),
                    move |x| pi * (pi * x).cos(),
                    move |x| -pi * pi * (pi * x).sin(),
                    // extremum -pi^2 at x = 1/2, zero at the endpoints
                    bounds(-pi * pi, T::zero()),
                )
            }
            Preset::ExpX => SmoothFunction::new(
                name,
                |x: T| x.exp(),
                |x: T| x.exp(),
                |x: T| x.exp(),
                bounds(T::one(), T::E()),
            ),
            Preset::GaussBump => {
                let a = T::lit(25.0);
                let half = T::lit(0.5);
                let two = T::lit(2.0);
                let four = T::lit(4.0);
                // u'' = (4a^2 t^2 - 2a) e^{-a t^2}, t = x - 1/2: minimum -2a at t = 0,
                // maximum 4a e^{-3/2} at t^2 = 3/(2a) (inside [0,1] for a = 25)
                SmoothFunction::new(
                    name,
                    move |x: T| {
                        let t = x - half;
                        (-a * t * t).exp()
                    },
                    move |x: T| {
                        let t = x - half;
                        -two * a * t * (-a * t * t).exp()
                    },
                    move |x: T| {
                        let t = x - half;
                        (four * a * a * t * t - two * a) * (-a * t * t).exp()
                    },
                    bounds(-two * a, four * a * T::lit(-1.5).exp()),
                )
            }
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::NotFound {
                kind: "function preset",
                name: s.to_string(),
                valid: Self::valid_names(),
            })
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Looks up a preset by name.
pub fn preset<T: Real>(name: &str) -> Result<SmoothFunction<T>> {
    Ok(name.parse::<Preset>()?.build())
}

/// Min/max of `d2` over `samples` equally spaced points including both
/// endpoints. The result is only an estimate of the true bounds.
pub fn estimate_bounds<T: Real, F: Fn(T) -> T>(d2: F, samples: usize) -> Result<SecondDerivativeBounds<T>> {
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    let last = T::from_count(samples - 1);
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for i in 0..samples {
        let x = if i == samples - 1 {
            T::one()
        } else {
            T::from_count(i) / last
        };
        let v = d2(x);
        if !v.is_finite() {
            return Err(Error::NumericDomain(format!("u''({x}) = {v}")));
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    SecondDerivativeBounds::tight(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn preset_bounds() {
        let q = preset::<f64>("quadratic").unwrap();
        assert_eq!((q.min_d2(), q.max_d2(), q.sup_d2()), (2.0, 2.0, 2.0));
        let c = preset::<f64>("cubic").unwrap();
        assert_eq!((c.min_d2(), c.max_d2(), c.sup_d2()), (0.0, 6.0, 6.0));
        let s = preset::<f64>("sin_pi").unwrap();
        assert_eq!(s.min_d2(), -PI * PI);
        assert_eq!(s.max_d2(), 0.0);
        assert_eq!(s.sup_d2(), PI * PI);
        let g = preset::<f64>("gauss_bump").unwrap();
        assert_eq!(g.min_d2(), -50.0);
        assert!((g.max_d2() - 100.0 * (-1.5f64).exp()).abs() < 1e-12);
        assert_eq!(g.sup_d2(), 50.0);
    }

    #[test]
    fn unknown_preset_lists_valid_names() {
        let err = preset::<f64>("quartic").unwrap_err();
        match err {
            Error::NotFound { name, valid, .. } => {
                assert_eq!(name, "quartic");
                assert!(valid.contains("sin_pi") && valid.contains("gauss_bump"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn presets_respect_bounds_on_dense_grid() {
        for p in Preset::ALL {
            let f = p.build::<f64>();
            assert!(f.min_d2() <= f.max_d2());
            assert_eq!(f.sup_d2(), f.min_d2().abs().max(f.max_d2().abs()));
            for i in 0..=1000 {
                let x = i as f64 / 1000.0;
                let v = f.d2(x);
                assert!(f.min_d2() <= v + 1e-12 && v <= f.max_d2() + 1e-12, "{p} at {x}");
                assert!(v.abs() <= f.sup_d2() + 1e-12);
            }
        }
    }

    #[test]
    fn preset_derivatives_match_finite_differences() {
        let delta = 1e-5;
        for p in Preset::ALL {
            let f = p.build::<f64>();
            for i in 0..=100 {
                let x = i as f64 / 100.0;
                let fd2 = (f.d1(x + delta) - f.d1(x - delta)) / (2.0 * delta);
                assert!((fd2 - f.d2(x)).abs() < 1e-5, "{p} u'' at {x}");
                let fd1 = (f.value(x + delta) - f.value(x - delta)) / (2.0 * delta);
                assert!((fd1 - f.d1(x)).abs() < 1e-5, "{p} u' at {x}");
            }
        }
    }

    #[test]
    fn estimated_bounds() {
        let b = estimate_bounds(|_: f64| 2.0, 11).unwrap();
        assert_eq!((b.min, b.max, b.sup), (2.0, 2.0, 2.0));
        let b = estimate_bounds(|x: f64| 6.0 * x, 101).unwrap();
        assert_eq!((b.min, b.max, b.sup), (0.0, 6.0, 6.0));
        let b = estimate_bounds(|x: f64| -PI * PI * (PI * x).sin(), 1001).unwrap();
        assert!((b.min + PI * PI).abs() < 1e-4);
        assert!(matches!(
            estimate_bounds(|x: f64| 1.0 / (x - 0.5), 3),
            Err(Error::NumericDomain(_))
        ));
        assert!(estimate_bounds(|x: f64| x, 1).is_err());
    }

    #[test]
    fn estimated_functions_are_flagged() {
        let f = SmoothFunction::<f64>::with_estimated_bounds(
            "x4",
            |x| x.powi(4),
            |x| 4.0 * x.powi(3),
            |x| 12.0 * x * x,
            101,
        )
        .unwrap();
        assert_eq!(f.provenance(), Provenance::Estimated);
        assert_eq!(f.max_d2(), 12.0);
        assert!(Preset::Cubic.build::<f64>().has_exact_bounds());
    }

    #[test]
    fn bounds_validation() {
        assert!(SecondDerivativeBounds::new(1.0, 0.0, 1.0).is_err());
        assert!(SecondDerivativeBounds::new(-2.0, 1.0, 1.0).is_err());
        assert!(SecondDerivativeBounds::new(0.0, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn scaling_flips_bounds() {
        let s = Preset::Cubic.build::<f64>().scaled(-2.0);
        assert_eq!((s.min_d2(), s.max_d2(), s.sup_d2()), (-12.0, 0.0, 12.0));
        assert_eq!(s.value(0.5), -0.25);
    }

    #[test]
    fn single_precision_presets() {
        let f = Preset::SinPi.build::<f32>();
        assert!((f.value(0.5) - 1.0).abs() < 1e-6);
    }
}
