//! Error-estimate constants and the `W^{1,p}` interpolation bounds built on them.
//!
//! Every bound has the shape
//!
//! ```text
//! ||u - u_I||_{1,p}^p <= C (h^p + h^{2p}/p) ||u''||_inf^p + D
//! ```
//!
//! where the constant `C` depends on the expansion used to control the
//! secant slope of `u_I`:
//!
//! | method                   | `C`                                                    |
//! |--------------------------|--------------------------------------------------------|
//! | Taylor                   | `2^{p-1}/(p+1) + 1/2`                                  |
//! | mean value               | `1/(p+1)`                                              |
//! | Taylor-like, `n` panels  | `(n+2)^{p-1}/(p+1) * (1/(2^{p-1} n^p) + 2 S*_p(n)/n^{2p+1})` |
//! | Taylor-like, `n -> inf`  | `2/((p+1)(p+2))`                                       |
//!
//! and `D = (1/(3n)) (3/8)^p (h^p + h^{2p}/p) (M2 - m2)^p` for the finite
//! Taylor-like bound, zero otherwise. Constants are exact rationals.

pub mod power_sums;

use std::fmt;
use std::num::NonZeroU64;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

pub use power_sums::{power_sum, power_sum_pascal, power_sums_pascal, star_sum};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Integer Sobolev exponent `p >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormOrder(u32);

impl NormOrder {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidArgument(format!("p must be an integer >= 2, got {p}")));
        }
        Ok(Self(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Conjugate exponent `q = p/(p-1)`.
    pub fn conjugate(self) -> BigRational {
        ratio(self.0 as i64, self.0 as i64 - 1)
    }

    pub fn as_real<T: Real>(self) -> T {
        T::from_count(self.0 as usize)
    }
}

impl TryFrom<u32> for NormOrder {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Self::new(p)
    }
}

impl fmt::Display for NormOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which expansion underlies an interpolation bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundMethod {
    Taylor,
    MeanValue,
    TaylorLikeFinite(NonZeroU64),
    TaylorLikeAsymptotic,
}

impl BoundMethod {
    pub fn taylor_like(n: u64) -> Result<Self> {
        NonZeroU64::new(n)
            .map(Self::TaylorLikeFinite)
            .ok_or_else(|| Error::InvalidArgument("Taylor-like bound needs n >= 1".into()))
    }

    /// CSV/CLI tag without the panel count.
    pub fn tag(self) -> &'static str {
        match self {
            BoundMethod::Taylor => "taylor",
            BoundMethod::MeanValue => "mean_value",
            BoundMethod::TaylorLikeFinite(_) => "taylor_like",
            BoundMethod::TaylorLikeAsymptotic => "taylor_like_asymptotic",
        }
    }

    pub fn panels(self) -> Option<u64> {
        match self {
            BoundMethod::TaylorLikeFinite(n) => Some(n.get()),
            _ => None,
        }
    }
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundMethod::TaylorLikeFinite(n) => write!(f, "taylor_like({n})"),
            other => f.write_str(other.tag()),
        }
    }
}

impl FromStr for BoundMethod {
    type Err = Error;

    /// Accepts `taylor`, `mean_value`, `taylor_like_asymptotic` (or `asymptotic`)
    /// and `taylor_like(n)` / `taylor_like:n`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "taylor" => return Ok(Self::Taylor),
            "mean_value" => return Ok(Self::MeanValue),
            "taylor_like_asymptotic" | "asymptotic" => return Ok(Self::TaylorLikeAsymptotic),
            _ => {}
        }
        let n = s
            .strip_prefix("taylor_like(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("taylor_like:"));
        match n.map(str::parse::<u64>) {
            Some(Ok(n)) => Self::taylor_like(n),
            _ => Err(Error::NotFound {
                kind: "bound method",
                name: s.to_string(),
                valid: "taylor, mean_value, taylor_like(n), taylor_like_asymptotic".into(),
            }),
        }
    }
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn uint(v: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn pow_int(base: u64, exp: u32) -> BigRational {
    uint(BigUint::from(base).pow(exp))
}

/// Exact constant `C` of the bound for `method` at exponent `p`.
pub fn constant(method: BoundMethod, p: NormOrder) -> BigRational {
    let p = p.get();
    let p1 = ratio(p as i64 + 1, 1);
    match method {
        BoundMethod::Taylor => pow_int(2, p - 1) / &p1 + ratio(1, 2),
        BoundMethod::MeanValue => p1.recip(),
        BoundMethod::TaylorLikeAsymptotic => ratio(2, 1) / (p1 * ratio(p as i64 + 2, 1)),
        BoundMethod::TaylorLikeFinite(n) => {
            let n = n.get();
            let lead = pow_int(n + 2, p - 1) / p1;
            let ends = (pow_int(2, p - 1) * pow_int(n, p)).recip();
            let interior = ratio(2, 1) * uint(star_sum(p, n)) / pow_int(n, 2 * p + 1);
            lead * (ends + interior)
        }
    }
}

/// Right-hand side of an interpolation estimate, optionally paired with a
/// measured error.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    pub method: BoundMethod,
    pub p: NormOrder,
    pub h: T,
    pub constant: BigRational,
    /// Bound on `||u - u_I||_{1,p}`.
    pub bound: T,
    /// The `(M2 - m2)^p` contribution `D` (zero unless Taylor-like finite).
    pub oscillation_term: T,
    pub measured_error: Option<T>,
}

impl<T: Real> BoundReport<T> {
    pub fn constant_value(&self) -> T {
        T::from_rational(&self.constant)
    }

    /// `measured <= bound` with a relative slack for quadrature noise.
    /// `None` when nothing was measured.
    pub fn ok_with_slack(&self, rel: T, abs: T) -> Option<bool> {
        self.measured_error.map(|m| m <= self.bound * (T::one() + rel) + abs)
    }

    /// [`ok_with_slack`](Self::ok_with_slack) with `1e-10` relative and
    /// `1e-13` absolute slack.
    pub fn ok(&self) -> Option<bool> {
        self.ok_with_slack(T::lit(1e-10), T::lit(1e-13))
    }
}

/// Evaluates the bound on `||u - u_I||_{1,p}` for mesh size `h`.
///
/// `osc_d2 = M2 - m2` only enters the finite Taylor-like bound.
pub fn interpolation_bound<T: Real>(
    method: BoundMethod,
    p: NormOrder,
    h: T,
    sup_d2: T,
    osc_d2: T,
) -> Result<BoundReport<T>> {
    if !(sup_d2 >= T::zero()) || !(osc_d2 >= T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "sup_d2 = {sup_d2} and osc_d2 = {osc_d2} must be nonnegative"
        )));
    }
    if !(h > T::zero() && h <= T::one()) {
        return Err(Error::InvalidArgument(format!("mesh size {h} must lie in (0, 1]")));
    }
    let pi = p.get() as i32;
    let pr: T = p.as_real();
    let scale = h.powi(pi) + h.powi(2 * pi) / pr;
    let c = constant(method, p);
    let main = T::from_rational(&c) * scale * sup_d2.powi(pi);
    let osc = match method {
        BoundMethod::TaylorLikeFinite(n) => {
            let n = T::lit(n.get() as f64);
            T::lit(3.0 / 8.0).powi(pi) * scale * osc_d2.powi(pi) / (T::lit(3.0) * n)
        }
        _ => T::zero(),
    };
    Ok(BoundReport {
        method,
        p,
        h,
        constant: c,
        bound: (main + osc).powf(pr.recip()),
        oscillation_term: osc,
        measured_error: None,
    })
}

/// `C_n / C_inf - 1` for the finite versus asymptotic Taylor-like constants.
pub fn asymptotic_gap(p: NormOrder, n: NonZeroU64) -> BigRational {
    constant(BoundMethod::TaylorLikeFinite(n), p) / constant(BoundMethod::TaylorLikeAsymptotic, p) - BigRational::one()
}

/// Per-cell bound `(1/(p+1)) [k^{p+1} + (n-k)^{p+1}] (h_i/n)^{p+1} ||u''||^p`
/// on `int_cell |u'(x) - u'(x'_k)|^p dx`.
pub fn lemma21_cell_bound<T: Real>(p: NormOrder, k: u64, n: u64, h_i: T, sup_d2: T) -> Result<T> {
    if n == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= k <= n, n >= 1 (k = {k}, n = {n})"
        )));
    }
    let e = p.get() + 1;
    let weights = BigUint::from(k).pow(e) + BigUint::from(n - k).pow(e);
    let coef = uint(weights) / (ratio(e as i64, 1) * pow_int(n, e));
    Ok(T::from_rational(&coef) * h_i.powi(e as i32) * sup_d2.powi(p.get() as i32))
}

/// How much coarser a mesh may be under `coarse` than under `fine` for the
/// same bound.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshSavings<T> {
    /// `C_fine / C_coarse`, exact.
    pub constant_ratio: BigRational,
    /// `(C_fine / C_coarse)^{1/p}`.
    pub h_ratio: T,
    /// `h_ratio^dim`.
    pub node_factor: T,
    pub dim: u32,
}

impl<T: Real> MeshSavings<T> {
    pub fn note(&self) -> &'static str {
        "assumes (1 + h^p/p)^(1/p) ~ 1, so only the constants matter"
    }
}

/// Theoretical mesh-size ratio between two bounds at equal accuracy.
///
/// `fine` is normally the method with the larger constant, so that
/// `h_ratio >= 1` is the factor by which `coarse` allows larger cells.
pub fn mesh_savings<T: Real>(p: NormOrder, coarse: BoundMethod, fine: BoundMethod, dim: u32) -> Result<MeshSavings<T>> {
    if !(1..=3).contains(&dim) {
        return Err(Error::InvalidArgument(format!(
            "dimension must be 1, 2 or 3, got {dim}"
        )));
    }
    let constant_ratio = constant(fine, p) / constant(coarse, p);
    let h_ratio = T::from_rational(&constant_ratio).powf(p.as_real::<T>().recip());
    Ok(MeshSavings {
        constant_ratio,
        h_ratio,
        node_factor: h_ratio.powi(dim as i32),
        dim,
    })
}
