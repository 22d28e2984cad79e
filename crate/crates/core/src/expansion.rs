//! First-order expansions of `u(x_i + h_i)` around a cell.
//!
//! Both steps write `u(x_{i+1}) = u(x_i) + increment + h_i * remainder`:
//!
//! * the classical Taylor step uses `increment = h_i u'(x_i)` and
//!   `|remainder| <= (h_i / 2) ||u''||_inf`;
//! * the Taylor-like step replaces `u'(x_i)` by the `n`-panel composite
//!   trapezoid average of `u'` over the cell, with
//!   `|remainder| <= h_i (M2 - m2) / (8 n)`.
//!
//! The remainder is always recomputed from function values, never inferred
//! from the bound.

use crate::error::{Error, Result};
use crate::function::SmoothFunction;
use crate::scalar::{CompensatedSum, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionResult<T> {
    /// `h_i` times the derivative combination.
    pub increment: T,
    /// `(u(x_{i+1}) - u(x_i))/h_i - increment/h_i`.
    pub remainder: T,
    /// Guaranteed bound on `|remainder|`.
    pub bound: T,
}

impl<T: Real> ExpansionResult<T> {
    pub fn contained(&self, slack: T) -> bool {
        self.remainder.abs() <= self.bound + slack
    }
}

fn check_interval<T: Real>(x_i: T, h_i: T) -> Result<()> {
    if !(h_i > T::zero()) || !x_i.is_finite() || !h_i.is_finite() {
        return Err(Error::Domain(format!("invalid cell x_i = {x_i}, h_i = {h_i}")));
    }
    // cells taken from a mesh may overshoot 1 by an ulp after x_i + h_i
    let tol = T::lit(4.0) * T::epsilon();
    if x_i < T::zero() || x_i + h_i > T::one() + tol {
        return Err(Error::Domain(format!(
            "[{x_i}, {x_i} + {h_i}] is not contained in [0, 1]"
        )));
    }
    Ok(())
}

/// Classical first-order Taylor step on `[x_i, x_i + h_i]`.
pub fn taylor_step<T: Real>(f: &SmoothFunction<T>, x_i: T, h_i: T) -> Result<ExpansionResult<T>> {
    check_interval(x_i, h_i)?;
    let slope = f.d1(x_i);
    let secant = (f.value(x_i + h_i) - f.value(x_i)) / h_i;
    Ok(ExpansionResult {
        increment: h_i * slope,
        remainder: secant - slope,
        bound: h_i / T::lit(2.0) * f.sup_d2(),
    })
}

/// Weighted derivative average `(u'(x_0) + u'(x_n)) / (2n) + (1/n) sum_{k=1}^{n-1} u'(x'_k)`.
fn trapezoid_average<T: Real>(f: &SmoothFunction<T>, x_i: T, h_i: T, n: usize) -> T {
    let nt = T::from_count(n);
    let step = h_i / nt;
    let ends = (f.d1(x_i) + f.d1(x_i + h_i)) / (T::lit(2.0) * nt);
    let mut interior = CompensatedSum::new();
    for k in 1..n {
        interior.add(f.d1(x_i + T::from_count(k) * step));
    }
    ends + interior.value() / nt
}

/// Taylor-like step with `n` equal sub-panels on `[x_i, x_i + h_i]`.
pub fn taylor_like_step<T: Real>(f: &SmoothFunction<T>, x_i: T, h_i: T, n: usize) -> Result<ExpansionResult<T>> {
    check_interval(x_i, h_i)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let average = trapezoid_average(f, x_i, h_i, n);
    let secant = (f.value(x_i + h_i) - f.value(x_i)) / h_i;
    Ok(ExpansionResult {
        increment: h_i * average,
        remainder: secant - average,
        bound: h_i / (T::lit(8.0) * T::from_count(n)) * f.oscillation(),
    })
}
