//! Exact power sums `S_p(n) = sum_{k=1}^n k^p`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `S_p(n)` by direct summation.
pub fn power_sum(p: u32, n: u64) -> BigUint {
    let mut acc = BigUint::zero();
    for k in 1..=n {
        acc += BigUint::from(k).pow(p);
    }
    acc
}

/// `S_0(n), ..., S_p(n)` from Pascal's recurrence
///
/// `(m+1) S_m(n) = (n+1)^{m+1} - 1 - sum_{j<m} C(m+1, j) S_j(n)`,
///
/// starting from `S_0(n) = n`. Costs `O(p^2)` big-integer operations,
/// independent of `n`.
pub fn power_sums_pascal(p: u32, n: u64) -> Vec<BigUint> {
    let n1 = BigUint::from(n) + 1u32;
    let mut sums: Vec<BigUint> = Vec::with_capacity(p as usize + 1);
    sums.push(BigUint::from(n));
    // row m+1 of Pascal's triangle, updated in place
    let mut binom: Vec<BigUint> = vec![BigUint::one(), BigUint::one()];
    for m in 1..=p as usize {
        let mut next = vec![BigUint::one(); m + 2];
        for j in 1..=m {
            next[j] = &binom[j - 1] + &binom[j];
        }
        binom = next;
        let mut rhs = n1.pow(m as u32 + 1) - 1u32;
        for (j, s) in sums.iter().enumerate() {
            rhs -= &binom[j] * s;
        }
        debug_assert!((&rhs % (m as u32 + 1)).is_zero());
        sums.push(rhs / (m as u32 + 1));
    }
    sums
}

/// `S_p(n)` via [`power_sums_pascal`].
pub fn power_sum_pascal(p: u32, n: u64) -> BigUint {
    power_sums_pascal(p, n).pop().expect("at least S_0")
}

/// `S*_p(n) = sum_{k=1}^{n-1} k^{p+1}`, with `S*_p(1) = 0` (and `S*_p(0) = 0`).
pub fn star_sum(p: u32, n: u64) -> BigUint {
    if n <= 1 {
        return BigUint::zero();
    }
    power_sum_pascal(p + 1, n - 1)
}
