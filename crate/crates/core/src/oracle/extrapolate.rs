//! Polynomial extrapolation of a regulator sequence to zero.

use alloc::vec::Vec;

/// Value at `ε = 0` of the interpolating polynomial through `(eps[i], values[i])`,
/// by Neville's scheme.
pub(crate) fn to_zero(eps: &[f64], values: &[f64]) -> f64 {
    debug_assert_eq!(eps.len(), values.len());
    let mut p: Vec<f64> = values.to_vec();
    let n = p.len();
    for k in 1..n {
        for i in (k..n).rev() {
            p[i] = (eps[i - k] * p[i] - eps[i] * p[i - 1]) / (eps[i - k] - eps[i]);
        }
    }
    p[n - 1]
}

/// Full-order extrapolant and its distance from the extrapolant that drops the
/// largest regulator.
pub(crate) fn with_spread(eps: &[f64], values: &[f64]) -> (f64, f64) {
    let full = to_zero(eps, values);
    if eps.len() < 2 {
        return (full, f64::INFINITY);
    }
    let reduced = to_zero(&eps[1..], &values[1..]);
    (full, (full - reduced).abs())
}
