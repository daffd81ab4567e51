//! Certified evaluation of `w(x) = sum_{n>=0} a^n phi(b^n x)`.
//!
//! The series is cut at an a-priori length from its geometric tail bound, so
//! every value returned by [`weierstrass_eval`] is within `tol` of the
//! infinite sum (up to floating-point rounding of the partial sum).

use crate::params::WeierstrassParams;
use crate::phi::PhiFunction;

/// Smallest `N` with `value_sup * a^N / (1 - a) <= tol`.
///
/// Panics if `tol` is not positive.
pub fn truncation_length(params: &WeierstrassParams, phi: &PhiFunction, tol: f64) -> usize {
    assert!(tol > 0.0, "tolerance must be positive, got {tol}");
    let a = params.a();
    let mut tail = phi.value_sup() / (1.0 - a);
    let mut n = 0;
    while tail > tol {
        tail *= a;
        n += 1;
    }
    n
}

/// Fractional part in `[0, 1)`.
#[inline]
pub(crate) fn frac(x: f64) -> f64 {
    x - libm::floor(x)
}

/// Partial sum of the series with [`truncation_length`] terms.
///
/// The arguments `b^n x` are never formed directly: the reduced sequence
/// `x_{n+1} = frac(b x_n)` is used instead. For `x` with a short binary
/// expansion every step is exact.
pub fn weierstrass_eval(params: &WeierstrassParams, phi: &PhiFunction, x: f64, tol: f64) -> f64 {
    let terms = truncation_length(params, phi, tol);
    partial_sum(params, phi, x, terms)
}

/// The first `terms` terms of the series at `x`.
pub fn partial_sum(params: &WeierstrassParams, phi: &PhiFunction, x: f64, terms: usize) -> f64 {
    let a = params.a();
    let b = params.bf();
    let mut t = frac(x);
    let mut scale = 1.0;
    let mut sum = 0.0;
    for _ in 0..terms {
        sum += scale * phi.value(t);
        scale *= a;
        t = frac(b * t);
    }
    sum
}
