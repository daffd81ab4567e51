//! Closed-form quantities: the hypothesis checks, the eigenvalues of the
//! per-pair distortion matrix, the uniform contraction factor `h`, the two
//! dimension bounds and a general Moran-equation solver.
//!
//! For two points with `dx = x1 - x2`, `dy = y1 - y2` the squared image
//! distance under any `S_i` is `v^T A v` with `v = (dx, dy)` and
//!
//! ```text
//!     A = | (1 + c^2)/b^2   a c / b |
//!         | a c / b         a^2     |
//! ```
//!
//! where `c` is the mean-value slope of `phi` between the two image
//! abscissas. `sqrt(lambda_max(A))` is therefore a Lipschitz bound, and it is
//! largest at `c = 1` once `|phi'| <= 1`.

use crate::error::{Error, Result};
use crate::params::WeierstrassParams;
use crate::phi::PhiFunction;

/// Slack below zero tolerated in the eigenvalue discriminant before it is
/// reported as an inconsistency.
const DISCRIMINANT_SLACK: f64 = 1e-15;

/// Initial upper end of the Moran bisection bracket.
const MORAN_BRACKET: f64 = 64.0;

/// Bisection stops once the bracket is this narrow.
const MORAN_WIDTH: f64 = 1e-13;

/// The three inequalities behind the contraction argument. All comparisons
/// are strict and carry no epsilon: boundary cases report `false`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypothesisCheck {
    /// `a^2 + a/b < 1`
    pub cond_a2: bool,
    /// `2/b^2 + a/b < 1`
    pub cond_b2: bool,
    /// `sup |phi'| <= 1`
    pub cond_phi: bool,
    pub applicable: bool,
}

pub fn check_hypotheses(params: &WeierstrassParams, phi: &PhiFunction) -> HypothesisCheck {
    let a = params.a();
    let b = params.bf();
    let cond_a2 = a * a + a / b < 1.0;
    let cond_b2 = 2.0 / (b * b) + a / b < 1.0;
    let cond_phi = phi.derivative_sup() <= 1.0;
    HypothesisCheck { cond_a2, cond_b2, cond_phi, applicable: cond_a2 && cond_b2 && cond_phi }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub c: f64,
}

/// Trace and determinant of the distortion matrix for slope `c`.
fn trace_det(params: &WeierstrassParams, c: f64) -> (f64, f64) {
    let a = params.a();
    let b = params.bf();
    let trace = (1.0 + c * c) / (b * b) + a * a;
    let det = a * a / (b * b);
    (trace, det)
}

/// Both eigenvalues of the distortion matrix at slope `c in [0, 1]`.
///
/// `lambda_plus` follows the quadratic formula with the discriminant taken as
/// `trace^2 - 4 det`; `lambda_minus` is recovered as `det / lambda_plus`,
/// which is the same root without the cancellation of `trace - sqrt(disc)`.
pub fn eigenvalues(params: &WeierstrassParams, c: f64) -> Result<EigenPair> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::InvalidMvtConstant { c });
    }
    let (trace, det) = trace_det(params, c);
    let disc = trace * trace - 4.0 * det;
    if disc < -DISCRIMINANT_SLACK {
        return Err(Error::NegativeDiscriminant { value: disc });
    }
    let lambda_plus = 0.5 * (trace + libm::sqrt(disc.max(0.0)));
    Ok(EigenPair { lambda_plus, lambda_minus: det / lambda_plus, c })
}

/// `trace^2 - 4 det` of the distortion matrix; positive for valid params.
pub fn discriminant(params: &WeierstrassParams, c: f64) -> f64 {
    let (trace, det) = trace_det(params, c);
    trace * trace - 4.0 * det
}

/// The uniform contraction factor
/// `h = sqrt((2/b^2 + a^2 + sqrt(4/b^4 + a^4)) / 2)`.
pub fn contraction_factor_h(params: &WeierstrassParams) -> f64 {
    let a2 = params.a() * params.a();
    let b2 = params.bf() * params.bf();
    let lambda_max = 0.5 * (2.0 / b2 + a2 + libm::sqrt(4.0 / (b2 * b2) + a2 * a2));
    libm::sqrt(lambda_max)
}

/// `log_h(1/b)`, the root of `b h^s = 1`.
pub fn ifs_dimension_bound(params: &WeierstrassParams) -> Result<f64> {
    let h = contraction_factor_h(params);
    if h >= 1.0 {
        return Err(Error::BoundUndefined { h });
    }
    Ok(libm::log(params.bf()) / -libm::log(h))
}

/// `D = 2 + log_b a`, the box dimension of the graph.
pub fn classical_dimension(params: &WeierstrassParams) -> f64 {
    2.0 + libm::log(params.a()) / libm::log(params.bf())
}

/// Solves `sum u_i^s = 1` for `s >= 0` by bisection.
///
/// `s -> sum u_i^s` is strictly decreasing from `factors.len()` at `s = 0`, so
/// the root is unique. The bracket starts at `[0, 64]` and is doubled until
/// the sum at its upper end drops to 1 or below. Stops when the bracket is
/// narrower than `1e-13` or cannot be split further.
pub fn moran_solve(factors: &[f64]) -> Result<f64> {
    if factors.is_empty() {
        return Err(Error::NoFactors);
    }
    if let Some((index, &value)) = factors.iter().enumerate().find(|(_, &u)| !(u > 0.0 && u < 1.0)) {
        return Err(Error::InvalidFactor { index, value });
    }
    let excess = |s: f64| factors.iter().map(|&u| libm::pow(u, s)).sum::<f64>() - 1.0;

    let mut lo = 0.0;
    let mut hi = MORAN_BRACKET;
    while excess(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > MORAN_WIDTH {
        let mid = 0.5 * (lo + hi);
        // Above s ~ 450 adjacent doubles are wider than the target width.
        if mid <= lo || mid >= hi {
            break;
        }
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Everything the dimension bound depends on for one `(a, b, phi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionReport {
    pub params: WeierstrassParams,
    pub phi_id: &'static str,
    pub hypothesis: HypothesisCheck,
    pub h: f64,
    /// `log_h(1/b)`; `None` when `h >= 1`.
    pub ifs_bound: Option<f64>,
    pub classical_dimension: f64,
    /// The IFS bound is above 2 and so no better than the planar bound.
    pub exceeds_planar: bool,
}

pub fn dimension_report(params: &WeierstrassParams, phi: &PhiFunction) -> DimensionReport {
    let ifs_bound = ifs_dimension_bound(params).ok();
    DimensionReport {
        params: *params,
        phi_id: phi.id(),
        hypothesis: check_hypotheses(params, phi),
        h: contraction_factor_h(params),
        ifs_bound,
        classical_dimension: classical_dimension(params),
        exceeds_planar: ifs_bound.is_some_and(|s| s > 2.0),
    }
}
