//! Box counting on dyadic grids, by direct sampling of `w`.
//!
//! Column `c` of the `eps`-grid covers `[c eps, (c + 1) eps]`. It is sampled
//! at `oversample + 1` equally spaced abscissas including both edges, so
//! adjacent columns share their boundary sample. Since `w` is continuous the
//! graph over a column meets every cell between the lowest and highest
//! sampled cell; the column contributes `max - min + 1` boxes.

use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::params::WeierstrassParams;
use crate::phi::PhiFunction;
use crate::series::{partial_sum, truncation_length};

pub const DEFAULT_OVERSAMPLE: usize = 16;
pub const DEFAULT_K_MIN: u32 = 4;
pub const DEFAULT_K_MAX: u32 = 12;

/// `k` with `eps = 2^-k`, `k >= 1`.
pub fn dyadic_exponent(epsilon: f64) -> Result<u32> {
    let (mantissa, exp) = libm::frexp(epsilon);
    if mantissa != 0.5 || exp > 0 {
        return Err(Error::NonDyadicScale { epsilon });
    }
    Ok((1 - exp) as u32)
}

/// Number of grid columns at scale `2^-k`.
pub fn column_count(k: u32) -> usize {
    1usize << k
}

/// Box count at `eps = 2^-k` restricted to columns `cols`.
///
/// Summing this over any partition of `0..2^k` gives [`count_boxes`].
pub fn count_columns(
    params: &WeierstrassParams,
    phi: &PhiFunction,
    k: u32,
    oversample: usize,
    cols: Range<usize>,
) -> u64 {
    let eps = libm::ldexp(1.0, -(k as i32));
    let terms = truncation_length(params, phi, eps / 100.0);
    let step = eps / oversample as f64;
    let cell = |j: usize| {
        let y = partial_sum(params, phi, j as f64 * step, terms);
        libm::floor(y / eps) as i64
    };

    let mut total = 0;
    for c in cols {
        let first = c * oversample;
        let (mut lo, mut hi) = (i64::MAX, i64::MIN);
        for j in first..=first + oversample {
            let idx = cell(j);
            lo = lo.min(idx);
            hi = hi.max(idx);
        }
        total += (hi - lo + 1) as u64;
    }
    total
}

/// Number of `eps`-grid boxes met by the sampled graph of `w` over `[0, 1]`.
pub fn count_boxes(
    params: &WeierstrassParams,
    phi: &PhiFunction,
    epsilon: f64,
    oversample: usize,
) -> Result<u64> {
    let k = dyadic_exponent(epsilon)?;
    if oversample < 4 {
        return Err(Error::Oversample(oversample));
    }
    Ok(count_columns(params, phi, k, oversample, 0..column_count(k)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxCountResult {
    pub ks: Vec<u32>,
    /// `2^-k` for each `k`, decreasing.
    pub scales: Vec<f64>,
    pub counts: Vec<u64>,
    /// Least-squares slope of `log2 N` against `k`.
    pub slope: f64,
    pub r_squared: f64,
    /// First and last index into `scales` used by the fit.
    pub fit_range: (usize, usize),
    pub oversample: usize,
}

impl BoxCountResult {
    /// Fits counts taken at consecutive `k` starting from `k_min`.
    pub fn from_counts(k_min: u32, counts: Vec<u64>, oversample: usize) -> Self {
        let ks: Vec<u32> = (k_min..).take(counts.len()).collect();
        let scales = ks.iter().map(|&k| libm::ldexp(1.0, -(k as i32))).collect();
        let xs: Vec<f64> = ks.iter().map(|&k| k as f64).collect();
        let ys: Vec<f64> = counts.iter().map(|&n| libm::log2(n as f64)).collect();
        let (slope, r_squared) = least_squares(&xs, &ys);
        BoxCountResult {
            ks,
            scales,
            fit_range: (0, counts.len().saturating_sub(1)),
            counts,
            slope,
            r_squared,
            oversample,
        }
    }
}

pub fn check_scale_range(k_min: u32, k_max: u32) -> Result<()> {
    if k_min < 2 || k_min >= k_max || k_max > 14 {
        return Err(Error::ScaleRange { k_min, k_max });
    }
    Ok(())
}

/// Box counts for `k in k_min..=k_max` and the log-log fit.
pub fn estimate_dimension(
    params: &WeierstrassParams,
    phi: &PhiFunction,
    k_min: u32,
    k_max: u32,
    oversample: usize,
) -> Result<BoxCountResult> {
    check_scale_range(k_min, k_max)?;
    let counts = (k_min..=k_max)
        .map(|k| count_boxes(params, phi, libm::ldexp(1.0, -(k as i32)), oversample))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoxCountResult::from_counts(k_min, counts, oversample))
}

/// Ordinary least squares `y ~ slope * x + c`; returns `(slope, r^2)`.
///
/// `r^2` is 1 when `y` is constant (the line fits exactly).
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) };
    (slope, r2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::classical_dimension;
    use crate::phi::builtin_phi;
    use std::println;

    fn params(a: f64, b: u32) -> WeierstrassParams {
        WeierstrassParams::new(a, b).unwrap()
    }

    #[test]
    fn dyadic_scales() {
        assert_eq!(dyadic_exponent(0.5), Ok(1));
        assert_eq!(dyadic_exponent(1.0 / 4096.0), Ok(12));
        for bad in [1.0, 2.0, 0.3, 0.0, -0.25, f64::NAN, f64::INFINITY] {
            assert!(dyadic_exponent(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn rejects_small_oversample_and_bad_ranges() {
        let phi = builtin_phi("cos2pi").unwrap();
        assert_eq!(count_boxes(&params(0.5, 3), &phi, 0.25, 3), Err(Error::Oversample(3)));
        assert!(count_boxes(&params(0.5, 3), &phi, 0.3, 16).is_err());
        for (lo, hi) in [(1, 5), (5, 5), (6, 4), (4, 15)] {
            assert!(estimate_dimension(&params(0.5, 3), &phi, lo, hi, 16).is_err());
        }
    }

    #[test]
    fn flat_graph_has_one_box_per_column() {
        let zero = PhiFunction::zero();
        for k in 1..=10 {
            let eps = libm::ldexp(1.0, -k);
            assert_eq!(count_boxes(&params(0.5, 3), &zero, eps, 16).unwrap(), 1u64 << k);
        }
        let fit = estimate_dimension(&params(0.5, 3), &zero, 4, 12, 16).unwrap();
        assert!((fit.slope - 1.0).abs() < 1e-12);
    }

    #[test]
    fn column_lower_bound_and_monotone_counts() {
        let phi = builtin_phi("cos2pi").unwrap();
        let p = params(0.5, 3);
        assert!(count_boxes(&p, &phi, 1.0 / 16.0, 16).unwrap() >= 16);
        let fit = estimate_dimension(&p, &phi, 2, 10, 16).unwrap();
        for (w, &k) in fit.counts.windows(2).zip(&fit.ks) {
            assert!(w[1] >= w[0]);
            let eps = libm::ldexp(1.0, -(k as i32));
            assert!(w[1] as f64 <= 4.0 * w[0] as f64 + 2.0 / eps);
        }
        for (&n, &eps) in fit.counts.iter().zip(&fit.scales) {
            assert!(n as f64 >= 1.0 / eps);
        }
    }

    #[test]
    fn partitioned_columns_sum_to_total() {
        let phi = builtin_phi("sin-unit").unwrap();
        let p = params(0.3, 5);
        let total = count_boxes(&p, &phi, 1.0 / 256.0, 16).unwrap();
        let split = count_columns(&p, &phi, 8, 16, 0..100) + count_columns(&p, &phi, 8, 16, 100..256);
        assert_eq!(total, split);
    }

    #[test]
    fn least_squares_exact_line() {
        let (s, r2) = least_squares(&[1.0, 2.0, 3.0, 4.0], &[3.0, 5.0, 7.0, 9.0]);
        assert!((s - 2.0).abs() < 1e-15 && (r2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn classical_curve_slope_near_d() {
        let p = params(0.5, 3);
        let fit = estimate_dimension(&p, &builtin_phi("cos2pi").unwrap(), 4, 10, 16).unwrap();
        println!("slope {} r2 {}", fit.slope, fit.r_squared);
        let d = classical_dimension(&p);
        assert!((fit.slope - d).abs() <= 0.15, "{} vs {d}", fit.slope);
        assert!(fit.r_squared >= 0.99);
    }
}
