//! Thread-parallel drivers over the core's partitionable kernels.
//!
//! Work is split into the same fixed units the sequential code uses (RNG
//! blocks, grid columns), and the per-unit results are merged with `max` or
//! `+`, so output does not depend on the thread count.

use std::thread;

use fractal_bound_core::boxcount::{check_scale_range, column_count, count_columns};
use fractal_bound_core::ifs::CONTRACTION_BLOCK;
use fractal_bound_core::{BoxCountResult, IfsSystem, PhiFunction, WeierstrassParams};

use crate::CliError;

pub const THREADS_ENV: &str = "FRACTAL_BOUND_THREADS";

/// Thread cap from `FRACTAL_BOUND_THREADS`, defaulting to the available
/// parallelism.
pub fn threads_from_env() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => parse_threads(&v),
        Err(_) => Ok(thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

pub fn parse_threads(v: &str) -> Result<usize, CliError> {
    match v.trim().parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(CliError::Usage(format!("{THREADS_ENV} must be an integer >= 1, got `{v}`"))),
    }
}

/// Same value as [`IfsSystem::empirical_contraction`], computed on up to
/// `threads` threads.
pub fn empirical_contraction(system: &IfsSystem, n_pairs: u64, seed: u64, threads: usize) -> f64 {
    let blocks = n_pairs.div_ceil(CONTRACTION_BLOCK);
    let workers = (threads as u64).clamp(1, blocks.max(1));
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    (w..blocks)
                        .step_by(workers as usize)
                        .map(|k| system.contraction_block(n_pairs, seed, k))
                        .fold(0.0, f64::max)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).fold(0.0, f64::max)
    })
}

/// Box count at `2^-k`, columns split into contiguous chunks.
pub fn count_boxes(
    params: &WeierstrassParams,
    phi: &PhiFunction,
    k: u32,
    oversample: usize,
    threads: usize,
) -> u64 {
    let cols = column_count(k);
    let workers = threads.clamp(1, cols);
    let chunk = cols.div_ceil(workers);
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let range = (w * chunk).min(cols)..((w + 1) * chunk).min(cols);
                s.spawn(move || count_columns(params, phi, k, oversample, range))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    })
}

/// Same result as [`boxcount::estimate_dimension`].
pub fn estimate_dimension(
    params: &WeierstrassParams,
    phi: &PhiFunction,
    k_min: u32,
    k_max: u32,
    oversample: usize,
    threads: usize,
) -> Result<BoxCountResult, CliError> {
    check_scale_range(k_min, k_max)?;
    if oversample < 4 {
        return Err(fractal_bound_core::Error::Oversample(oversample).into());
    }
    let counts = (k_min..=k_max).map(|k| count_boxes(params, phi, k, oversample, threads)).collect();
    Ok(BoxCountResult::from_counts(k_min, counts, oversample))
}

#[cfg(test)]
mod tests {
    use super::*;
    use fractal_bound_core::boxcount;
    use fractal_bound_core::phi::builtin_phi;

    #[test]
    fn thread_env_parsing() {
        assert_eq!(parse_threads("4").unwrap(), 4);
        assert_eq!(parse_threads(" 1 ").unwrap(), 1);
        assert!(parse_threads("0").is_err());
        assert!(parse_threads("-2").is_err());
        assert!(parse_threads("many").is_err());
    }

    #[test]
    fn contraction_independent_of_thread_count() {
        let p = WeierstrassParams::new(0.5, 3).unwrap();
        let sys = IfsSystem::new(p, builtin_phi("cos-unit").unwrap());
        let n = 5 * CONTRACTION_BLOCK + 3;
        let seq = sys.empirical_contraction(n, 17);
        for t in [1, 2, 3, 8, 64] {
            assert_eq!(empirical_contraction(&sys, n, 17, t).to_bits(), seq.to_bits());
        }
        assert_eq!(empirical_contraction(&sys, 0, 17, 4), 0.0);
    }

    #[test]
    fn box_counts_independent_of_thread_count() {
        let p = WeierstrassParams::new(0.5, 3).unwrap();
        let phi = builtin_phi("cos2pi").unwrap();
        let seq = boxcount::estimate_dimension(&p, &phi, 3, 9, 16).unwrap();
        for t in [1, 3, 7, 1000] {
            assert_eq!(estimate_dimension(&p, &phi, 3, 9, 16, t).unwrap(), seq);
        }
    }
}
