//! The `b` maps `S_i(x, y) = ((x + i - 1)/b, a y + phi((x + i - 1)/b))` on
//! the strip `[0, 1] x R`, their attractor (the graph of `w`), and empirical
//! checks of the contraction property.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::params::WeierstrassParams;
use crate::phi::PhiFunction;
use crate::series::weierstrass_eval;

/// Default cap on the size of [`IfsSystem::deterministic_iterate`] output.
pub const DEFAULT_POINT_CAP: usize = 10_000_000;

/// Pairs drawn per RNG stream in [`IfsSystem::empirical_contraction`].
///
/// Block `k` uses ChaCha stream `k` of the seed, so any partition of the
/// blocks across threads reproduces the sequential result.
pub const CONTRACTION_BLOCK: u64 = 1 << 14;

/// Start of every chaos-game orbit.
pub const CHAOS_START: Point2 = Point2 { x: 0.5, y: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    #[inline]
    pub fn distance_squared(&self, other: &Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    #[inline]
    pub fn distance(&self, other: &Point2) -> f64 {
        libm::sqrt(self.distance_squared(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointSource {
    /// Supplied by the caller.
    Given,
    ChaosGame {
        burn_in: usize,
    },
    DeterministicIterate {
        depth: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Provenance {
    pub source: PointSource,
    pub seed: Option<u64>,
    pub count: usize,
}

/// A finite point cloud in the strip, standing in for a compact set.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet2D {
    points: Vec<Point2>,
    meta: Provenance,
}

impl PointSet2D {
    /// Wraps caller-supplied points. Every point must be finite with
    /// `x in [0, 1]`.
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| !in_strip(p)) {
            return Err(Error::OutOfDomain { x: p.x });
        }
        let count = points.len();
        Ok(PointSet2D { points, meta: Provenance { source: PointSource::Given, seed: None, count } })
    }

    fn generated(points: Vec<Point2>, source: PointSource, seed: Option<u64>) -> Self {
        let count = points.len();
        PointSet2D { points, meta: Provenance { source, seed, count } }
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn meta(&self) -> &Provenance {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<Point2> {
        self.points
    }
}

fn in_strip(p: &Point2) -> bool {
    (0.0..=1.0).contains(&p.x) && p.y.is_finite()
}

/// One branch `S_i`, `i in 1..=b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IfsMap {
    branch: u32,
    params: WeierstrassParams,
    phi: PhiFunction,
}

impl IfsMap {
    pub fn branch(&self) -> u32 {
        self.branch
    }

    /// `S_i(x, y)`; `x` must lie in `[0, 1]`.
    pub fn apply(&self, p: Point2) -> Result<Point2> {
        if !(0.0..=1.0).contains(&p.x) {
            return Err(Error::OutOfDomain { x: p.x });
        }
        Ok(self.apply_unchecked(p))
    }

    #[inline]
    fn apply_unchecked(&self, p: Point2) -> Point2 {
        let x = (p.x + (self.branch - 1) as f64) / self.params.bf();
        Point2 { x, y: self.params.a() * p.y + self.phi.value(x) }
    }

    /// `d(S_i p, S_i q) / d(p, q)` for distinct in-strip points.
    pub fn distortion(&self, p: Point2, q: Point2) -> f64 {
        let num = self.apply_unchecked(p).distance(&self.apply_unchecked(q));
        num / p.distance(&q)
    }
}

/// The full system `{S_1, ..., S_b}` for one `(a, b, phi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IfsSystem {
    maps: Vec<IfsMap>,
    y_bound: f64,
}

impl IfsSystem {
    pub fn new(params: WeierstrassParams, phi: PhiFunction) -> Self {
        let maps = (1..=params.b()).map(|branch| IfsMap { branch, params, phi }).collect();
        IfsSystem { maps, y_bound: phi.value_sup() / (1.0 - params.a()) }
    }

    pub fn maps(&self) -> &[IfsMap] {
        &self.maps
    }

    pub fn params(&self) -> &WeierstrassParams {
        &self.maps[0].params
    }

    pub fn phi(&self) -> &PhiFunction {
        &self.maps[0].phi
    }

    /// `sup |w| <= value_sup / (1 - a)`; the attractor lies in
    /// `[0, 1] x [-y_bound, y_bound]`.
    pub fn y_bound(&self) -> f64 {
        self.y_bound
    }

    /// Applies branch `i` (1-based) to `p`. Panics unless `1 <= i <= b`.
    pub fn apply_map(&self, branch: u32, p: Point2) -> Result<Point2> {
        let map = self.maps.get((branch as usize).wrapping_sub(1)).expect("branch index out of range");
        map.apply(p)
    }

    /// Largest distortion over `n_pairs` seeded random pairs in
    /// `[0, 1] x [-y_bound, y_bound]` and over every branch.
    pub fn empirical_contraction(&self, n_pairs: u64, seed: u64) -> f64 {
        let blocks = n_pairs.div_ceil(CONTRACTION_BLOCK);
        (0..blocks).map(|k| self.contraction_block(n_pairs, seed, k)).fold(0.0, f64::max)
    }

    /// Maximum distortion over block `block` of the pair stream used by
    /// [`empirical_contraction`](Self::empirical_contraction).
    pub fn contraction_block(&self, n_pairs: u64, seed: u64, block: u64) -> f64 {
        let start = block * CONTRACTION_BLOCK;
        let len = n_pairs.saturating_sub(start).min(CONTRACTION_BLOCK);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(block);
        let mut worst: f64 = 0.0;
        for _ in 0..len {
            let (p, q) = loop {
                let p = self.sample_point(&mut rng);
                let q = self.sample_point(&mut rng);
                if p != q {
                    break (p, q);
                }
            };
            worst = worst.max(self.max_distortion(p, q));
        }
        worst
    }

    /// Largest distortion of the pair `(p, q)` over all branches.
    pub fn max_distortion(&self, p: Point2, q: Point2) -> f64 {
        self.maps.iter().map(|m| m.distortion(p, q)).fold(0.0, f64::max)
    }

    /// Largest distortion over caller-chosen pairs; equal pairs are skipped.
    pub fn contraction_over(&self, pairs: &[(Point2, Point2)]) -> f64 {
        pairs.iter().filter(|(p, q)| p != q).map(|&(p, q)| self.max_distortion(p, q)).fold(0.0, f64::max)
    }

    fn sample_point(&self, rng: &mut ChaCha8Rng) -> Point2 {
        let x: f64 = rng.random();
        let y: f64 = rng.random();
        Point2 { x, y: (2.0 * y - 1.0) * self.y_bound }
    }

    /// Random iteration from `(0.5, 0)` with uniformly chosen branches.
    /// The first `burn_in` iterates are dropped.
    pub fn chaos_game(&self, n_points: usize, burn_in: usize, seed: u64) -> PointSet2D {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = self.maps.len();
        let mut p = CHAOS_START;
        for _ in 0..burn_in {
            p = self.maps[rng.random_range(0..b)].apply_unchecked(p);
        }
        let points = (0..n_points)
            .map(|_| {
                p = self.maps[rng.random_range(0..b)].apply_unchecked(p);
                p
            })
            .collect();
        PointSet2D::generated(points, PointSource::ChaosGame { burn_in }, Some(seed))
    }

    /// Number of points [`deterministic_iterate`](Self::deterministic_iterate)
    /// would produce.
    pub fn iterate_count(&self, seeds: usize, depth: u32) -> u128 {
        (self.maps.len() as u128)
            .checked_pow(depth)
            .and_then(|n| n.checked_mul(seeds as u128))
            .unwrap_or(u128::MAX)
    }

    /// Image of `seeds` under every composition of `depth` maps.
    ///
    /// Points are ordered by branch word, most recently applied branch
    /// outermost.
    pub fn deterministic_iterate(&self, seeds: &PointSet2D, depth: u32, cap: usize) -> Result<PointSet2D> {
        if seeds.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let count = self.iterate_count(seeds.len(), depth);
        if count > cap as u128 {
            return Err(Error::TooManyPoints { count, cap });
        }
        let mut current = seeds.points().to_vec();
        for _ in 0..depth {
            let mut next = Vec::with_capacity(current.len() * self.maps.len());
            for map in &self.maps {
                next.extend(current.iter().map(|&p| map.apply_unchecked(p)));
            }
            current = next;
        }
        Ok(PointSet2D::generated(current, PointSource::DeterministicIterate { depth }, seeds.meta().seed))
    }
}

/// Image abscissas for the self-affinity check lie on this dyadic lattice.
const LATTICE_BITS: i32 = 32;

impl IfsSystem {
    /// Largest `|w(x') - (a w(x) + phi(x'))|` with `x' = S_i`-image of `x`,
    /// over `samples` seeded abscissas per branch, `w` evaluated to `tol`.
    ///
    /// `x'` is drawn from the `2^-32` lattice inside branch `i`'s interval and
    /// `x = b x' - (i - 1)`, so both abscissas are exact doubles and the two
    /// series see identical arguments.
    pub fn self_affinity_residual(&self, samples: usize, seed: u64, tol: f64) -> f64 {
        let params = *self.params();
        let phi = *self.phi();
        let bf = params.bf();
        let scale = libm::ldexp(1.0, LATTICE_BITS);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for map in &self.maps {
            let shift = (map.branch - 1) as f64;
            let lo = libm::ceil(shift * scale / bf) as u64;
            let hi = libm::floor((shift + 1.0) * scale / bf) as u64;
            for _ in 0..samples {
                let image = rng.random_range(lo..=hi) as f64 / scale;
                let x = bf * image - shift;
                let mapped = map.apply_unchecked(Point2 { x, y: weierstrass_eval(&params, &phi, x, tol) });
                let residual = (mapped.y - weierstrass_eval(&params, &phi, mapped.x, tol)).abs();
                worst = worst.max(residual);
            }
        }
        worst
    }
}

/// Symmetric Hausdorff distance between two finite sets, by exhaustive
/// pairing (`O(|A| |B|)`).
pub fn hausdorff_distance(a: &PointSet2D, b: &PointSet2D) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    Ok(directed_hausdorff(a.points(), b.points()).max(directed_hausdorff(b.points(), a.points())))
}

/// `max_{p in from} min_{q in to} d(p, q)`.
pub fn directed_hausdorff(from: &[Point2], to: &[Point2]) -> f64 {
    let mut worst_sq: f64 = 0.0;
    for p in from {
        let mut best_sq = f64::INFINITY;
        for q in to {
            let d = p.distance_squared(q);
            if d < best_sq {
                best_sq = d;
                // cannot raise the max any more
                if best_sq <= worst_sq {
                    break;
                }
            }
        }
        worst_sq = worst_sq.max(best_sq);
    }
    libm::sqrt(worst_sq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::contraction_factor_h;
    use crate::phi::{builtin_phi, BUILTIN_IDS};
    use alloc::vec;

    fn system(a: f64, b: u32, id: &str) -> IfsSystem {
        IfsSystem::new(WeierstrassParams::new(a, b).unwrap(), builtin_phi(id).unwrap())
    }

    fn set(points: &[(f64, f64)]) -> PointSet2D {
        PointSet2D::new(points.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn apply_map_examples() {
        let s = system(0.5, 3, "cos2pi");
        assert_eq!(s.apply_map(1, Point2::new(0.0, 0.0)).unwrap(), Point2::new(0.0, 1.0));
        let p = s.apply_map(2, Point2::new(0.5, 2.0)).unwrap();
        assert_eq!(p.x, 0.5);
        assert!(p.y.abs() < 1e-15);
    }

    #[test]
    fn apply_map_rejects_points_off_the_strip() {
        let s = system(0.5, 3, "cos2pi");
        assert_eq!(s.apply_map(1, Point2::new(1.5, 0.0)), Err(Error::OutOfDomain { x: 1.5 }));
        assert!(s.apply_map(1, Point2::new(-1e-12, 0.0)).is_err());
        assert!(s.apply_map(1, Point2::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn system_shape() {
        let s = system(0.15, 10, "sin-unit");
        let branches: Vec<u32> = s.maps().iter().map(IfsMap::branch).collect();
        assert_eq!(branches, (1..=10).collect::<Vec<_>>());
        assert!((s.y_bound() - 1.0 / (2.0 * core::f64::consts::PI * 0.85)).abs() < 1e-15);
    }

    #[test]
    fn branch_images_tile_unit_interval() {
        for &(a, b) in &[(0.5, 3), (0.15, 10), (0.6, 2)] {
            let s = system(a, b, "cos-unit");
            let mut prev_end = 0.0;
            for (k, m) in s.maps().iter().enumerate() {
                let lo = m.apply(Point2::new(0.0, 0.0)).unwrap().x;
                let hi = m.apply(Point2::new(1.0, 0.0)).unwrap().x;
                assert_eq!(lo, prev_end);
                assert!((lo - k as f64 / b as f64).abs() < 1e-15);
                assert!((hi - (k + 1) as f64 / b as f64).abs() < 1e-15);
                prev_end = hi;
            }
            assert_eq!(prev_end, 1.0);
        }
    }

    #[test]
    fn bounding_box_is_invariant() {
        for id in BUILTIN_IDS {
            for &(a, b) in &[(0.5, 3), (0.15, 10), (0.9, 2)] {
                let s = system(a, b, id);
                let top = s.y_bound() + 1.0;
                for m in s.maps() {
                    for k in 0..=100 {
                        let x = k as f64 / 100.0;
                        for y in [-top, 0.0, top] {
                            let p = m.apply(Point2::new(x, y)).unwrap();
                            assert!((0.0..=1.0).contains(&p.x));
                            assert!(p.y.abs() <= top + 1e-12, "{id} {p:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn graph_points_map_to_graph_points() {
        let tol = 1e-10;
        let scale = (1u64 << 32) as f64;
        for id in BUILTIN_IDS {
            let s = system(0.5, 3, id);
            let (params, phi) = (*s.params(), *s.phi());
            for m in s.maps() {
                let i = m.branch() as u64;
                for k in 0..200u64 {
                    // image abscissa on the 2^-32 lattice inside branch i
                    let num = (i - 1) * (1u64 << 32) / 3 + 1 + k * 7_158_271;
                    let x = 3.0 * (num as f64 / scale) - (i - 1) as f64;
                    let p = Point2::new(x, weierstrass_eval(&params, &phi, x, tol));
                    let q = m.apply(p).unwrap();
                    let r = (q.y - weierstrass_eval(&params, &phi, q.x, tol)).abs();
                    assert!(r <= 2.0 * tol, "{id} i={i} x={x} residual={r}");
                }
            }
        }
    }

    #[test]
    fn sampled_self_affinity_within_two_tol() {
        let tol = 1e-10;
        for id in BUILTIN_IDS {
            for &(a, b) in &[(0.5, 3), (0.15, 10), (0.3, 5)] {
                let r = system(a, b, id).self_affinity_residual(300, 4, tol);
                assert!(r <= 2.0 * tol, "{id} a={a} b={b}: {r}");
            }
        }
    }

    #[test]
    fn contraction_bounded_by_h() {
        for &(a, b) in &[(0.5, 3), (0.15, 10), (0.3, 5)] {
            for id in ["cos-unit", "sin-unit"] {
                let s = system(a, b, id);
                let h = contraction_factor_h(s.params());
                let sup = s.empirical_contraction(50_000, 3);
                assert!(sup <= h + 1e-12, "{id} a={a} b={b}: {sup} > {h}");
                assert!(sup > 0.0);
            }
        }
    }

    #[test]
    fn contraction_is_seed_deterministic() {
        let s = system(0.5, 3, "cos-unit");
        let n = 3 * CONTRACTION_BLOCK + 17;
        let r = s.empirical_contraction(n, 9);
        assert_eq!(r.to_bits(), s.empirical_contraction(n, 9).to_bits());
        let by_block = (0..4).map(|k| s.contraction_block(n, 9, k)).fold(0.0, f64::max);
        assert_eq!(r.to_bits(), by_block.to_bits());
        assert_eq!(s.contraction_block(n, 9, 4), 0.0);
    }

    #[test]
    fn vertical_pairs_contract_by_a() {
        let s = system(0.5, 3, "cos-unit");
        let p = Point2::new(0.3, -0.2);
        let q = Point2::new(0.3, 0.7);
        for m in s.maps() {
            assert!((m.distortion(p, q) - 0.5).abs() < 1e-15);
        }
        let pairs = vec![(p, q), (p, p)];
        assert!(s.contraction_over(&pairs) >= 0.5 - 1e-15);
    }

    #[test]
    fn classical_phi_can_expand() {
        // |phi'| up to 2 pi: nearly horizontal pairs stretch.
        let s = system(0.5, 3, "cos2pi");
        let sup = s.empirical_contraction(20_000, 1);
        assert!(sup > 1.0, "{sup}");
    }

    #[test]
    fn chaos_game_single_step() {
        let s = system(0.5, 3, "cos-unit");
        let pts = s.chaos_game(1, 0, 42);
        assert_eq!(pts.len(), 1);
        let p = pts.points()[0];
        assert!(s.maps().iter().any(|m| m.apply(CHAOS_START).unwrap() == p));
        assert_eq!(pts.meta().source, PointSource::ChaosGame { burn_in: 0 });
        assert_eq!(pts.meta().seed, Some(42));
    }

    #[test]
    fn chaos_game_is_deterministic() {
        let s = system(0.15, 10, "sin-unit");
        assert_eq!(s.chaos_game(500, 10, 8), s.chaos_game(500, 10, 8));
        assert_ne!(s.chaos_game(500, 10, 8), s.chaos_game(500, 10, 9));
    }

    #[test]
    fn chaos_game_lands_on_graph() {
        for id in BUILTIN_IDS {
            let s = system(0.5, 3, id);
            let (params, phi) = (*s.params(), *s.phi());
            for p in s.chaos_game(1000, 100, 2).points() {
                assert!((0.0..=1.0).contains(&p.x));
                let r = (p.y - weierstrass_eval(&params, &phi, p.x, 1e-9)).abs();
                assert!(r <= 1e-6, "{id} {p:?} residual {r}");
            }
        }
    }

    #[test]
    fn iterate_depth_zero_and_counts() {
        let s = system(0.5, 3, "cos-unit");
        let seed = set(&[(0.5, 0.0)]);
        let same = s.deterministic_iterate(&seed, 0, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(same.points(), seed.points());
        assert_eq!(s.deterministic_iterate(&seed, 2, DEFAULT_POINT_CAP).unwrap().len(), 9);
        let two = set(&[(0.5, 0.0), (0.1, 0.3)]);
        assert_eq!(s.deterministic_iterate(&two, 3, DEFAULT_POINT_CAP).unwrap().len(), 54);
    }

    #[test]
    fn iterate_cap_reports_count() {
        let s = system(0.5, 3, "cos-unit");
        let seed = set(&[(0.5, 0.0)]);
        assert_eq!(
            s.deterministic_iterate(&seed, 5, 100),
            Err(Error::TooManyPoints { count: 243, cap: 100 })
        );
        assert!(matches!(
            s.deterministic_iterate(&seed, 200, DEFAULT_POINT_CAP),
            Err(Error::TooManyPoints { .. })
        ));
        let empty = PointSet2D::new(Vec::new()).unwrap();
        assert_eq!(s.deterministic_iterate(&empty, 1, 10), Err(Error::EmptyPointSet));
    }

    #[test]
    fn iterate_approaches_graph() {
        let s = system(0.5, 3, "cos-unit");
        let (params, phi) = (*s.params(), *s.phi());
        let pts = s.deterministic_iterate(&set(&[(0.5, 0.0)]), 12, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(pts.len(), 531_441);
        for p in pts.points().iter().step_by(97) {
            let r = (p.y - weierstrass_eval(&params, &phi, p.x, 1e-9)).abs();
            assert!(r <= 1e-3, "{p:?}");
        }
    }

    #[test]
    fn hausdorff_examples() {
        let a = set(&[(0.0, 0.0), (0.5, 1.0)]);
        assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
        let b = PointSet2D::generated(vec![Point2::new(3.0, 4.0)], PointSource::Given, None);
        let o = set(&[(0.0, 0.0)]);
        assert_eq!(hausdorff_distance(&o, &b).unwrap(), 5.0);
        let empty = PointSet2D::new(Vec::new()).unwrap();
        assert_eq!(hausdorff_distance(&a, &empty), Err(Error::EmptyPointSet));
    }

    #[test]
    fn hausdorff_is_symmetric_and_asymmetric_parts_differ() {
        let a = set(&[(0.0, 0.0), (1.0, 0.0)]);
        let b = set(&[(0.0, 0.0), (1.0, 0.0), (1.0, 2.0)]);
        assert_eq!(directed_hausdorff(a.points(), b.points()), 0.0);
        assert_eq!(directed_hausdorff(b.points(), a.points()), 2.0);
        assert_eq!(hausdorff_distance(&a, &b).unwrap(), hausdorff_distance(&b, &a).unwrap());
    }

    #[test]
    fn point_set_rejects_off_strip_points() {
        assert!(PointSet2D::new(vec![Point2::new(1.1, 0.0)]).is_err());
        assert!(PointSet2D::new(vec![Point2::new(0.5, f64::INFINITY)]).is_err());
    }

    #[test]
    fn successive_iterates_converge() {
        let s = system(0.5, 3, "cos-unit");
        let h = contraction_factor_h(s.params());
        let seed = set(&[(0.5, 0.0)]);
        let it = |k| s.deterministic_iterate(&seed, k, DEFAULT_POINT_CAP).unwrap();
        let d0 = hausdorff_distance(&it(0), &it(1)).unwrap();
        for k in 1..=6 {
            let dk = hausdorff_distance(&it(k), &it(k + 1)).unwrap();
            assert!(dk <= libm::pow(h, k as f64) * d0 * (1.0 + 1e-12), "k={k}");
        }
    }
}
