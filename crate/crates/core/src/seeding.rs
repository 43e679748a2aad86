//! The five seeders: uniform random, k-means++ (D² sampling), thresholded
//! k-means++ with a fixed cost guess (TKM++), the mixture-based robust
//! k-means++ (RKM++), and the self-thresholded sampler that clips each
//! point's weight at `eta * rho_X(S)/z` computed from the current run.

use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::points::PointSet;
use crate::state::SeedingState;

/// Parameters for the self-thresholded robust sampler.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobustSeedConfig {
    /// Number of outliers the robust cost excludes.
    pub z: usize,
    /// Threshold parameter; clip value is `eta * rho_X(S)/z`.
    pub eta: f64,
    /// Number of centers to draw: k, or ceil((1+c)k) in bi-criteria mode.
    pub t: usize,
}

impl RobustSeedConfig {
    /// Bi-criteria iteration count t = ceil((1+c)k).
    pub fn bi_criteria_t(k: usize, c: f64) -> usize {
        ((1.0 + c) * k as f64).ceil() as usize
    }
}

/// Parameters for TKM++: thresholded D² sampling against a fixed guess of
/// the optimal robust cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TkmConfig {
    pub z: usize,
    /// Error parameter; the fixed clip value is `beta * cost_guess / z`.
    pub beta: f64,
    /// External guess of rho_X(C_OPT).
    pub cost_guess: f64,
    pub t: usize,
}

/// Parameters for RKM++: a (alpha, 1-alpha) mixture of uniform and D²
/// sampling, followed by weighted k-means++ over the candidates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RkmConfig {
    /// Mixture weight of the uniform component, in [0, 1].
    pub alpha: f64,
    /// Candidate oversampling parameter in (0, 1); m = ceil(k/delta).
    pub delta: f64,
    /// Number of centers to return.
    pub k: usize,
}

/// Algorithm tags for dispatch and CLI parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Rand,
    Kmpp,
    Tkmpp,
    Rkmpp,
    Robust,
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rand" | "random" => Ok(Self::Rand),
            "kmpp" | "km++" | "kmeans++" => Ok(Self::Kmpp),
            "tkmpp" | "tkm++" => Ok(Self::Tkmpp),
            "rkmpp" | "rkm++" => Ok(Self::Rkmpp),
            "robust" | "this-work" => Ok(Self::Robust),
            other => Err(Error::InvalidParameter(format!(
                "unknown algorithm tag {other:?}"
            ))),
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::Rand => "RAND",
            Self::Kmpp => "KM++",
            Self::Tkmpp => "TKM++",
            Self::Rkmpp => "RKM++",
            Self::Robust => "ROBUST",
        };
        f.write_str(s)
    }
}

/// Fully parameterized seeding request, for uniform dispatch.
#[derive(Debug, Clone)]
pub enum SeedSpec {
    Rand { k: usize },
    Kmpp { k: usize },
    Tkmpp(TkmConfig),
    Rkmpp(RkmConfig),
    Robust(RobustSeedConfig),
}

/// Draws one index with probability proportional to `weights`.
///
/// Returns `None` when the total weight is not strictly positive, so the
/// caller can engage its uniform fallback.
pub fn sample_index<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> Option<usize> {
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) || !total.is_finite() {
        return None;
    }
    let target = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last_positive = None;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            acc += w;
            last_positive = Some(i);
            if target < acc {
                return Some(i);
            }
        }
    }
    // rounding pushed the target past the final cumulative sum
    last_positive
}

fn pick_uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> usize {
    rng.random_range(0..n)
}

/// Uniform draw over indices not yet chosen as centers.
fn uniform_unchosen<R: Rng + ?Sized>(n: usize, chosen: &[usize], rng: &mut R) -> usize {
    let mut unchosen: Vec<usize> = (0..n).filter(|i| !chosen.contains(i)).collect();
    if unchosen.is_empty() {
        // every index is already a center; a repeat is the only option
        unchosen.extend(0..n);
    }
    unchosen[rng.random_range(0..unchosen.len())]
}

/// k distinct indices sampled uniformly without replacement.
pub fn random_seed<R: Rng + ?Sized>(x: &PointSet, k: usize, rng: &mut R) -> Result<Vec<usize>> {
    check_k(k, x.n())?;
    Ok(rand::seq::index::sample(rng, x.n(), k).into_vec())
}

/// k-means++ / D² sampling: first center uniform, each subsequent center
/// drawn with probability proportional to its squared distance to the
/// nearest chosen center.
pub fn kmeanspp_seed<R: Rng + ?Sized>(x: &PointSet, k: usize, rng: &mut R) -> Result<Vec<usize>> {
    check_k(k, x.n())?;
    let mut centers = Vec::with_capacity(k);
    let mut d2 = vec![f64::INFINITY; x.n()];
    let first = pick_uniform(x.n(), rng);
    update_d2(x, &mut d2, first);
    centers.push(first);
    while centers.len() < k {
        let next = match sample_index(&d2, rng) {
            Some(i) => i,
            None => uniform_unchosen(x.n(), &centers, rng),
        };
        update_d2(x, &mut d2, next);
        centers.push(next);
    }
    Ok(centers)
}

/// The robust sampler: the first center is uniform, every later center is
/// drawn with weight `min(d2_cache[x], eta * rho_X(S)/z)` where rho is the
/// robust cost of the current run's own state. No external cost estimate
/// is consulted anywhere.
pub fn robust_seed<R: Rng + ?Sized>(
    x: &PointSet,
    cfg: &RobustSeedConfig,
    rng: &mut R,
) -> Result<SeedingState> {
    if cfg.z == 0 {
        return Err(Error::ZeroOutlierThreshold);
    }
    if !(cfg.eta > 0.0) {
        return Err(Error::InvalidParameter("eta must be > 0".into()));
    }
    check_k(cfg.t, x.n())?;
    let mut state = SeedingState::new(x, cfg.z)?;
    let first = pick_uniform(x.n(), rng);
    state.add_center(x, first)?;
    robust_seed_continue(x, &mut state, cfg.t - 1, cfg.eta, rng)?;
    Ok(state)
}

/// Runs `rounds` further iterations of the robust sampler on an existing
/// state (at least one center required). Exposed so callers can pin the
/// first center.
pub fn robust_seed_continue<R: Rng + ?Sized>(
    x: &PointSet,
    state: &mut SeedingState,
    rounds: usize,
    eta: f64,
    rng: &mut R,
) -> Result<()> {
    if state.iteration() == 0 {
        return Err(Error::EmptyCenters);
    }
    let z = state.z().max(1) as f64;
    clipped_loop(x, state, rounds, rng, |s| eta * s.robust_cost() / z)
}

/// TKM++: identical loop to the robust sampler, but the clip value is the
/// fixed `beta * cost_guess / z` at every iteration.
pub fn tkmpp_seed<R: Rng + ?Sized>(
    x: &PointSet,
    cfg: &TkmConfig,
    rng: &mut R,
) -> Result<SeedingState> {
    if cfg.z == 0 {
        return Err(Error::ZeroOutlierThreshold);
    }
    if !(cfg.cost_guess > 0.0) || !(cfg.beta > 0.0) {
        return Err(Error::InvalidParameter(
            "cost_guess and beta must be > 0".into(),
        ));
    }
    check_k(cfg.t, x.n())?;
    let threshold = cfg.beta * cfg.cost_guess / cfg.z as f64;
    let mut state = SeedingState::new(x, cfg.z)?;
    let first = pick_uniform(x.n(), rng);
    state.add_center(x, first)?;
    clipped_loop(x, &mut state, cfg.t - 1, rng, |_| threshold)?;
    Ok(state)
}

fn clipped_loop<R, F>(
    x: &PointSet,
    state: &mut SeedingState,
    rounds: usize,
    rng: &mut R,
    threshold_of: F,
) -> Result<()>
where
    R: Rng + ?Sized,
    F: Fn(&SeedingState) -> f64,
{
    let mut weights = vec![0.0; x.n()];
    for _ in 0..rounds {
        let threshold = threshold_of(state);
        for (w, &d) in weights.iter_mut().zip(state.d2_cache()) {
            *w = d.min(threshold);
        }
        let next = match sample_index(&weights, rng) {
            Some(i) => i,
            None => uniform_unchosen(x.n(), state.center_indices(), rng),
        };
        state.add_center(x, next)?;
    }
    Ok(())
}

/// The clipped sampling weights the robust sampler would use at the current
/// state: `min(d2_cache[x], eta * rho_X(S)/z)` per point.
pub fn robust_weights(state: &SeedingState, eta: f64) -> Vec<f64> {
    let threshold = eta * state.robust_cost() / state.z().max(1) as f64;
    state.d2_cache().iter().map(|&d| d.min(threshold)).collect()
}

/// RKM++: phase 1 samples m = ceil(k/delta) candidates from the
/// (alpha, 1-alpha) mixture of uniform and D² sampling; phase 2 weights
/// each candidate by how many dataset points it is nearest to, then picks
/// k candidates by weighted k-means++.
pub fn rkmpp_seed<R: Rng + ?Sized>(
    x: &PointSet,
    cfg: &RkmConfig,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if !(0.0..=1.0).contains(&cfg.alpha) {
        return Err(Error::InvalidParameter("alpha must be in [0, 1]".into()));
    }
    if !(cfg.delta > 0.0 && cfg.delta < 1.0) {
        return Err(Error::InvalidParameter("delta must be in (0, 1)".into()));
    }
    check_k(cfg.k, x.n())?;
    let n = x.n();
    let m = (cfg.k as f64 / cfg.delta).ceil() as usize;
    if m > n {
        return Err(Error::InvalidParameter(format!(
            "candidate count m = ceil(k/delta) = {m} exceeds n = {n}"
        )));
    }

    let candidates = mixture_candidates(x, cfg.alpha, m, rng)?;

    // the mixture's uniform component can re-pick a candidate
    let mut unique = Vec::with_capacity(candidates.len());
    for &c in &candidates {
        if !unique.contains(&c) {
            unique.push(c);
        }
    }
    while unique.len() < cfg.k {
        unique.push(uniform_unchosen(n, &unique, rng));
    }

    // phase 2: nearest-candidate multiplicities, then weighted k-means++
    let counts = nearest_candidate_counts(x, &unique);
    let mut weights = vec![0.0; unique.len()];
    let mut chosen = Vec::with_capacity(cfg.k);
    let mut cd2 = vec![f64::INFINITY; unique.len()];
    let count_weights: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    let first = sample_index(&count_weights, rng)
        .unwrap_or_else(|| rng.random_range(0..unique.len()));
    update_candidate_d2(x, &unique, &mut cd2, first);
    chosen.push(first);
    while chosen.len() < cfg.k {
        for (w, (&c, &d)) in weights.iter_mut().zip(counts.iter().zip(&cd2)) {
            *w = c as f64 * d;
        }
        let next = match sample_index(&weights, rng) {
            Some(i) => i,
            None => {
                let remaining: Vec<usize> =
                    (0..unique.len()).filter(|i| !chosen.contains(i)).collect();
                remaining[rng.random_range(0..remaining.len())]
            }
        };
        update_candidate_d2(x, &unique, &mut cd2, next);
        chosen.push(next);
    }
    Ok(chosen.into_iter().map(|i| unique[i]).collect())
}

/// RKM++ phase 1: draws `m` candidate indices sequentially from the
/// (alpha, 1-alpha) mixture of uniform and D² sampling, updating the
/// distance cache after each draw. The very first draw is uniform.
pub fn mixture_candidates<R: Rng + ?Sized>(
    x: &PointSet,
    alpha: f64,
    m: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    check_k(m, x.n())?;
    let n = x.n();
    let mut candidates = Vec::with_capacity(m);
    let mut d2 = vec![f64::INFINITY; n];
    let first = pick_uniform(n, rng);
    update_d2(x, &mut d2, first);
    candidates.push(first);
    let mut weights = vec![0.0; n];
    for _ in 1..m {
        let sum_d2: f64 = d2.iter().sum();
        // scaled by sum_d2 so alpha = 0 degenerates to raw D² weights
        let uniform_part = alpha * sum_d2 / n as f64;
        for (w, &d) in weights.iter_mut().zip(&d2) {
            *w = uniform_part + (1.0 - alpha) * d;
        }
        let next = match sample_index(&weights, rng) {
            Some(i) => i,
            None => uniform_unchosen(n, &candidates, rng),
        };
        update_d2(x, &mut d2, next);
        candidates.push(next);
    }
    Ok(candidates)
}

/// Dispatches to the configured seeder and returns its center indices.
pub fn seed<R: Rng + ?Sized>(x: &PointSet, spec: &SeedSpec, rng: &mut R) -> Result<Vec<usize>> {
    match spec {
        SeedSpec::Rand { k } => random_seed(x, *k, rng),
        SeedSpec::Kmpp { k } => kmeanspp_seed(x, *k, rng),
        SeedSpec::Tkmpp(cfg) => Ok(tkmpp_seed(x, cfg, rng)?.center_indices().to_vec()),
        SeedSpec::Rkmpp(cfg) => rkmpp_seed(x, cfg, rng),
        SeedSpec::Robust(cfg) => Ok(robust_seed(x, cfg, rng)?.center_indices().to_vec()),
    }
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if k > n {
        return Err(Error::InvalidParameter(format!(
            "cannot draw k = {k} centers from n = {n} points"
        )));
    }
    Ok(())
}

fn update_d2(x: &PointSet, d2: &mut [f64], center: usize) {
    let c = x.point(center);
    for (i, row) in x.rows().enumerate() {
        let d = crate::cost::sqdist(row, c);
        if d < d2[i] {
            d2[i] = d;
        }
    }
}

fn update_candidate_d2(x: &PointSet, candidates: &[usize], cd2: &mut [f64], chosen: usize) {
    let c = x.point(candidates[chosen]);
    for (i, &cand) in candidates.iter().enumerate() {
        let d = crate::cost::sqdist(x.point(cand), c);
        if d < cd2[i] {
            cd2[i] = d;
        }
    }
}

/// For each candidate, the number of dataset points whose nearest candidate
/// it is (ties go to the earlier candidate).
fn nearest_candidate_counts(x: &PointSet, candidates: &[usize]) -> Vec<usize> {
    let mut counts = vec![0usize; candidates.len()];
    for row in x.rows() {
        let mut best = f64::INFINITY;
        let mut best_i = 0;
        for (i, &cand) in candidates.iter().enumerate() {
            let d = crate::cost::sqdist(row, x.point(cand));
            if d < best {
                best = d;
                best_i = i;
            }
        }
        counts[best_i] += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn line(points: &[f64]) -> PointSet {
        PointSet::new(points.to_vec(), 1).unwrap()
    }

    #[test]
    fn random_seed_edge_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let x = line(&[0.0, 1.0, 2.0, 3.0]);
        let mut all = random_seed(&x, 4, &mut rng).unwrap();
        all.sort_unstable();
        assert_eq!(all, vec![0, 1, 2, 3]);

        let single = line(&[7.0]);
        assert_eq!(random_seed(&single, 1, &mut rng).unwrap(), vec![0]);
        assert!(random_seed(&single, 2, &mut rng).is_err());
    }

    #[test]
    fn random_seed_frequency() {
        let x = line(&[0.0, 1.0, 2.0, 3.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut counts = [0usize; 4];
        for _ in 0..10_000 {
            counts[random_seed(&x, 1, &mut rng).unwrap()[0]] += 1;
        }
        for c in counts {
            assert!((2300..=2700).contains(&c), "counts = {counts:?}");
        }
    }

    #[test]
    fn kmeanspp_two_points() {
        let x = line(&[0.0, 5.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut c = kmeanspp_seed(&x, 2, &mut rng).unwrap();
        c.sort_unstable();
        assert_eq!(c, vec![0, 1]);
    }

    #[test]
    fn kmeanspp_weight_ratio_on_line() {
        // X = {0, 1, 3}, first center at index 0: D² weights are (0, 1, 9),
        // so index 2 is picked with probability 9/10
        let d2 = [0.0, 1.0, 9.0];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let trials = 100_000;
        let mut far = 0usize;
        for _ in 0..trials {
            if sample_index(&d2, &mut rng).unwrap() == 2 {
                far += 1;
            }
        }
        let freq = far as f64 / trials as f64;
        assert!((freq - 0.9).abs() < 0.01, "freq = {freq}");
    }

    #[test]
    fn kmeanspp_identical_points_fallback() {
        let x = line(&[4.0; 5]);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut c = kmeanspp_seed(&x, 3, &mut rng).unwrap();
        c.sort_unstable();
        c.dedup();
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn robust_seed_outlier_damping_on_line() {
        // X = {0, 1, 100}, z = 1, eta = 1, first center at index 0.
        // rho = 1 (the point at 100 is discarded), threshold = 1,
        // weights = (0, 1, 1): the far point is picked with probability 1/2
        // instead of 9999/10000 under pure D².
        let x = line(&[0.0, 1.0, 100.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let trials = 100_000;
        let mut far = 0usize;
        for _ in 0..trials {
            let mut state = SeedingState::new(&x, 1).unwrap();
            state.add_center(&x, 0).unwrap();
            robust_seed_continue(&x, &mut state, 1, 1.0, &mut rng).unwrap();
            if state.center_indices()[1] == 2 {
                far += 1;
            }
        }
        let freq = far as f64 / trials as f64;
        assert!((freq - 0.5).abs() < 0.01, "freq = {freq}");
    }

    #[test]
    fn robust_seed_clip_inactive_matches_kmeanspp() {
        // threshold far above every squared distance: the trajectory must
        // match k-means++ under a paired RNG
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let coords: Vec<f64> = (0..60)
            .map(|_| rand::Rng::random_range(&mut rng, -10.0..10.0))
            .collect();
        let x = PointSet::new(coords, 2).unwrap();
        let cfg = RobustSeedConfig {
            z: 1,
            eta: 1e30,
            t: 5,
        };
        let mut rng_a = ChaCha8Rng::seed_from_u64(99);
        let mut rng_b = ChaCha8Rng::seed_from_u64(99);
        let robust = robust_seed(&x, &cfg, &mut rng_a).unwrap();
        let kmpp = kmeanspp_seed(&x, 5, &mut rng_b).unwrap();
        assert_eq!(robust.center_indices(), &kmpp[..]);
    }

    #[test]
    fn robust_seed_rejects_bad_params() {
        let x = line(&[0.0, 1.0, 2.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let bad_z = RobustSeedConfig { z: 0, eta: 1.0, t: 2 };
        assert!(robust_seed(&x, &bad_z, &mut rng).is_err());
        let bad_t = RobustSeedConfig { z: 1, eta: 1.0, t: 4 };
        assert!(robust_seed(&x, &bad_t, &mut rng).is_err());
    }

    #[test]
    fn tkmpp_hand_computed_weights() {
        // same 3-point line with cost_guess = 1, beta = 1: threshold = 1,
        // weights after a first center at index 0 are (0, 1, 1)
        let x = line(&[0.0, 1.0, 100.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let trials = 100_000;
        let mut far = 0usize;
        for _ in 0..trials {
            let mut state = SeedingState::new(&x, 1).unwrap();
            state.add_center(&x, 0).unwrap();
            clipped_loop(&x, &mut state, 1, &mut rng, |_| 1.0).unwrap();
            if state.center_indices()[1] == 2 {
                far += 1;
            }
        }
        let freq = far as f64 / trials as f64;
        assert!((freq - 0.5).abs() < 0.01, "freq = {freq}");
    }

    #[test]
    fn tkmpp_huge_guess_matches_kmeanspp() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let coords: Vec<f64> = (0..80)
            .map(|_| rand::Rng::random_range(&mut rng, -10.0..10.0))
            .collect();
        let x = PointSet::new(coords, 2).unwrap();
        let cfg = TkmConfig {
            z: 2,
            beta: 1.0,
            cost_guess: 1e30,
            t: 6,
        };
        let mut rng_a = ChaCha8Rng::seed_from_u64(123);
        let mut rng_b = ChaCha8Rng::seed_from_u64(123);
        let tkm = tkmpp_seed(&x, &cfg, &mut rng_a).unwrap();
        let kmpp = kmeanspp_seed(&x, 6, &mut rng_b).unwrap();
        assert_eq!(tkm.center_indices(), &kmpp[..]);
    }

    #[test]
    fn rkmpp_alpha_zero_phase1_is_kmeanspp() {
        // with alpha = 0 the phase-1 weights are the raw D² cache, so the
        // candidate draw sequence matches k-means++ under a paired RNG
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let coords: Vec<f64> = (0..40)
            .map(|_| rand::Rng::random_range(&mut rng, -10.0..10.0))
            .collect();
        let x = PointSet::new(coords, 2).unwrap();
        let mut rng_a = ChaCha8Rng::seed_from_u64(77);
        let mut rng_b = ChaCha8Rng::seed_from_u64(77);
        let candidates = mixture_candidates(&x, 0.0, 6, &mut rng_a).unwrap();
        let kmpp = kmeanspp_seed(&x, 6, &mut rng_b).unwrap();
        assert_eq!(candidates, kmpp);
    }

    #[test]
    fn mixture_alpha_one_is_uniform() {
        // alpha = 1: every draw after the first is uniform over all points
        let x = line(&[0.0, 1.0, 2.0, 1000.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let mut counts = [0usize; 4];
        for _ in 0..10_000 {
            let cands = mixture_candidates(&x, 1.0, 2, &mut rng).unwrap();
            counts[cands[1]] += 1;
        }
        // the far point gets no D² boost; each index lands near 2500
        for c in counts {
            assert!((2300..=2700).contains(&c), "counts = {counts:?}");
        }
    }

    #[test]
    fn rkmpp_alpha_one_runs_uniform_phase1() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let coords: Vec<f64> = (0..100)
            .map(|_| rand::Rng::random_range(&mut rng, -10.0..10.0))
            .collect();
        let x = PointSet::new(coords, 2).unwrap();
        let cfg = RkmConfig {
            alpha: 1.0,
            delta: 0.2,
            k: 5,
        };
        let centers = rkmpp_seed(&x, &cfg, &mut rng).unwrap();
        assert_eq!(centers.len(), 5);
        let mut dedup = centers.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), 5);
    }

    #[test]
    fn dispatch_matches_direct_call_and_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let coords: Vec<f64> = (0..60)
            .map(|_| rand::Rng::random_range(&mut rng, -10.0..10.0))
            .collect();
        let x = PointSet::new(coords, 2).unwrap();
        let cfg = RobustSeedConfig {
            z: 2,
            eta: 1.0,
            t: 4,
        };
        let mut rng_a = ChaCha8Rng::seed_from_u64(55);
        let mut rng_b = ChaCha8Rng::seed_from_u64(55);
        let via_dispatch = seed(&x, &SeedSpec::Robust(cfg), &mut rng_a).unwrap();
        let direct = robust_seed(&x, &cfg, &mut rng_b).unwrap();
        assert_eq!(via_dispatch, direct.center_indices());

        let mut rng_c = ChaCha8Rng::seed_from_u64(55);
        let mut rng_d = ChaCha8Rng::seed_from_u64(55);
        let run1 = seed(&x, &SeedSpec::Kmpp { k: 4 }, &mut rng_c).unwrap();
        let run2 = seed(&x, &SeedSpec::Kmpp { k: 4 }, &mut rng_d).unwrap();
        assert_eq!(run1, run2);
    }

    #[test]
    fn unknown_algorithm_tag_errors() {
        assert!("frobnicate".parse::<Algorithm>().is_err());
        assert_eq!("robust".parse::<Algorithm>().unwrap(), Algorithm::Robust);
    }

    #[test]
    fn weights_are_valid_at_every_step() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let coords: Vec<f64> = (0..50)
            .map(|_| rand::Rng::random_range(&mut rng, -10.0..10.0))
            .collect();
        let x = PointSet::new(coords, 1).unwrap();
        let mut state = SeedingState::new(&x, 3).unwrap();
        state.add_center(&x, 0).unwrap();
        for _ in 0..6 {
            let w = robust_weights(&state, 1.0);
            let total: f64 = w.iter().sum();
            assert!(w.iter().all(|&v| v >= 0.0));
            assert!(total > 0.0);
            let normalized: f64 = w.iter().map(|&v| v / total).sum();
            assert!((normalized - 1.0).abs() < 1e-12);
            let next = sample_index(&w, &mut rng).unwrap();
            state.add_center(&x, next).unwrap();
        }
    }
}
