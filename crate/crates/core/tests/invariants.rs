//! Randomized invariants over the cost engine and seeding state.

use okm::{
    nearest_sq_dists, robust_cost_of_dists, zscore_normalize, PointSet, SeedingState,
};
use proptest::prelude::*;

fn point_set() -> impl Strategy<Value = PointSet> {
    (1usize..4, 2usize..40).prop_flat_map(|(d, n)| {
        proptest::collection::vec(-50.0f64..50.0, n * d)
            .prop_map(move |coords| PointSet::new(coords, d).unwrap())
    })
}

/// Sort-based reference for the top-z exclusion.
fn robust_cost_sorted(dists: &[f64], z: usize) -> f64 {
    let mut sorted = dists.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted[..dists.len() - z].iter().sum()
}

proptest! {
    #[test]
    fn selection_matches_sort_reference(
        dists in proptest::collection::vec(0.0f64..1e6, 1..60),
        z_frac in 0.0f64..1.0,
    ) {
        let z = ((dists.len() - 1) as f64 * z_frac) as usize;
        let fast = robust_cost_of_dists(&dists, z).unwrap();
        let slow = robust_cost_sorted(&dists, z);
        prop_assert!((fast - slow).abs() <= 1e-9 * slow.max(1.0));
    }

    #[test]
    fn robust_cost_decreases_in_z(
        dists in proptest::collection::vec(0.0f64..1e6, 2..60),
    ) {
        let mut prev = f64::INFINITY;
        for z in 0..dists.len() {
            let cost = robust_cost_of_dists(&dists, z).unwrap();
            prop_assert!(cost <= prev + 1e-9);
            prev = cost;
        }
    }

    #[test]
    fn incremental_cache_matches_scratch(
        x in point_set(),
        picks in proptest::collection::vec(0usize..1000, 1..8),
    ) {
        let mut state = SeedingState::new(&x, 0).unwrap();
        let mut chosen = Vec::new();
        for p in picks {
            let idx = p % x.n();
            state.add_center(&x, idx).unwrap();
            chosen.push(idx);
        }
        let centers: Vec<Vec<f64>> = chosen.iter().map(|&i| x.point(i).to_vec()).collect();
        let scratch = nearest_sq_dists(&x, &centers).unwrap();
        prop_assert_eq!(state.d2_cache(), &scratch[..]);
        let cost = robust_cost_of_dists(&scratch, 0).unwrap();
        prop_assert!((state.robust_cost() - cost).abs() <= 1e-9 * cost.max(1.0));
    }

    #[test]
    fn zscore_is_idempotent(x in point_set()) {
        let once = zscore_normalize(&x).unwrap();
        let twice = zscore_normalize(&once).unwrap();
        for (a, b) in twice.coords().iter().zip(once.coords()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}
