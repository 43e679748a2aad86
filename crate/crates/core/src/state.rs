use crate::cost::{robust_cost_of_dists, sqdist};
use crate::error::{Error, Result};
use crate::points::PointSet;

/// Incremental seeding state: chosen center indices, per-point squared
/// distance to the nearest chosen center, and the current robust cost.
///
/// `add_center` does O(nd) work for the cache update plus O(n) expected
/// for the top-z selection, which is what keeps a t-round seeding pass at
/// O(ndt) overall.
#[derive(Debug, Clone)]
pub struct SeedingState {
    centers: Vec<usize>,
    d2: Vec<f64>,
    robust_cost: f64,
    z: usize,
}

impl SeedingState {
    /// Empty state. The cache starts at +infinity: no center has been
    /// chosen, so every distance-to-nearest-center is undefined.
    pub fn new(x: &PointSet, z: usize) -> Result<Self> {
        if z >= x.n() {
            return Err(Error::TooManyOutliers { z, n: x.n() });
        }
        Ok(Self {
            centers: Vec::new(),
            d2: vec![f64::INFINITY; x.n()],
            robust_cost: f64::INFINITY,
            z,
        })
    }

    /// Adds a center and refreshes the cache and robust cost.
    pub fn add_center(&mut self, x: &PointSet, new_center: usize) -> Result<()> {
        if new_center >= x.n() {
            return Err(Error::IndexOutOfBounds {
                index: new_center,
                n: x.n(),
            });
        }
        let c = x.point(new_center);
        for (i, row) in x.rows().enumerate() {
            let d = sqdist(row, c);
            if d < self.d2[i] {
                self.d2[i] = d;
            }
        }
        self.centers.push(new_center);
        self.robust_cost = robust_cost_of_dists(&self.d2, self.z)?;
        Ok(())
    }

    pub fn center_indices(&self) -> &[usize] {
        &self.centers
    }

    pub fn d2_cache(&self) -> &[f64] {
        &self.d2
    }

    /// Current robust cost rho_X(S) with this state's z.
    pub fn robust_cost(&self) -> f64 {
        self.robust_cost
    }

    pub fn iteration(&self) -> usize {
        self.centers.len()
    }

    pub fn z(&self) -> usize {
        self.z
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::nearest_sq_dists;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn duplicate_center_leaves_cache_unchanged() {
        let x = PointSet::new(vec![0.0, 1.0, 5.0], 1).unwrap();
        let mut s = SeedingState::new(&x, 1).unwrap();
        s.add_center(&x, 0).unwrap();
        let before = s.d2_cache().to_vec();
        s.add_center(&x, 0).unwrap();
        assert_eq!(s.d2_cache(), &before[..]);
    }

    #[test]
    fn all_points_as_centers_zeroes_everything() {
        let x = PointSet::new(vec![0.0, 1.0, 5.0, 9.0], 1).unwrap();
        let mut s = SeedingState::new(&x, 1).unwrap();
        for i in 0..x.n() {
            s.add_center(&x, i).unwrap();
        }
        assert!(s.d2_cache().iter().all(|&d| d == 0.0));
        assert_eq!(s.robust_cost(), 0.0);
        assert_eq!(s.iteration(), 4);
    }

    #[test]
    fn cache_matches_from_scratch_recomputation() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let coords: Vec<f64> = (0..90).map(|_| rng.random_range(-20.0..20.0)).collect();
        let x = PointSet::new(coords, 3).unwrap();
        let mut s = SeedingState::new(&x, 2).unwrap();
        let mut chosen = Vec::new();
        for _ in 0..10 {
            let idx = rng.random_range(0..x.n());
            s.add_center(&x, idx).unwrap();
            chosen.push(idx);
            let centers: Vec<Vec<f64>> =
                chosen.iter().map(|&i| x.point(i).to_vec()).collect();
            let scratch = nearest_sq_dists(&x, &centers).unwrap();
            assert_eq!(s.d2_cache(), &scratch[..]);
            for &c in &chosen {
                assert_eq!(s.d2_cache()[c], 0.0);
            }
        }
    }
}
