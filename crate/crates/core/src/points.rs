use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Dense n x d matrix of coordinates, row-major, with optional ground-truth
/// outlier labels.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    coords: Vec<f64>,
    n: usize,
    d: usize,
    true_outliers: Option<BTreeSet<usize>>,
}

impl PointSet {
    /// Builds a point set from a flat row-major coordinate buffer.
    pub fn new(coords: Vec<f64>, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("dimension must be >= 1".into()));
        }
        if coords.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if coords.len() % d != 0 {
            return Err(Error::InvalidParameter(format!(
                "coordinate buffer length {} is not a multiple of d = {}",
                coords.len(),
                d
            )));
        }
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteCoordinate);
        }
        let n = coords.len() / d;
        Ok(Self {
            coords,
            n,
            d,
            true_outliers: None,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.first().map(|r| r.len()).unwrap_or(0);
        for r in rows {
            if r.len() != d {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: r.len(),
                });
            }
        }
        Self::new(rows.concat(), d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks(self.d)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Records the ground-truth outlier set; must be a subset of {0..n-1}.
    pub fn set_true_outliers(&mut self, outliers: BTreeSet<usize>) -> Result<()> {
        if let Some(&max) = outliers.iter().next_back() {
            if max >= self.n {
                return Err(Error::IndexOutOfBounds {
                    index: max,
                    n: self.n,
                });
            }
        }
        self.true_outliers = Some(outliers);
        Ok(())
    }

    pub fn true_outliers(&self) -> Option<&BTreeSet<usize>> {
        self.true_outliers.as_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(PointSet::new(vec![], 2).is_err());
        assert!(PointSet::new(vec![1.0, f64::NAN], 2).is_err());
        assert!(PointSet::new(vec![1.0, f64::INFINITY], 2).is_err());
        assert!(PointSet::new(vec![1.0, 2.0, 3.0], 2).is_err());
    }

    #[test]
    fn row_access() {
        let x = PointSet::new(vec![0.0, 1.0, 2.0, 3.0], 2).unwrap();
        assert_eq!(x.n(), 2);
        assert_eq!(x.d(), 2);
        assert_eq!(x.point(1), &[2.0, 3.0]);
    }

    #[test]
    fn outlier_labels_must_be_in_range() {
        let mut x = PointSet::new(vec![0.0, 1.0], 1).unwrap();
        assert!(x.set_true_outliers([5].into_iter().collect()).is_err());
        assert!(x.set_true_outliers([1].into_iter().collect()).is_ok());
        assert_eq!(x.true_outliers().unwrap().len(), 1);
    }
}
