//! Row-selection operator picking `K` of the `MN` antenna/frequency samples.
//!
//! The operator is kept as an index list; the one-hot matrix is never
//! formed. Its pseudo-inverse is its transpose because the rows are
//! orthonormal.

use rand::seq::index;
use serde::{Deserialize, Serialize};

use crate::error::{dim_check, Error, Result};
use crate::linalg::{CVector, ZERO};
use crate::random::{seeded_rng, STREAM_MASK};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionMask {
    total: usize,
    indices: Vec<usize>,
}

/// `round(ratio * total)` with halves rounded up.
pub fn selection_count(total: usize, ratio: f64) -> usize {
    // 1e-9 absorbs representation error such as 0.3 * 200 = 60.000000000000007
    ((ratio * total as f64) + 0.5 + 1e-9).floor().min(total as f64) as usize
}

impl SelectionMask {
    pub fn new(total: usize, indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidArgument("selection mask must keep at least one sample".into()));
        }
        let mut seen = vec![false; total];
        for &i in &indices {
            if i >= total {
                return Err(Error::InvalidArgument(format!("mask index {i} out of range 0..{total}")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument(format!("mask index {i} repeated")));
            }
        }
        Ok(Self { total, indices })
    }

    pub fn full(total: usize) -> Result<Self> {
        Self::new(total, (0..total).collect())
    }

    /// Uniform sampling without replacement of `round(ratio * total)`
    /// positions, returned in ascending order.
    pub fn random(total: usize, ratio: f64, seed: u64) -> Result<Self> {
        Self::random_stream(total, ratio, seed, STREAM_MASK)
    }

    pub fn random_stream(total: usize, ratio: f64, seed: u64, stream: u64) -> Result<Self> {
        if !(ratio > 0.0 && ratio <= 1.0) {
            return Err(Error::InvalidArgument(format!("compression ratio {ratio} not in (0, 1]")));
        }
        let k = selection_count(total, ratio);
        if k == 0 {
            return Err(Error::InvalidArgument(format!("ratio {ratio} of {total} keeps no samples")));
        }
        let mut rng = seeded_rng(seed, stream);
        let mut indices = index::sample(&mut rng, total, k).into_vec();
        indices.sort_unstable();
        Self::new(total, indices)
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn ratio(&self) -> f64 {
        self.len() as f64 / self.total as f64
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.total
    }

    /// Per-position membership flags.
    pub fn membership(&self) -> Vec<bool> {
        let mut flags = vec![false; self.total];
        for &i in &self.indices {
            flags[i] = true;
        }
        flags
    }

    /// `Phi x`.
    pub fn apply(&self, x: &CVector) -> Result<CVector> {
        dim_check(x.len() == self.total, || format!("vector length {} but mask covers {}", x.len(), self.total))?;
        Ok(CVector::from_iterator(self.len(), self.indices.iter().map(|&i| x[i])))
    }

    /// `Phi^T y`, zero-filled.
    pub fn adjoint(&self, y: &CVector) -> Result<CVector> {
        dim_check(y.len() == self.len(), || format!("vector length {} but mask keeps {}", y.len(), self.len()))?;
        let mut out = CVector::from_element(self.total, ZERO);
        for (&i, &v) in self.indices.iter().zip(y.iter()) {
            out[i] = v;
        }
        Ok(out)
    }

    /// `Phi^T Phi x`: zeroes the unselected entries.
    pub fn project(&self, x: &CVector) -> Result<CVector> {
        self.adjoint(&self.apply(x)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn counts() {
        assert_eq!(selection_count(200, 0.3), 60);
        assert_eq!(selection_count(200, 0.4), 80);
        assert_eq!(selection_count(200, 0.5), 100);
        assert_eq!(selection_count(5, 0.5), 3);
        assert_eq!(selection_count(100, 1.0), 100);
    }

    #[test]
    fn random_mask_properties() {
        let full = SelectionMask::random(50, 1.0, 3).unwrap();
        assert_eq!(full.indices(), (0..50).collect::<Vec<_>>().as_slice());
        let m = SelectionMask::random(200, 0.3, 4).unwrap();
        assert_eq!(m.len(), 60);
        assert!(m.indices().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(m, SelectionMask::random(200, 0.3, 4).unwrap());
        assert!(SelectionMask::random(10, 0.01, 0).is_err());
        assert!(SelectionMask::random(10, 0.0, 0).is_err());
        assert!(SelectionMask::random(10, 1.5, 0).is_err());
    }

    #[test]
    fn construction_errors() {
        assert!(SelectionMask::new(3, vec![]).is_err());
        assert!(SelectionMask::new(3, vec![3]).is_err());
        assert!(SelectionMask::new(3, vec![1, 1]).is_err());
    }

    #[test]
    fn apply_and_adjoint_examples() {
        let x = CVector::from_vec(vec![c(1.0), c(2.0), c(3.0)]);
        let id = SelectionMask::full(3).unwrap();
        assert_eq!(id.apply(&x).unwrap(), x);
        assert_eq!(id.adjoint(&x).unwrap(), x);
        let pick = SelectionMask::new(3, vec![2]).unwrap();
        assert_eq!(pick.apply(&x).unwrap().as_slice(), &[c(3.0)]);
        let one = SelectionMask::new(3, vec![1]).unwrap();
        let y = CVector::from_vec(vec![c(5.0)]);
        assert_eq!(one.adjoint(&y).unwrap().as_slice(), &[c(0.0), c(5.0), c(0.0)]);
        assert!(one.apply(&y).is_err());
        assert!(one.adjoint(&x).is_err());
    }
}
