//! Log-determinant reweighting of the nuclear norm and reweighted l1.

use crate::linalg::{from_eigen, hermitian_eigen, CMatrix, CVector};

/// Current weights of the reweighted objective.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSet {
    pub w1: CMatrix,
    pub w2: CMatrix,
    pub ws: Vec<f64>,
}

impl WeightSet {
    pub fn identity(m: usize, n: usize, q: usize) -> Self {
        Self { w1: CMatrix::identity(m, m), w2: CMatrix::identity(n, n), ws: vec![1.0; q] }
    }
}

/// `gamma_i = 1 / (max(lambda_i, 0) + delta)`.
pub fn log_det_decay(eigenvalues: &[f64], delta: f64) -> Vec<f64> {
    eigenvalues.iter().map(|&l| 1.0 / (l.max(0.0) + delta)).collect()
}

/// Rebuilds a weight matrix on the eigenbasis of `aux`:
/// `U diag(1 / (lambda + delta)) U^H`.
pub fn reweight_matrix(aux: &CMatrix, delta: f64) -> CMatrix {
    let (values, vectors) = hermitian_eigen(aux);
    from_eigen(&log_det_decay(&values, delta), &vectors)
}

/// New `(W1, W2)` from the auxiliary blocks `L0` and `R` of the last
/// low-rank update.
pub fn update_weights_lr(l0: &CMatrix, r: &CMatrix, delta: f64) -> (CMatrix, CMatrix) {
    (reweight_matrix(l0, delta), reweight_matrix(r, delta))
}

/// Diagonal of `W_s`: `1 / (|s_i| + delta)`.
pub fn update_ws(s: &CVector, delta: f64) -> Vec<f64> {
    s.iter().map(|z| 1.0 / (z.norm() + delta)).collect()
}
