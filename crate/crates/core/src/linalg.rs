//! Dense complex linear-algebra helpers shared by the scene model, the
//! solver and the baselines.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{dim_check, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Stacks the rows of an `M x N` matrix into a vector of length `M*N`,
/// index `m*N + n` (antenna-major, frequency-minor).
pub fn vec_antenna_major(x: &CMatrix) -> CVector {
    let (m, n) = x.shape();
    CVector::from_fn(m * n, |k, _| x[(k / n, k % n)])
}

/// Inverse of [`vec_antenna_major`].
pub fn unvec_antenna_major(v: &CVector, m: usize, n: usize) -> Result<CMatrix> {
    dim_check(v.len() == m * n, || format!("cannot reshape length {} into {m}x{n}", v.len()))?;
    Ok(CMatrix::from_fn(m, n, |i, j| v[i * n + j]))
}

pub fn frob_sq(x: &CMatrix) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

pub fn norm_sq(v: &CVector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

pub fn is_finite(x: &CMatrix) -> bool {
    x.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn is_finite_vec(v: &CVector) -> bool {
    v.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn hermitian_part(x: &CMatrix) -> CMatrix {
    (x + x.adjoint()).scale(0.5)
}

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized
/// first; eigenvalues are returned in ascending order with matching
/// eigenvector columns.
pub fn hermitian_eigen(x: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = x.nrows();
    let h = faer::Mat::<Complex64>::from_fn(n, n, |i, j| 0.5 * (x[(i, j)] + x[(j, i)].conj()));
    let eig = h.self_adjoint_eigen(faer::Side::Lower).expect("eigendecomposition of a finite Hermitian matrix");
    let (s, u) = (eig.S(), eig.U());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| s[a].re.total_cmp(&s[b].re));
    let values = order.iter().map(|&i| s[i].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| u[(r, order[c])]);
    (values, vectors)
}

/// `U diag(values) U^H`.
pub fn from_eigen(values: &[f64], vectors: &CMatrix) -> CMatrix {
    let mut scaled = vectors.clone();
    for (j, &lam) in values.iter().enumerate() {
        scaled.column_mut(j).scale_mut(lam);
    }
    let out = &scaled * vectors.adjoint();
    hermitian_part(&out)
}

/// Euclidean projection of a Hermitian matrix onto the PSD cone.
pub fn project_psd(x: &CMatrix) -> CMatrix {
    let n = x.nrows();
    let h = faer::Mat::<Complex64>::from_fn(n, n, |i, j| 0.5 * (x[(i, j)] + x[(j, i)].conj()));
    let eig = h.self_adjoint_eigen(faer::Side::Lower).expect("eigendecomposition of a finite Hermitian matrix");
    let (s, u) = (eig.S(), eig.U());
    let kept: Vec<usize> = (0..n).filter(|&i| s[i].re > 0.0).collect();
    if kept.len() == n {
        return CMatrix::from_fn(n, n, |i, j| h[(i, j)]);
    }
    if kept.is_empty() {
        return CMatrix::zeros(n, n);
    }
    let basis = faer::Mat::<Complex64>::from_fn(n, kept.len(), |r, c| u[(r, kept[c])] * s[kept[c]].re.sqrt());
    let out = &basis * basis.adjoint();
    CMatrix::from_fn(n, n, |i, j| 0.5 * (out[(i, j)] + out[(j, i)].conj()))
}

pub fn singular_values(x: &CMatrix) -> Vec<f64> {
    let mut sv: Vec<f64> = x.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

pub fn nuclear_norm(x: &CMatrix) -> f64 {
    singular_values(x).iter().sum()
}

/// Number of singular values above `rel_tol * sigma_max`.
pub fn numerical_rank(x: &CMatrix, rel_tol: f64) -> usize {
    let sv = singular_values(x);
    match sv.first() {
        Some(&top) if top > 0.0 => sv.iter().filter(|&&s| s > rel_tol * top).count(),
        _ => 0,
    }
}

pub fn real_to_complex(x: &DMatrix<f64>) -> CMatrix {
    x.map(|v| Complex64::new(v, 0.0))
}

/// Hermitian PSD square root, clamping negative eigenvalues to zero.
pub fn psd_sqrt(x: &CMatrix) -> CMatrix {
    let (values, vectors) = hermitian_eigen(x);
    let roots: Vec<f64> = values.iter().map(|&v| v.max(0.0).sqrt()).collect();
    from_eigen(&roots, &vectors)
}
