//! Low-rank ADMM step: the weighted nuclear-norm subproblem in its
//! semidefinite form
//!
//! ```text
//! min  (beta_L / 2) (Tr(W1 L0) + Tr(W2 R)) + (rho / 2) ||P_Omega(L) - T||^2
//! s.t. [[L0, L], [L^H, R]] >= 0
//! ```
//!
//! solved by an inner splitting on the stacked `(M+N) x (M+N)` block
//! matrix: a closed-form entrywise quadratic step, then a Euclidean
//! projection onto the PSD cone, then a dual ascent step. The projected
//! iterate is returned, so the block matrix is PSD on exit.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::linalg::{frob_sq, hermitian_part, nuclear_norm, project_psd, psd_sqrt, CMatrix};

// ratio of scaled primal to dual residual beyond which mu is doubled or halved
const MU_BALANCE: f64 = 2.0;

/// Data of one low-rank subproblem. `target` is `M x N`; only entries with
/// `sampled[m * N + n]` set enter the quadratic term.
#[derive(Debug, Clone, Copy)]
pub struct LowRankProblem<'a> {
    pub target: &'a CMatrix,
    pub sampled: &'a [bool],
    pub w1: &'a CMatrix,
    pub w2: &'a CMatrix,
    pub beta_l: f64,
    pub rho: f64,
}

impl LowRankProblem<'_> {
    fn dims(&self) -> (usize, usize) {
        self.target.shape()
    }

    fn quadratic(&self, l: &CMatrix) -> f64 {
        let (_, n) = self.dims();
        let mut acc = 0.0;
        for (k, &on) in self.sampled.iter().enumerate() {
            if on {
                acc += (l[(k / n, k % n)] - self.target[(k / n, k % n)]).norm_sqr();
            }
        }
        0.5 * self.rho * acc
    }

    /// Value of the semidefinite objective at `(L, L0, R)`.
    pub fn objective(&self, l: &CMatrix, l0: &CMatrix, r: &CMatrix) -> f64 {
        let tr1 = (self.w1 * l0).trace().re;
        let tr2 = (self.w2 * r).trace().re;
        0.5 * self.beta_l * (tr1 + tr2) + self.quadratic(l)
    }

    /// The same problem minimised over `L0` and `R` analytically:
    /// `beta_L ||W1^{1/2} L W2^{1/2}||_* + (rho/2) ||P_Omega(L) - T||^2`.
    pub fn reduced_objective(&self, l: &CMatrix) -> f64 {
        let weighted = psd_sqrt(self.w1) * l * psd_sqrt(self.w2);
        self.beta_l * nuclear_norm(&weighted) + self.quadratic(l)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowRankUpdate {
    pub l: CMatrix,
    pub l0: CMatrix,
    pub r: CMatrix,
    pub iterations: usize,
    pub converged: bool,
}

/// Inner solver with warm-start state carried between calls.
#[derive(Debug, Clone)]
pub struct LowRankSolver {
    m: usize,
    n: usize,
    z: CMatrix,
    dual: CMatrix,
    mu: Option<f64>,
    tol: f64,
    max_iter: usize,
}

impl LowRankSolver {
    pub fn new(m: usize, n: usize, tol: f64, max_iter: usize) -> Self {
        let size = m + n;
        Self { m, n, z: CMatrix::zeros(size, size), dual: CMatrix::zeros(size, size), mu: None, tol, max_iter }
    }

    pub fn solve(&mut self, p: &LowRankProblem<'_>) -> LowRankUpdate {
        let (m, n) = (self.m, self.n);
        assert_eq!(p.dims(), (m, n), "low-rank problem shape");
        assert_eq!(p.sampled.len(), m * n, "sampling flags length");
        let size = m + n;
        let mut mu = self.mu.unwrap_or(p.rho.max(1e-12));
        let half_beta = 0.5 * p.beta_l;
        let mut converged = false;
        let mut iterations = 0;
        let mut x = CMatrix::zeros(size, size);

        while iterations < self.max_iter {
            iterations += 1;
            let v = &self.z - self.dual.scale(1.0 / mu);

            // quadratic step, blockwise closed form
            for i in 0..m {
                for j in 0..m {
                    x[(i, j)] = v[(i, j)] - p.w1[(i, j)] * (half_beta / mu);
                }
            }
            for i in 0..n {
                for j in 0..n {
                    x[(m + i, m + j)] = v[(m + i, m + j)] - p.w2[(i, j)] * (half_beta / mu);
                }
            }
            let off_weight = 1.0 / (p.rho + 2.0 * mu);
            for i in 0..m {
                for j in 0..n {
                    // the upper block appears twice in the Frobenius penalty
                    let vij = 0.5 * (v[(i, m + j)] + v[(m + j, i)].conj());
                    let val = if p.sampled[i * n + j] {
                        (p.target[(i, j)] * p.rho + vij * (2.0 * mu)) * off_weight
                    } else {
                        vij
                    };
                    x[(i, m + j)] = val;
                    x[(m + j, i)] = val.conj();
                }
            }

            let z_prev = std::mem::replace(&mut self.z, project_psd(&(&x + self.dual.scale(1.0 / mu))));
            let gap = &x - &self.z;
            self.dual += gap.scale(mu);
            self.dual = hermitian_part(&self.dual);

            let primal = frob_sq(&gap).sqrt();
            let dual_res = mu * frob_sq(&(&self.z - &z_prev)).sqrt();
            let eps_p = self.tol * (1.0 + frob_sq(&x).sqrt().max(frob_sq(&self.z).sqrt()));
            let eps_d = self.tol * (1.0 + frob_sq(&self.dual).sqrt());
            if primal <= eps_p && dual_res <= eps_d {
                converged = true;
                break;
            }
            let balance = (primal / eps_p) / (dual_res / eps_d).max(f64::MIN_POSITIVE);
            if balance > MU_BALANCE {
                mu *= 2.0;
            } else if balance < 1.0 / MU_BALANCE {
                mu /= 2.0;
            }
        }
        self.mu = Some(mu);

        let z = &self.z;
        LowRankUpdate {
            l: z.view((0, m), (m, n)).into_owned(),
            l0: hermitian_part(&z.view((0, 0), (m, m)).into_owned()),
            r: hermitian_part(&z.view((m, m), (n, n)).into_owned()),
            iterations,
            converged,
        }
    }
}

/// Stacks `[[L0, L], [L^H, R]]`.
pub fn block_matrix(l: &CMatrix, l0: &CMatrix, r: &CMatrix) -> CMatrix {
    let (m, n) = l.shape();
    let mut out = DMatrix::from_element(m + n, m + n, Complex64::new(0.0, 0.0));
    out.view_mut((0, 0), (m, m)).copy_from(l0);
    out.view_mut((m, m), (n, n)).copy_from(r);
    out.view_mut((0, m), (m, n)).copy_from(l);
    out.view_mut((m, 0), (n, m)).copy_from(&l.adjoint());
    out
}
