//! Sparse ADMM step: the weighted LASSO
//!
//! ```text
//! min_s  beta_S sum_i w_i |s_i| + (rho / 2) ||G s - r||^2
//! ```
//!
//! with `G = Phi A`, solved by monotone FISTA.

use num_complex::Complex64;

use crate::linalg::{norm_sq, CMatrix, CVector, ZERO};

/// `argmin_x tau * w * |x| + |x - v|^2 / 2`, i.e. `(v/|v|) max(|v| - tau w, 0)`.
pub fn weighted_soft_threshold(v: Complex64, w: f64, tau: f64) -> Complex64 {
    let mag = v.norm();
    let keep = mag - tau * w;
    if mag == 0.0 || keep <= 0.0 {
        ZERO
    } else {
        v * (keep / mag)
    }
}

/// Largest singular value of `g` by power iteration on `G^H G`.
pub fn spectral_norm(g: &CMatrix, max_iter: usize, tol: f64) -> f64 {
    let q = g.ncols();
    if q == 0 || g.nrows() == 0 {
        return 0.0;
    }
    // deterministic, generic start vector
    let mut x = CVector::from_fn(q, |i, _| Complex64::new(1.0 + 0.1 * (i % 7) as f64, 0.05 * (i % 3) as f64));
    x.unscale_mut(norm_sq(&x).sqrt());
    let mut estimate = 0.0;
    for _ in 0..max_iter {
        let y = g.adjoint() * (g * &x);
        let nrm = norm_sq(&y).sqrt();
        if nrm == 0.0 {
            return 0.0;
        }
        x = y.unscale(nrm);
        let prev = estimate;
        estimate = nrm;
        if (estimate - prev).abs() <= tol * estimate {
            break;
        }
    }
    estimate.sqrt()
}

#[derive(Debug, Clone, Copy)]
pub struct SparseProblem<'a> {
    pub g: &'a CMatrix,
    pub target: &'a CVector,
    pub weights: &'a [f64],
    pub beta_s: f64,
    pub rho: f64,
}

impl SparseProblem<'_> {
    pub fn objective(&self, s: &CVector) -> f64 {
        let penalty: f64 = s.iter().zip(self.weights).map(|(z, w)| w * z.norm()).sum();
        let res = self.g * s - self.target;
        self.beta_s * penalty + 0.5 * self.rho * norm_sq(&res)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseUpdate {
    pub s: CVector,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct SparseSettings {
    /// `sigma_max(G)`.
    pub spectral_norm: f64,
    pub tol: f64,
    pub max_iter: usize,
}

/// Monotone FISTA from `start`. Stops once an accepted step changes the
/// objective by less than `tol` relative.
pub fn solve_weighted_lasso(p: &SparseProblem<'_>, start: &CVector, settings: SparseSettings) -> SparseUpdate {
    let lipschitz = p.rho * settings.spectral_norm * settings.spectral_norm;
    if lipschitz == 0.0 {
        // G = 0: the penalty alone is minimised at zero
        return SparseUpdate { s: CVector::from_element(start.len(), ZERO), iterations: 0, converged: true };
    }
    let step = 1.0 / lipschitz;
    let tau = step * p.beta_s;
    let g_adj = p.g.adjoint();

    let mut x = start.clone();
    let mut fx = p.objective(&x);
    let mut y = x.clone();
    let mut theta = 1.0_f64;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < settings.max_iter {
        iterations += 1;
        let grad = (&g_adj * (p.g * &y - p.target)).scale(p.rho);
        let z = CVector::from_fn(y.len(), |i, _| {
            weighted_soft_threshold(y[i] - grad[i] * step, p.weights[i], tau)
        });
        let fz = p.objective(&z);
        let theta_next = 0.5 * (1.0 + (1.0 + 4.0 * theta * theta).sqrt());
        let accepted = fz <= fx;
        let x_prev = x.clone();
        let f_prev = fx;
        if accepted {
            x = z.clone();
            fx = fz;
        }
        // y = x + (theta/theta') (z - x) + ((theta - 1)/theta') (x - x_prev)
        y = &x + (&z - &x).scale(theta / theta_next) + (&x - &x_prev).scale((theta - 1.0) / theta_next);
        theta = theta_next;

        if accepted && (f_prev - fx).abs() <= settings.tol * fx.abs().max(f64::MIN_POSITIVE) {
            converged = true;
            break;
        }
    }
    SparseUpdate { s: x, iterations, converged }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{complex_normal, seeded_rng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn soft_threshold_examples() {
        assert_eq!(weighted_soft_threshold(c(3.0, 0.0), 1.0, 1.0), c(2.0, 0.0));
        assert_eq!(weighted_soft_threshold(c(-0.5, 0.0), 2.0, 1.0), ZERO);
        assert_eq!(weighted_soft_threshold(ZERO, 1.0, 0.0), ZERO);
        for k in 0..12 {
            let theta = k as f64 * 0.5;
            let out = weighted_soft_threshold(Complex64::from_polar(2.0, theta), 1.0, 0.5);
            assert!((out - Complex64::from_polar(1.5, theta)).norm() < 1e-14);
        }
    }

    #[test]
    fn spectral_norm_of_diagonal() {
        let mut g = CMatrix::zeros(4, 3);
        g[(0, 0)] = c(1.0, 0.0);
        g[(1, 1)] = c(0.0, 3.0);
        g[(2, 2)] = c(2.0, 0.0);
        assert!((spectral_norm(&g, 200, 1e-14) - 3.0).abs() < 1e-6);
        assert_eq!(spectral_norm(&CMatrix::zeros(2, 2), 10, 1e-8), 0.0);
    }

    #[test]
    fn identity_operator_reduces_to_prox() {
        let mut rng = seeded_rng(4, 0);
        let r = CVector::from_fn(5, |_, _| complex_normal(&mut rng));
        let g = CMatrix::identity(5, 5);
        let w = vec![1.0; 5];
        let p = SparseProblem { g: &g, target: &r, weights: &w, beta_s: 0.4, rho: 1.0 };
        let out = solve_weighted_lasso(&p, &CVector::from_element(5, ZERO), SparseSettings {
            spectral_norm: 1.0,
            tol: 1e-12,
            max_iter: 100,
        });
        for i in 0..5 {
            assert!((out.s[i] - weighted_soft_threshold(r[i], 1.0, 0.4)).norm() < 1e-12);
        }
    }

    #[test]
    fn large_penalty_gives_zero() {
        let mut rng = seeded_rng(5, 0);
        let g = CMatrix::from_fn(8, 6, |_, _| complex_normal(&mut rng));
        let r = CVector::from_fn(8, |_, _| complex_normal(&mut rng));
        let w = vec![1.0; 6];
        let p = SparseProblem { g: &g, target: &r, weights: &w, beta_s: 1e6, rho: 1.0 };
        let sn = spectral_norm(&g, 100, 1e-12);
        let out = solve_weighted_lasso(&p, &r.rows(0, 6).into_owned(), SparseSettings {
            spectral_norm: sn,
            tol: 1e-10,
            max_iter: 500,
        });
        assert!(out.s.iter().all(|z| z.norm() == 0.0));
    }
}
