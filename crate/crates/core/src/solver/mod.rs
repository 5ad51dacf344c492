//! Compressive low-rank plus sparse recovery by ADMM with iteratively
//! reweighted nuclear norm and l1 penalties.
//!
//! Each outer iteration runs `J + 1` passes of (low-rank update, `W1`/`W2`
//! reweighting), then `J + 1` passes of (sparse update, `W_s`
//! reweighting), then a dual ascent step with a geometrically growing
//! penalty `rho`. With `J = 0` and reweighting disabled this is the plain
//! nuclear norm + l1 recovery.

mod config;
pub mod lowrank;
pub mod sparse;
pub mod weights;

pub use config::{SolverConfig, Variant};
pub use lowrank::{LowRankProblem, LowRankSolver, LowRankUpdate};
pub use sparse::{solve_weighted_lasso, spectral_norm, weighted_soft_threshold, SparseProblem, SparseSettings, SparseUpdate};
pub use weights::{update_weights_lr, update_ws, WeightSet};

use crate::compression::SelectionMask;
use crate::error::{dim_check, Error, Result};
use crate::linalg::{frob_sq, is_finite, is_finite_vec, norm_sq, nuclear_norm, unvec_antenna_major, vec_antenna_major, CMatrix, CVector, ZERO};
use crate::scene::SteeringDictionary;

/// Compressed data together with the operators that produced it.
#[derive(Debug, Clone)]
pub struct Problem<'a> {
    y: &'a CVector,
    mask: &'a SelectionMask,
    dict: &'a SteeringDictionary,
    /// `Phi A`, the dictionary rows that survived compression.
    compressed_dict: CMatrix,
    sampled: Vec<bool>,
}

impl<'a> Problem<'a> {
    pub fn new(y: &'a CVector, mask: &'a SelectionMask, dict: &'a SteeringDictionary) -> Result<Self> {
        dim_check(y.len() == mask.len(), || format!("{} measurements for a mask keeping {}", y.len(), mask.len()))?;
        dim_check(mask.total() == dict.num_rows(), || {
            format!("mask covers {} samples, dictionary has {} rows", mask.total(), dict.num_rows())
        })?;
        let a = dict.matrix();
        let compressed_dict = CMatrix::from_fn(mask.len(), a.ncols(), |k, q| a[(mask.indices()[k], q)]);
        Ok(Self { y, mask, dict, compressed_dict, sampled: mask.membership() })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.dict.num_antennas(), self.dict.num_freqs(), self.dict.num_cells())
    }

    pub fn measurements(&self) -> &CVector {
        self.y
    }

    pub fn mask(&self) -> &SelectionMask {
        self.mask
    }

    pub fn compressed_dictionary(&self) -> &CMatrix {
        &self.compressed_dict
    }

    fn compress(&self, l: &CMatrix) -> CVector {
        let n = l.ncols();
        CVector::from_iterator(self.mask.len(), self.mask.indices().iter().map(|&k| l[(k / n, k % n)]))
    }

    /// `Phi vec(L) + Phi A s - y`.
    pub fn misfit(&self, l: &CMatrix, s: &CVector) -> CVector {
        self.compress(l) + &self.compressed_dict * s - self.y
    }

    fn expand(&self, v: &CVector) -> CMatrix {
        let (m, n, _) = self.dims();
        let full = self.mask.adjoint(v).expect("compressed vector length");
        unvec_antenna_major(&full, m, n).expect("mask total equals M*N")
    }
}

/// `||Phi vec(L) + Phi A s - y||^2`.
pub fn residual(l: &CMatrix, s: &CVector, problem: &Problem<'_>) -> Result<f64> {
    let (m, n, q) = problem.dims();
    dim_check(l.shape() == (m, n), || format!("L is {:?}, expected ({m}, {n})", l.shape()))?;
    dim_check(s.len() == q, || format!("s has length {}, expected {q}", s.len()))?;
    Ok(norm_sq(&problem.misfit(l, s)))
}

/// Ground truth for per-iteration error tracking.
#[derive(Debug, Clone, Copy)]
pub struct GroundTruth<'a> {
    pub l: &'a CMatrix,
    pub s: &'a CVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub t: usize,
    pub residual: f64,
    /// Penalty after this iteration's update.
    pub rho: f64,
    /// `beta_L ||L||_* + beta_S ||C s||_1`, `C` the per-cell penalty scale.
    pub objective: f64,
    pub nmse_l: Option<f64>,
    pub nmse_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryResult {
    pub l_hat: CMatrix,
    pub s_hat: CVector,
    pub iterations: usize,
    pub history: Vec<IterationRecord>,
    pub weights: WeightSet,
    /// Low-rank subproblems that hit the inner iteration cap.
    pub lowrank_unconverged: usize,
    /// Sparse subproblems that hit the inner iteration cap.
    pub sparse_unconverged: usize,
}

impl RecoveryResult {
    pub fn residuals(&self) -> Vec<f64> {
        self.history.iter().map(|h| h.residual).collect()
    }
}

/// Iterates of the ADMM.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    pub l: CMatrix,
    pub s: CVector,
    pub u: CVector,
    pub rho: f64,
    pub t: usize,
    pub weights: WeightSet,
    pub l0: CMatrix,
    pub r: CMatrix,
}

/// `u + rho (Phi vec(L) + Phi A s - y)`.
pub fn update_u(state: &SolverState, problem: &Problem<'_>) -> CVector {
    &state.u + problem.misfit(&state.l, &state.s).scale(state.rho)
}

/// Stepwise driver of the recovery; [`solve`] runs it to completion.
#[derive(Debug, Clone)]
pub struct Admm<'a> {
    problem: &'a Problem<'a>,
    config: SolverConfig,
    beta_s: f64,
    /// Per-cell factor on the l1 penalty, see [`SolverConfig::column_scaled_penalty`].
    column_scale: Vec<f64>,
    spectral_norm: f64,
    lowrank: LowRankSolver,
    state: SolverState,
    lowrank_unconverged: usize,
    sparse_unconverged: usize,
    lowrank_passes: usize,
    sparse_passes: usize,
}

impl<'a> Admm<'a> {
    /// Initial point: `L = unvec(Phi^T y)`, `s = 0`, `u = 0`, identity weights.
    pub fn new(problem: &'a Problem<'a>, config: &SolverConfig, variant: Variant) -> Result<Self> {
        let config = config.for_variant(variant);
        config.validate()?;
        let (m, n, q) = problem.dims();
        let state = SolverState {
            l: problem.expand(problem.y),
            s: CVector::from_element(q, ZERO),
            u: CVector::from_element(problem.mask.len(), ZERO),
            rho: config.rho0,
            t: 0,
            weights: WeightSet::identity(m, n, q),
            l0: CMatrix::zeros(m, m),
            r: CMatrix::zeros(n, n),
        };
        let spectral_norm = spectral_norm(&problem.compressed_dict, config.power_iters, config.power_tol);
        let a = problem.dict.matrix();
        let column_scale = (0..q)
            .map(|c| if config.column_scaled_penalty { a.column(c).norm() } else { 1.0 })
            .collect();
        Ok(Self {
            problem,
            column_scale,
            beta_s: config.beta_s_for(m, n),
            lowrank: LowRankSolver::new(m, n, config.lowrank_tol, config.lowrank_max_iter),
            config,
            spectral_norm,
            state,
            lowrank_unconverged: 0,
            sparse_unconverged: 0,
            lowrank_passes: 0,
            sparse_passes: 0,
        })
    }

    /// Total inner iterations spent so far in the low-rank and sparse
    /// subproblems.
    pub fn inner_iterations(&self) -> (usize, usize) {
        (self.lowrank_passes, self.sparse_passes)
    }

    pub fn state(&self) -> &SolverState {
        &self.state
    }

    pub fn state_mut(&mut self) -> &mut SolverState {
        &mut self.state
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    /// The low-rank subproblem for the current `s`, `u`, `rho` and weights.
    pub fn lowrank_target(&self) -> CMatrix {
        let st = &self.state;
        let c = self.problem.y - &self.problem.compressed_dict * &st.s - st.u.unscale(st.rho);
        self.problem.expand(&c)
    }

    /// One low-rank solve with the current weights; stores `L`, `L0`, `R`.
    pub fn update_l(&mut self) -> LowRankUpdate {
        let target = self.lowrank_target();
        let st = &self.state;
        let p = LowRankProblem {
            target: &target,
            sampled: &self.problem.sampled,
            w1: &st.weights.w1,
            w2: &st.weights.w2,
            beta_l: self.config.beta_l,
            rho: st.rho,
        };
        let out = self.lowrank.solve(&p);
        self.lowrank_passes += out.iterations;
        if !out.converged {
            self.lowrank_unconverged += 1;
        }
        self.state.l = out.l.clone();
        self.state.l0 = out.l0.clone();
        self.state.r = out.r.clone();
        out
    }

    /// The sparse subproblem target `y - Phi vec(L) - u / rho`.
    pub fn sparse_target(&self) -> CVector {
        let st = &self.state;
        self.problem.y - self.problem.compress(&st.l) - st.u.unscale(st.rho)
    }

    /// One weighted-LASSO solve warm-started at the current `s`.
    pub fn update_s(&mut self) -> SparseUpdate {
        let target = self.sparse_target();
        let st = &self.state;
        let weights: Vec<f64> = st.weights.ws.iter().zip(&self.column_scale).map(|(w, c)| w * c).collect();
        let p = SparseProblem {
            g: &self.problem.compressed_dict,
            target: &target,
            weights: &weights,
            beta_s: self.beta_s,
            rho: st.rho,
        };
        let settings = SparseSettings {
            spectral_norm: self.spectral_norm,
            tol: self.config.sparse_tol,
            max_iter: self.config.sparse_max_iter,
        };
        let out = solve_weighted_lasso(&p, &st.s, settings);
        self.sparse_passes += out.iterations;
        if !out.converged {
            self.sparse_unconverged += 1;
        }
        self.state.s = out.s.clone();
        out
    }

    /// One full outer iteration. Returns the squared residual.
    pub fn step(&mut self) -> Result<f64> {
        let t = self.state.t + 1;
        let passes = self.config.inner_loops + 1;

        for _ in 0..passes {
            self.update_l();
            if self.config.reweighting {
                let (w1, w2) = update_weights_lr(&self.state.l0, &self.state.r, self.config.delta);
                self.state.weights.w1 = w1;
                self.state.weights.w2 = w2;
            }
        }
        if !is_finite(&self.state.l) {
            return Err(Error::NonFinite { iteration: t, stage: "low-rank update" });
        }

        for _ in 0..passes {
            self.update_s();
            if self.config.reweighting {
                // same unit-column coordinates as the penalty
                let scaled = CVector::from_fn(self.state.s.len(), |i, _| self.state.s[i] * self.column_scale[i]);
                self.state.weights.ws = update_ws(&scaled, self.config.delta);
            }
        }
        if !is_finite_vec(&self.state.s) {
            return Err(Error::NonFinite { iteration: t, stage: "sparse update" });
        }

        let misfit = self.problem.misfit(&self.state.l, &self.state.s);
        self.state.u += misfit.scale(self.state.rho);
        if !is_finite_vec(&self.state.u) {
            return Err(Error::NonFinite { iteration: t, stage: "dual update" });
        }
        self.state.rho = (self.config.rho_growth * self.state.rho).min(self.config.rho_max);
        self.state.t = t;
        Ok(norm_sq(&misfit))
    }

    /// Runs outer iterations while the residual exceeds `epsilon` and
    /// fewer than `max_outer` iterations have been made.
    pub fn run(mut self, truth: Option<GroundTruth<'_>>) -> Result<RecoveryResult> {
        let (m, n, q) = self.problem.dims();
        if let Some(gt) = truth {
            dim_check(gt.l.shape() == (m, n) && gt.s.len() == q, || "ground truth shape".to_string())?;
        }
        if norm_sq(self.problem.y) == 0.0 {
            return Ok(RecoveryResult {
                l_hat: CMatrix::zeros(m, n),
                s_hat: CVector::from_element(q, ZERO),
                iterations: 0,
                history: Vec::new(),
                weights: WeightSet::identity(m, n, q),
                lowrank_unconverged: 0,
                sparse_unconverged: 0,
            });
        }
        let truth_energy = truth.map(|gt| (frob_sq(gt.l), norm_sq(gt.s)));
        let mut history = Vec::with_capacity(self.config.max_outer);
        while self.state.t < self.config.max_outer {
            let res = self.step()?;
            let st = &self.state;
            let objective = self.config.beta_l * nuclear_norm(&st.l)
                + self.beta_s * st.s.iter().zip(&self.column_scale).map(|(z, c)| c * z.norm()).sum::<f64>();
            let (nmse_l, nmse_s) = match (truth, truth_energy) {
                (Some(gt), Some((el, es))) => (
                    (el > 0.0).then(|| frob_sq(&(&st.l - gt.l)) / el),
                    (es > 0.0).then(|| norm_sq(&(&st.s - gt.s)) / es),
                ),
                _ => (None, None),
            };
            history.push(IterationRecord { t: st.t, residual: res, rho: st.rho, objective, nmse_l, nmse_s });
            if res <= self.config.epsilon {
                break;
            }
        }
        Ok(RecoveryResult {
            iterations: self.state.t,
            l_hat: self.state.l,
            s_hat: self.state.s,
            history,
            weights: self.state.weights,
            lowrank_unconverged: self.lowrank_unconverged,
            sparse_unconverged: self.sparse_unconverged,
        })
    }
}

/// Recovers `(L, s)` from compressed data with the given variant.
pub fn solve(
    problem: &Problem<'_>,
    config: &SolverConfig,
    variant: Variant,
    truth: Option<GroundTruth<'_>>,
) -> Result<RecoveryResult> {
    Admm::new(problem, config, variant)?.run(truth)
}

/// Convenience for callers holding the full data matrix.
pub fn compress_matrix(mask: &SelectionMask, y: &CMatrix) -> Result<CVector> {
    mask.apply(&vec_antenna_major(y))
}
