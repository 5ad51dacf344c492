use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which flavour of the ADMM recovery to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Reweighted, one pass per ADMM sub-step.
    #[serde(rename = "lrpsr_s")]
    LrpsrS,
    /// Reweighted, six passes per ADMM sub-step.
    #[serde(rename = "lrpsr_m")]
    LrpsrM,
    /// Unweighted nuclear norm + l1 baseline.
    #[serde(rename = "lrsr")]
    Lrsr,
}

impl Variant {
    pub fn inner_loops(self) -> usize {
        match self {
            Variant::LrpsrM => 5,
            Variant::LrpsrS | Variant::Lrsr => 0,
        }
    }

    pub fn reweighting(self) -> bool {
        !matches!(self, Variant::Lrsr)
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::LrpsrS => "lrpsr_s",
            Variant::LrpsrM => "lrpsr_m",
            Variant::Lrsr => "lrsr",
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lrpsr_s" => Ok(Variant::LrpsrS),
            "lrpsr_m" => Ok(Variant::LrpsrM),
            "lrsr" => Ok(Variant::Lrsr),
            other => Err(Error::InvalidArgument(format!("unknown solver variant '{other}'"))),
        }
    }
}

/// Parameters of the ADMM recovery and of its two inner solvers.
///
/// `inner_loops` and `reweighting` are overwritten by the [`Variant`]
/// passed to [`super::solve`]; the remaining fields are shared.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverConfig {
    pub beta_l: f64,
    /// `None` resolves to `1 / sqrt(max(M, N))`.
    pub beta_s: Option<f64>,
    pub delta: f64,
    /// Scales the l1 penalty on cell `q` by the norm of dictionary column
    /// `q`, so `beta_s` refers to unit-norm columns. `W_s` is then computed
    /// from `|s_q| ||a_q||`, which puts `delta` in the same units.
    pub column_scaled_penalty: bool,
    pub rho0: f64,
    pub rho_growth: f64,
    pub rho_max: f64,
    pub epsilon: f64,
    pub max_outer: usize,
    pub inner_loops: usize,
    pub reweighting: bool,
    /// Relative KKT tolerance of the low-rank SDP splitting.
    pub lowrank_tol: f64,
    pub lowrank_max_iter: usize,
    /// Relative objective-change tolerance of the weighted LASSO.
    pub sparse_tol: f64,
    pub sparse_max_iter: usize,
    pub power_iters: usize,
    pub power_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            beta_l: 1.0,
            beta_s: None,
            delta: 20.0,
            column_scaled_penalty: true,
            rho0: 1e-2,
            rho_growth: 1.05,
            rho_max: 1e3,
            epsilon: 1e-8,
            max_outer: 200,
            inner_loops: 0,
            reweighting: true,
            lowrank_tol: 1e-6,
            lowrank_max_iter: 200,
            sparse_tol: 1e-8,
            sparse_max_iter: 500,
            power_iters: 50,
            power_tol: 1e-8,
        }
    }
}

impl SolverConfig {
    pub fn for_variant(&self, variant: Variant) -> Self {
        Self { inner_loops: variant.inner_loops(), reweighting: variant.reweighting(), ..self.clone() }
    }

    pub fn beta_s_for(&self, m: usize, n: usize) -> f64 {
        self.beta_s.unwrap_or_else(|| 1.0 / (m.max(n) as f64).sqrt())
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("beta_l", self.beta_l),
            ("delta", self.delta),
            ("rho0", self.rho0),
            ("rho_max", self.rho_max),
            ("epsilon", self.epsilon),
            ("lowrank_tol", self.lowrank_tol),
            ("sparse_tol", self.sparse_tol),
            ("power_tol", self.power_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if let Some(b) = self.beta_s {
            if !(b > 0.0 && b.is_finite()) {
                return Err(Error::Config(format!("beta_s must be positive, got {b}")));
            }
        }
        if !(self.rho_growth > 1.0) {
            return Err(Error::Config(format!("rho_growth must exceed 1, got {}", self.rho_growth)));
        }
        if self.max_outer == 0 || self.lowrank_max_iter == 0 || self.sparse_max_iter == 0 || self.power_iters == 0 {
            return Err(Error::Config("iteration caps must be at least 1".into()));
        }
        Ok(())
    }

    /// Penalty after `t` completed outer iterations.
    pub fn rho_after(&self, t: usize) -> f64 {
        let mut rho = self.rho0;
        for _ in 0..t {
            rho = (self.rho_growth * rho).min(self.rho_max);
        }
        rho
    }
}
