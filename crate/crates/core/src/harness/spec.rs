use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scene::{LayerStrength, RadarConfig};
use crate::solver::{SolverConfig, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    GenericGaussian,
    SfcwRadar,
}

/// A clutter-reduction method: one of the two full-data baselines or a
/// solver variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "sp")]
    Sp,
    #[serde(rename = "sf")]
    Sf,
    #[serde(rename = "lrsr")]
    Lrsr,
    #[serde(rename = "lrpsr_m")]
    LrpsrM,
    #[serde(rename = "lrpsr_s")]
    LrpsrS,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Sp, Method::Sf, Method::Lrsr, Method::LrpsrM, Method::LrpsrS];

    pub fn variant(self) -> Option<Variant> {
        match self {
            Method::Sp | Method::Sf => None,
            Method::Lrsr => Some(Variant::Lrsr),
            Method::LrpsrM => Some(Variant::LrpsrM),
            Method::LrpsrS => Some(Variant::LrpsrS),
        }
    }

    /// SF and SP always see the full data matrix.
    pub fn is_baseline(self) -> bool {
        self.variant().is_none()
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Sp => "sp",
            Method::Sf => "sf",
            Method::Lrsr => "lrsr",
            Method::LrpsrM => "lrpsr_m",
            Method::LrpsrS => "lrpsr_s",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Method::ALL
            .into_iter()
            .find(|m| m.name() == lower)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method '{s}' (expected sp, sf, lrsr, lrpsr_m or lrpsr_s)")))
    }
}

/// Dimensions of the generic Gaussian model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GenericParams {
    pub num_antennas: usize,
    pub num_freqs: usize,
    pub num_cells: usize,
    pub rank: usize,
}

impl Default for GenericParams {
    fn default() -> Self {
        Self { num_antennas: 10, num_freqs: 20, num_cells: 256, rank: 2 }
    }
}

/// One experiment as read from a TOML file.
///
/// ```toml
/// kind = "generic_gaussian"
/// ratios = [0.3, 0.4, 0.5]
/// methods = ["sp", "sf", "lrsr", "lrpsr_m", "lrpsr_s"]
/// trials = 100
///
/// [generic]
/// num_antennas = 10
///
/// [solver]
/// max_outer = 200
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    #[serde(default = "default_defects")]
    pub num_defects: usize,
    /// Use `inf` for noiseless data.
    #[serde(default = "default_snr")]
    pub snr_db: f64,
    #[serde(default = "default_ratios")]
    pub ratios: Vec<f64>,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    /// Clutter rank removed by SP; defaults to the generic rank, or 1 for
    /// the radar scene whose slab echoes are broadside.
    #[serde(default)]
    pub sp_rank: Option<usize>,
    /// Fixed sample positions (antenna-major indices) used by `solve`
    /// instead of a random mask.
    #[serde(default)]
    pub mask: Option<Vec<usize>>,
    #[serde(default)]
    pub generic: GenericParams,
    #[serde(default)]
    pub radar: RadarConfig,
    #[serde(default)]
    pub layer: LayerStrength,
    #[serde(default)]
    pub solver: SolverConfig,
}

fn default_defects() -> usize {
    4
}

fn default_snr() -> f64 {
    20.0
}

fn default_ratios() -> Vec<f64> {
    vec![0.3, 0.4, 0.5]
}

fn default_methods() -> Vec<Method> {
    Method::ALL.to_vec()
}

fn default_trials() -> usize {
    1
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

impl ExperimentSpec {
    pub fn new(kind: ExperimentKind) -> Self {
        Self {
            kind,
            num_defects: default_defects(),
            snr_db: default_snr(),
            ratios: default_ratios(),
            methods: default_methods(),
            trials: default_trials(),
            seed: 0,
            out_dir: default_out_dir(),
            sp_rank: None,
            mask: None,
            generic: GenericParams::default(),
            radar: RadarConfig::default(),
            layer: LayerStrength::default(),
            solver: SolverConfig::default(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.ratios.is_empty() {
            return Err(Error::Config("ratios must not be empty".into()));
        }
        if let Some(r) = self.ratios.iter().find(|r| !(**r > 0.0 && **r <= 1.0)) {
            return Err(Error::Config(format!("ratio {r} not in (0, 1]")));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("methods must not be empty".into()));
        }
        if self.snr_db.is_nan() || self.snr_db == f64::NEG_INFINITY {
            return Err(Error::Config(format!("snr_db = {}", self.snr_db)));
        }
        if self.num_defects == 0 || self.num_defects >= self.num_cells() {
            return Err(Error::Config(format!("num_defects must lie in 1..{}", self.num_cells())));
        }
        let (m, n) = self.dims();
        if self.methods.contains(&Method::Sp) {
            let r = self.sp_rank();
            if r == 0 || r >= m.min(n) {
                return Err(Error::Config(format!("sp_rank {r} must lie in 1..{}", m.min(n))));
            }
        }
        if self.methods.contains(&Method::Sf) && m < 2 {
            return Err(Error::Config("sf needs at least two antennas".into()));
        }
        match self.kind {
            ExperimentKind::GenericGaussian => {
                let g = &self.generic;
                if m == 0 || n == 0 || g.num_cells == 0 {
                    return Err(Error::Config("generic dimensions must be positive".into()));
                }
                if g.rank > m.min(n) {
                    return Err(Error::Config(format!("rank {} exceeds min({m}, {n})", g.rank)));
                }
            }
            ExperimentKind::SfcwRadar => self.radar.validate()?,
        }
        self.solver.validate()
    }

    /// `(M, N)` of the selected model.
    pub fn dims(&self) -> (usize, usize) {
        match self.kind {
            ExperimentKind::GenericGaussian => (self.generic.num_antennas, self.generic.num_freqs),
            ExperimentKind::SfcwRadar => (self.radar.num_antennas, self.radar.num_freqs),
        }
    }

    pub fn num_cells(&self) -> usize {
        match self.kind {
            ExperimentKind::GenericGaussian => self.generic.num_cells,
            ExperimentKind::SfcwRadar => self.radar.num_cells(),
        }
    }

    pub fn sp_rank(&self) -> usize {
        self.sp_rank.unwrap_or(match self.kind {
            ExperimentKind::GenericGaussian => self.generic.rank,
            ExperimentKind::SfcwRadar => 1,
        })
    }

    /// Seed of trial `i`.
    pub fn trial_seed(&self, i: usize) -> u64 {
        self.seed.wrapping_add(i as u64)
    }
}
