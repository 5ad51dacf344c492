//! Compressive low-rank plus sparse demixing for MIMO SFCW radar defect
//! detection.
//!
//! The crate is organised around the processing chain:
//!
//! - [`scene`] synthesizes radar (or generic Gaussian) measurement sets,
//! - [`compression`] subsamples antenna/frequency pairs,
//! - [`solver`] recovers the low-rank clutter and the sparse defect image
//!   with a doubly reweighted (nuclear norm + weighted l1) ADMM,
//! - [`baselines`] holds spatial filtering, subspace projection and
//!   back-projection imaging,
//! - [`metrics`] scores the results (TCR, NMSE, SNR),
//! - [`harness`] runs seeded Monte-Carlo campaigns and the command line.
//!
//! ```no_run
//! use lrpsr::prelude::*;
//!
//! let inst = generic_gaussian_instance(10, 20, 256, 2, 4, 7)?;
//! let meas = synthesize_components(&inst.l_true, &inst.defect_matrix()?, 20.0, 7)?;
//! let mask = SelectionMask::random(200, 0.5, 7)?;
//! let y = mask.apply(&vec_antenna_major(&meas.y))?;
//! let cfg = SolverConfig::default();
//! let out = solve(&Problem::new(&y, &mask, &inst.dictionary)?, &cfg, Variant::LrpsrM, None)?;
//! println!("{} iterations", out.iterations);
//! # Ok::<(), lrpsr::Error>(())
//! ```

pub mod baselines;
pub mod compression;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod metrics;
pub mod random;
pub mod scene;
pub mod solver;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::baselines::{back_projection, spatial_filter, subspace_projection, ClutterRemovalOutput};
    pub use crate::compression::SelectionMask;
    pub use crate::error::{Error, Result};
    pub use crate::linalg::{unvec_antenna_major, vec_antenna_major, CMatrix, CVector};
    pub use crate::metrics::{nmse_lowrank, nmse_sparse, snr_db, tcr_db, DefectSupport};
    pub use crate::scene::{
        build_dictionary, build_layer_delays, defect_response, frequency_grid, generic_gaussian_instance,
        layer_response, synthesize, synthesize_components, DefectScene, GenericInstance, LayerCoefficients,
        MeasurementSet, RadarConfig, SteeringDictionary,
    };
    pub use crate::solver::{solve, GroundTruth, Problem, RecoveryResult, SolverConfig, Variant};
}
