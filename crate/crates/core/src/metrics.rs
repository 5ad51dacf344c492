//! Target-to-clutter ratio, normalized errors and SNR.

use crate::error::{dim_check, Error, Result};
use crate::linalg::{frob_sq, norm_sq, CMatrix, CVector};

/// Finite stand-in for an infinite TCR in averages and CSV output.
pub const TCR_CAP_DB: f64 = 300.0;

/// True defect cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectSupport {
    cells: Vec<usize>,
    num_cells: usize,
}

impl DefectSupport {
    pub fn new(mut cells: Vec<usize>, num_cells: usize) -> Result<Self> {
        cells.sort_unstable();
        cells.dedup();
        if cells.iter().any(|&c| c >= num_cells) {
            return Err(Error::InvalidArgument(format!("support index outside 0..{num_cells}")));
        }
        if cells.is_empty() || cells.len() >= num_cells {
            return Err(Error::InvalidArgument(format!(
                "TCR needs 1 <= N_d < Q, got N_d = {} with Q = {num_cells}",
                cells.len()
            )));
        }
        Ok(Self { cells, num_cells })
    }

    /// Support of the non-zero entries of `s_true`.
    pub fn from_truth(s_true: &CVector) -> Result<Self> {
        let cells = s_true.iter().enumerate().filter(|(_, z)| z.norm() != 0.0).map(|(i, _)| i).collect();
        Self::new(cells, s_true.len())
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn num_cells(&self) -> usize {
        self.num_cells
    }

    pub fn contains(&self, q: usize) -> bool {
        self.cells.binary_search(&q).is_ok()
    }
}

/// `10 log10( (Q - N_d)/N_d * sum_{A_d} |s|^2 / sum_{not A_d} |s|^2 )`.
/// Zero off-support energy gives `+inf`, except for an all-zero image,
/// which detects nothing and scores `-inf`.
pub fn tcr_db(s: &CVector, support: &DefectSupport) -> Result<f64> {
    dim_check(s.len() == support.num_cells, || format!("image has {} cells, support expects {}", s.len(), support.num_cells))?;
    // normalize first so tiny images do not underflow to a zero clutter sum
    let peak = s.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let (mut target, mut clutter) = (0.0, 0.0);
    if peak > 0.0 {
        for (q, z) in s.iter().enumerate() {
            let e = (z / peak).norm_sqr();
            if support.contains(q) {
                target += e;
            } else {
                clutter += e;
            }
        }
    }
    if clutter == 0.0 {
        return Ok(if target > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY });
    }
    let nd = support.len() as f64;
    let ratio = (support.num_cells as f64 - nd) / nd * target / clutter;
    Ok(10.0 * ratio.log10())
}

/// Clamps a TCR to `[-TCR_CAP_DB, TCR_CAP_DB]`.
pub fn cap_tcr(db: f64) -> f64 {
    db.clamp(-TCR_CAP_DB, TCR_CAP_DB)
}

/// `||L_hat - L_T||_F^2 / ||L_T||_F^2`.
pub fn nmse_lowrank(l_hat: &CMatrix, l_true: &CMatrix) -> Result<f64> {
    dim_check(l_hat.shape() == l_true.shape(), || format!("{:?} vs {:?}", l_hat.shape(), l_true.shape()))?;
    let denom = frob_sq(l_true);
    if denom == 0.0 {
        return Err(Error::InvalidArgument("NMSE against an all-zero ground truth".into()));
    }
    Ok(frob_sq(&(l_hat - l_true)) / denom)
}

/// `||s_hat - s_T||^2 / ||s_T||^2`.
pub fn nmse_sparse(s_hat: &CVector, s_true: &CVector) -> Result<f64> {
    dim_check(s_hat.len() == s_true.len(), || format!("{} vs {}", s_hat.len(), s_true.len()))?;
    let denom = norm_sq(s_true);
    if denom == 0.0 {
        return Err(Error::InvalidArgument("NMSE against an all-zero ground truth".into()));
    }
    Ok(norm_sq(&(s_hat - s_true)) / denom)
}

/// `10 log10(||L + D||_F^2 / ||Z||_F^2)`.
pub fn snr_db(l: &CMatrix, d: &CMatrix, z: &CMatrix) -> Result<f64> {
    dim_check(l.shape() == d.shape() && d.shape() == z.shape(), || "L, D and Z must share a shape".to_string())?;
    let noise = frob_sq(z);
    if noise == 0.0 {
        return Err(Error::InvalidArgument("SNR is unbounded without noise".into()));
    }
    Ok(10.0 * (frob_sq(&(l + d)) / noise).log10())
}
