//! Full-data clutter suppression baselines and matched-filter imaging.

use num_complex::Complex64;

use crate::error::{dim_check, Error, Result};
use crate::linalg::{vec_antenna_major, CMatrix, CVector};
use crate::scene::SteeringDictionary;

#[derive(Debug, Clone, PartialEq)]
pub struct ClutterRemovalOutput {
    /// Clutter-suppressed data, `M x N`.
    pub d_hat: CMatrix,
    /// Back-projected grid image, length `Q`.
    pub s_img: CVector,
}

/// `(1 / MN) A^H vec(D)`.
pub fn back_projection(d_hat: &CMatrix, dict: &SteeringDictionary) -> Result<CVector> {
    dim_check(d_hat.shape() == (dict.num_antennas(), dict.num_freqs()), || {
        format!("data is {:?}, dictionary expects ({}, {})", d_hat.shape(), dict.num_antennas(), dict.num_freqs())
    })?;
    let v = vec_antenna_major(d_hat);
    let scale = 1.0 / dict.num_rows() as f64;
    Ok((dict.matrix().adjoint() * v).scale(scale))
}

/// Removes the across-antenna mean at every frequency.
pub fn spatial_filter(y: &CMatrix, dict: &SteeringDictionary) -> Result<ClutterRemovalOutput> {
    let (m, n) = y.shape();
    if m < 2 {
        return Err(Error::InvalidArgument("spatial filtering needs at least two antennas".into()));
    }
    let mut d_hat = y.clone();
    for j in 0..n {
        let mean = y.column(j).iter().sum::<Complex64>() / m as f64;
        for i in 0..m {
            d_hat[(i, j)] -= mean;
        }
    }
    let s_img = back_projection(&d_hat, dict)?;
    Ok(ClutterRemovalOutput { d_hat, s_img })
}

/// Discards the `rank` dominant singular triplets of `Y`.
pub fn subspace_projection(y: &CMatrix, rank: usize, dict: &SteeringDictionary) -> Result<ClutterRemovalOutput> {
    let (m, n) = y.shape();
    if rank == 0 || rank >= m.min(n) {
        return Err(Error::InvalidArgument(format!("subspace rank {rank} must lie in 1..{}", m.min(n))));
    }
    let svd = y.clone().svd(true, true);
    let u = svd.u.as_ref().expect("requested U");
    let v_t = svd.v_t.as_ref().expect("requested V^H");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let mut d_hat = CMatrix::zeros(m, n);
    for &i in &order[rank..] {
        let sigma = Complex64::new(svd.singular_values[i], 0.0);
        d_hat += (u.column(i) * sigma) * v_t.row(i);
    }
    let s_img = back_projection(&d_hat, dict)?;
    Ok(ClutterRemovalOutput { d_hat, s_img })
}
