//! Draws a generic Gaussian low-rank plus sparse instance and checks the
//! noise calibration.

use lrpsr::linalg::numerical_rank;
use lrpsr::prelude::*;

fn main() -> Result<()> {
    let inst = generic_gaussian_instance(10, 20, 256, 2, 4, 1)?;
    let d = inst.defect_matrix()?;
    let meas = synthesize_components(&inst.l_true, &d, 20.0, 1)?;

    println!("clutter rank     {}", numerical_rank(&meas.l, 1e-10));
    println!("defect cells     {:?}", inst.support);
    println!("requested SNR    {} dB", meas.snr_db);
    println!("achieved SNR     {:.9} dB", snr_db(&meas.l, &meas.d, &meas.z)?);
    Ok(())
}
