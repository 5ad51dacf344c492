//! Recovers clutter and defects from half of the samples of a generic
//! instance with each solver variant.

use lrpsr::metrics::cap_tcr;
use lrpsr::prelude::*;

fn main() -> Result<()> {
    let inst = generic_gaussian_instance(10, 20, 256, 2, 4, 5)?;
    let meas = synthesize_components(&inst.l_true, &inst.defect_matrix()?, 20.0, 5)?;
    let mask = SelectionMask::random(200, 0.5, 5)?;
    let y = mask.apply(&vec_antenna_major(&meas.y))?;
    let problem = Problem::new(&y, &mask, &inst.dictionary)?;
    let support = DefectSupport::new(inst.support.clone(), 256)?;
    let truth = GroundTruth { l: &inst.l_true, s: &inst.s_true };

    println!("{:8} {:>6} {:>10} {:>10} {:>9}", "variant", "iters", "nmse_L", "nmse_s", "TCR dB");
    for variant in [Variant::Lrsr, Variant::LrpsrS, Variant::LrpsrM] {
        let out = solve(&problem, &SolverConfig::default(), variant, Some(truth))?;
        println!(
            "{:8} {:>6} {:>10.3e} {:>10.3e} {:>9.2}",
            variant.name(),
            out.iterations,
            nmse_lowrank(&out.l_hat, &inst.l_true)?,
            nmse_sparse(&out.s_hat, &inst.s_true)?,
            cap_tcr(tcr_db(&out.s_hat, &support)?)
        );
    }
    Ok(())
}
