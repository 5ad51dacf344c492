//! Full-data clutter suppression on the radar scene: raw back-projection,
//! spatial filtering and subspace projection.

use lrpsr::harness::{make_trial, top_k_hits, ExperimentKind, ExperimentSpec};
use lrpsr::metrics::cap_tcr;
use lrpsr::prelude::*;

fn main() -> Result<()> {
    let spec = ExperimentSpec::new(ExperimentKind::SfcwRadar);
    let dict = build_dictionary(&spec.radar)?;
    let trial = make_trial(&spec, 11, Some(&dict))?;
    let support = trial.support()?;
    let y = &trial.measurements.y;

    let raw = back_projection(y, &dict)?;
    let sf = spatial_filter(y, &dict)?;
    let sp = subspace_projection(y, spec.sp_rank(), &dict)?;
    for (name, img) in [("none", &raw), ("sf", &sf.s_img), ("sp", &sp.s_img)] {
        println!(
            "{name:5} TCR {:7.2} dB  true cells in top {}: {}",
            cap_tcr(tcr_db(img, &support)?),
            support.len(),
            top_k_hits(img, &support)
        );
    }
    Ok(())
}
