//! Defect images of one radar scene: ground truth, the full-data
//! baselines and the solver variants at 30 % of the samples. Writes CSV
//! and PGM images into the directory given as argument (default
//! `out/radar_example`).

use std::path::PathBuf;

use lrpsr::harness::{run_radar_image, ExperimentKind, ExperimentSpec};

fn main() -> lrpsr::Result<()> {
    let mut spec = ExperimentSpec::new(ExperimentKind::SfcwRadar);
    spec.ratios = vec![0.3];
    spec.out_dir = std::env::args().nth(1).map_or_else(|| PathBuf::from("out/radar_example"), PathBuf::from);

    let report = run_radar_image(&spec)?;
    for o in &report.outcomes {
        println!("{:8} ratio {:.1}  TCR {:7.2} dB  top hits {}", o.method.name(), o.ratio, o.tcr_db, o.top_hits);
    }
    println!("{} image files in {}", report.images.len(), spec.out_dir.display());
    Ok(())
}
