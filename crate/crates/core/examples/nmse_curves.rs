//! Average per-iteration NMSE of the clutter and defect estimates.

use lrpsr::harness::{run_nmse_traces, ExperimentKind, ExperimentSpec, GenericParams, Method};

fn main() -> lrpsr::Result<()> {
    let mut spec = ExperimentSpec::new(ExperimentKind::GenericGaussian);
    spec.generic = GenericParams { num_antennas: 10, num_freqs: 10, ..GenericParams::default() };
    spec.snr_db = 30.0;
    spec.trials = 2;
    spec.ratios = vec![0.5];
    spec.methods = vec![Method::LrpsrS, Method::LrpsrM];
    spec.solver.max_outer = 60;

    let traces = run_nmse_traces(&spec)?;
    for method in &spec.methods {
        let curve = traces.curve(*method, 0.5);
        println!("{method}");
        for row in curve.iter().filter(|r| r.t == 1 || r.t % 10 == 0) {
            println!("  t {:3}  nmse_L {:.3e}  nmse_s {:.3e}", row.t, row.nmse_l, row.nmse_s);
        }
    }
    Ok(())
}
