//! A short Monte-Carlo run of the TCR table on the generic model.
//! Usage: `table1 [trials] [out.csv]`.

use std::path::PathBuf;

use lrpsr::harness::{fmt_sig, run_table1, ExperimentKind, ExperimentSpec, Method};

fn main() -> lrpsr::Result<()> {
    let mut args = std::env::args().skip(1);
    let mut spec = ExperimentSpec::new(ExperimentKind::GenericGaussian);
    spec.trials = args.next().map_or(Ok(3), |s| s.parse()).map_err(|e| lrpsr::Error::InvalidArgument(format!("trials: {e}")))?;
    spec.methods = vec![Method::Lrsr, Method::LrpsrS, Method::LrpsrM];
    spec.solver.max_outer = 200;

    let table = run_table1(&spec)?;
    println!("ratio  method    mean TCR dB  std");
    for row in &table.rows {
        println!("{:<6} {:<9} {:>11} {:>6}", fmt_sig(row.ratio), row.method, fmt_sig(row.mean_tcr_db), fmt_sig(row.std_tcr_db));
    }
    if let Some(path) = args.next().map(PathBuf::from) {
        table.write_csv(&path)?;
    }
    Ok(())
}
