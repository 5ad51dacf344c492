//! Seeded Monte-Carlo experiments over methods and compression ratios,
//! with CSV and PGM output.
//!
//! Trial `i` of an experiment is generated from seed `base + i` alone, so
//! results do not depend on how trials are scheduled across workers.

mod cli;
mod output;
mod spec;

pub use cli::cli_main;
pub use output::{fmt_sig, pgm_bytes, write_csv, write_pgm};
pub use spec::{ExperimentKind, ExperimentSpec, GenericParams, Method};

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::baselines::{spatial_filter, subspace_projection};
use crate::compression::SelectionMask;
use crate::error::{Error, Result};
use crate::linalg::{unvec_antenna_major, vec_antenna_major, CMatrix, CVector};
use crate::metrics::{cap_tcr, tcr_db, DefectSupport};
use crate::random::STREAM_MASK;
use crate::scene::{
    build_dictionary, defect_response, generic_gaussian_instance, layer_response, random_layer_coefficients,
    synthesize_components, write_complex_csv, DefectScene, MeasurementSet, SteeringDictionary,
};
use crate::solver::{solve, GroundTruth, Problem, RecoveryResult};

/// Worker threads for trial-level parallelism: `WORKER_COUNT` if set,
/// otherwise the number of available cores.
pub fn worker_count() -> Result<usize> {
    match std::env::var("WORKER_COUNT") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::Config(format!("WORKER_COUNT must be a positive integer, got '{v}'"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)),
    }
}

/// Runs `f(0..n)` on a dedicated pool; results come back in index order.
fn par_trials<T, F>(n: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count()?)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| (0..n).into_par_iter().map(f).collect())
}

/// Ground truth and noisy full data of one trial.
#[derive(Debug, Clone)]
pub struct TrialData {
    pub seed: u64,
    pub dictionary: SteeringDictionary,
    pub s_true: CVector,
    pub measurements: MeasurementSet,
}

impl TrialData {
    pub fn support(&self) -> Result<DefectSupport> {
        DefectSupport::from_truth(&self.s_true)
    }
}

/// Draws the instance of the given seed. `dictionary` is reused for the
/// radar kind, whose dictionary does not depend on the seed.
pub fn make_trial(spec: &ExperimentSpec, seed: u64, radar_dict: Option<&SteeringDictionary>) -> Result<TrialData> {
    match spec.kind {
        ExperimentKind::GenericGaussian => {
            let g = &spec.generic;
            let inst = generic_gaussian_instance(g.num_antennas, g.num_freqs, g.num_cells, g.rank, spec.num_defects, seed)?;
            let d = inst.defect_matrix()?;
            let measurements = synthesize_components(&inst.l_true, &d, spec.snr_db, seed)?;
            Ok(TrialData { seed, dictionary: inst.dictionary, s_true: inst.s_true, measurements })
        }
        ExperimentKind::SfcwRadar => {
            let dictionary = match radar_dict {
                Some(d) => d.clone(),
                None => build_dictionary(&spec.radar)?,
            };
            let scene = DefectScene::random(spec.radar.num_cells(), spec.num_defects, seed)?;
            let coeffs = random_layer_coefficients(&spec.radar, spec.layer, scene.max_amplitude(), seed)?;
            let l = layer_response(&spec.radar, &coeffs)?;
            let d = defect_response(&dictionary, &scene)?;
            let measurements = synthesize_components(&l, &d, spec.snr_db, seed)?;
            Ok(TrialData { seed, dictionary, s_true: scene.sparse_vector(), measurements })
        }
    }
}

fn shared_dictionary(spec: &ExperimentSpec) -> Result<Option<SteeringDictionary>> {
    match spec.kind {
        ExperimentKind::SfcwRadar => Ok(Some(build_dictionary(&spec.radar)?)),
        ExperimentKind::GenericGaussian => Ok(None),
    }
}

/// Mask for one trial and ratio. Each ratio draws from its own stream so
/// adding a ratio to a sweep leaves the other masks unchanged.
pub fn trial_mask(spec: &ExperimentSpec, seed: u64, ratio: f64) -> Result<SelectionMask> {
    let (m, n) = spec.dims();
    if let Some(indices) = &spec.mask {
        return SelectionMask::new(m * n, indices.clone());
    }
    let stream = STREAM_MASK + 16 * (ratio * 1e6).round() as u64;
    SelectionMask::random_stream(m * n, ratio, seed, stream)
}

/// Output of one method on one trial.
#[derive(Debug, Clone)]
pub struct MethodRun {
    pub method: Method,
    /// Fraction of samples the method saw.
    pub ratio: f64,
    pub s_img: CVector,
    pub l_hat: Option<CMatrix>,
    pub mask: SelectionMask,
    pub recovery: Option<RecoveryResult>,
}

/// Runs `method` on `trial`. Baselines require `ratio == 1`.
pub fn run_method(spec: &ExperimentSpec, trial: &TrialData, method: Method, ratio: f64) -> Result<MethodRun> {
    let y = &trial.measurements.y;
    let (m, n) = y.shape();
    match method.variant() {
        None => {
            if ratio != 1.0 {
                return Err(Error::InvalidArgument(format!("{method} uses the full data set, got ratio {ratio}")));
            }
            let out = match method {
                Method::Sf => spatial_filter(y, &trial.dictionary)?,
                _ => subspace_projection(y, spec.sp_rank(), &trial.dictionary)?,
            };
            Ok(MethodRun {
                method,
                ratio,
                l_hat: Some(y - &out.d_hat),
                s_img: out.s_img,
                mask: SelectionMask::full(m * n)?,
                recovery: None,
            })
        }
        Some(variant) => {
            let mask = trial_mask(spec, trial.seed, ratio)?;
            let y_cs = mask.apply(&vec_antenna_major(y))?;
            let problem = Problem::new(&y_cs, &mask, &trial.dictionary)?;
            let truth = GroundTruth { l: &trial.measurements.l, s: &trial.s_true };
            let has_truth = trial.measurements.l.iter().any(|z| z.norm() > 0.0) && trial.s_true.iter().any(|z| z.norm() > 0.0);
            let rec = solve(&problem, &spec.solver, variant, has_truth.then_some(truth))?;
            Ok(MethodRun {
                method,
                ratio: mask.ratio(),
                s_img: rec.s_hat.clone(),
                l_hat: Some(rec.l_hat.clone()),
                mask,
                recovery: Some(rec),
            })
        }
    }
}

/// The (method, ratio) cells of a sweep: baselines once at full data,
/// then every ratio for every solver variant.
pub fn sweep_cells(spec: &ExperimentSpec) -> Vec<(Method, f64)> {
    let mut cells: Vec<(Method, f64)> = spec.methods.iter().filter(|m| m.is_baseline()).map(|&m| (m, 1.0)).collect();
    for &ratio in &spec.ratios {
        cells.extend(spec.methods.iter().filter(|m| !m.is_baseline()).map(|&m| (m, ratio)));
    }
    cells
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub ratio: f64,
    pub method: Method,
    /// Mean over trials of the capped TCR in dB.
    pub mean_tcr_db: f64,
    /// Sample standard deviation (0 for a single trial).
    pub std_tcr_db: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1 {
    pub rows: Vec<Table1Row>,
    /// Capped TCR per trial, in the order of `rows`.
    pub per_trial: Vec<Vec<f64>>,
}

impl Table1 {
    pub fn get(&self, method: Method, ratio: f64) -> Option<&Table1Row> {
        self.rows.iter().find(|r| r.method == method && (r.ratio - ratio).abs() < 1e-12)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![fmt_sig(r.ratio), r.method.to_string(), fmt_sig(r.mean_tcr_db), fmt_sig(r.std_tcr_db), r.trials.to_string()]
            })
            .collect();
        write_csv(path, &["ratio", "method", "mean_tcr_db", "std_tcr_db", "trials"], &rows)
    }
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = if xs.len() > 1 { xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
    (mean, var.sqrt())
}

/// Average TCR per (method, ratio) over `spec.trials` generic instances.
pub fn run_table1(spec: &ExperimentSpec) -> Result<Table1> {
    spec.validate()?;
    if spec.kind != ExperimentKind::GenericGaussian {
        return Err(Error::Config("table1 needs kind = \"generic_gaussian\"".into()));
    }
    let cells = sweep_cells(spec);
    let per_trial = par_trials(spec.trials, |i| {
        let trial = make_trial(spec, spec.trial_seed(i), None)?;
        let support = trial.support()?;
        cells
            .iter()
            .map(|&(method, ratio)| {
                let run = run_method(spec, &trial, method, ratio)?;
                Ok(cap_tcr(tcr_db(&run.s_img, &support)?))
            })
            .collect::<Result<Vec<f64>>>()
    })?;
    let mut columns = vec![Vec::with_capacity(spec.trials); cells.len()];
    for trial in &per_trial {
        for (c, &v) in trial.iter().enumerate() {
            columns[c].push(v);
        }
    }
    let rows = cells
        .iter()
        .zip(&columns)
        .map(|(&(method, ratio), vals)| {
            let (mean, std) = mean_std(vals);
            Table1Row { ratio, method, mean_tcr_db: mean, std_tcr_db: std, trials: vals.len() }
        })
        .collect();
    Ok(Table1 { rows, per_trial: columns })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NmseRow {
    pub method: Method,
    pub ratio: f64,
    pub t: usize,
    pub nmse_l: f64,
    pub nmse_s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NmseTraces {
    pub rows: Vec<NmseRow>,
}

impl NmseTraces {
    /// Rows of one curve, ordered by `t`.
    pub fn curve(&self, method: Method, ratio: f64) -> Vec<&NmseRow> {
        self.rows.iter().filter(|r| r.method == method && (r.ratio - ratio).abs() < 1e-12).collect()
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| vec![r.method.to_string(), fmt_sig(r.ratio), r.t.to_string(), fmt_sig(r.nmse_l), fmt_sig(r.nmse_s)])
            .collect();
        write_csv(path, &["method", "ratio", "t", "nmse_L", "nmse_s"], &rows)
    }
}

/// Per-iteration NMSE of the solver variants averaged over trials. A run
/// that stopped early contributes its final value to later iterations.
pub fn run_nmse_traces(spec: &ExperimentSpec) -> Result<NmseTraces> {
    spec.validate()?;
    let cells: Vec<(Method, f64)> = sweep_cells(spec).into_iter().filter(|(m, _)| !m.is_baseline()).collect();
    if cells.is_empty() {
        return Err(Error::Config("nmse traces need at least one solver method".into()));
    }
    let dict = shared_dictionary(spec)?;
    let traces = par_trials(spec.trials, |i| {
        let trial = make_trial(spec, spec.trial_seed(i), dict.as_ref())?;
        cells
            .iter()
            .map(|&(method, ratio)| {
                let run = run_method(spec, &trial, method, ratio)?;
                let rec = run.recovery.expect("solver methods return a recovery");
                rec.history
                    .iter()
                    .map(|h| match (h.nmse_l, h.nmse_s) {
                        (Some(l), Some(s)) => Ok((l, s)),
                        _ => Err(Error::InvalidArgument("nmse traces need nonzero ground truth".into())),
                    })
                    .collect::<Result<Vec<(f64, f64)>>>()
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut rows = Vec::new();
    for (c, &(method, ratio)) in cells.iter().enumerate() {
        let curves: Vec<&Vec<(f64, f64)>> = traces.iter().map(|t| &t[c]).filter(|h| !h.is_empty()).collect();
        let len = curves.iter().map(|h| h.len()).max().unwrap_or(0);
        for t in 0..len {
            let (mut sl, mut ss) = (0.0, 0.0);
            for h in &curves {
                let (l, s) = h[t.min(h.len() - 1)];
                sl += l;
                ss += s;
            }
            let k = curves.len() as f64;
            rows.push(NmseRow { method, ratio, t: t + 1, nmse_l: sl / k, nmse_s: ss / k });
        }
    }
    Ok(NmseTraces { rows })
}

/// Number of cells of `support` among the `support.len()` largest
/// magnitudes of `s` (ties broken by index, zero cells never count).
pub fn top_k_hits(s: &CVector, support: &DefectSupport) -> usize {
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| s[b].norm().total_cmp(&s[a].norm()).then(a.cmp(&b)));
    order.iter().take(support.len()).filter(|&&q| s[q].norm() > 0.0 && support.contains(q)).count()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadarOutcome {
    pub trial: usize,
    pub seed: u64,
    pub method: Method,
    pub ratio: f64,
    pub tcr_db: f64,
    pub top_hits: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadarReport {
    pub outcomes: Vec<RadarOutcome>,
    /// Image files written for the first trial.
    pub images: Vec<PathBuf>,
}

impl RadarReport {
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let rows: Vec<Vec<String>> = self
            .outcomes
            .iter()
            .map(|o| {
                vec![
                    o.trial.to_string(),
                    o.seed.to_string(),
                    o.method.to_string(),
                    fmt_sig(o.ratio),
                    fmt_sig(cap_tcr(o.tcr_db)),
                    o.top_hits.to_string(),
                ]
            })
            .collect();
        write_csv(path, &["trial", "seed", "method", "ratio", "tcr_db", "top_hits"], &rows)
    }
}

/// `|s|` reshaped row-major onto the image grid.
pub fn magnitude_image(s: &CVector) -> Vec<f64> {
    s.iter().map(|z| z.norm()).collect()
}

/// Writes `<stem>.csv` (`row,col,magnitude`) and `<stem>.pgm`.
pub fn write_image(dir: &Path, stem: &str, s: &CVector, rows: usize, cols: usize) -> Result<Vec<PathBuf>> {
    let mag = magnitude_image(s);
    if mag.len() != rows * cols {
        return Err(Error::Dimension(format!("{} cells for a {rows}x{cols} grid", mag.len())));
    }
    let csv_rows: Vec<Vec<String>> =
        mag.iter().enumerate().map(|(q, v)| vec![(q / cols).to_string(), (q % cols).to_string(), fmt_sig(*v)]).collect();
    let csv = dir.join(format!("{stem}.csv"));
    let pgm = dir.join(format!("{stem}.pgm"));
    write_csv(&csv, &["row", "col", "magnitude"], &csv_rows)?;
    write_pgm(&pgm, &mag, rows, cols)?;
    Ok(vec![csv, pgm])
}

fn image_stem(method: Method, ratio: f64) -> String {
    if method.is_baseline() {
        method.to_string()
    } else {
        format!("{method}_r{}", fmt_sig(ratio))
    }
}

/// Radar scene trials: TCR and top-`N_d` support hits per method and
/// ratio; images of the first trial are written when `write` is set.
pub fn radar_outcomes(spec: &ExperimentSpec, write: bool) -> Result<RadarReport> {
    spec.validate()?;
    if spec.kind != ExperimentKind::SfcwRadar {
        return Err(Error::Config("radar-image needs kind = \"sfcw_radar\"".into()));
    }
    let dict = build_dictionary(&spec.radar)?;
    let cells = sweep_cells(spec);
    let (rows, cols) = (spec.radar.grid_rows, spec.radar.grid_cols);
    let image_dir = spec.out_dir.join("images");
    let per_trial = par_trials(spec.trials, |i| {
        let trial = make_trial(spec, spec.trial_seed(i), Some(&dict))?;
        let support = trial.support()?;
        let mut images = Vec::new();
        if write && i == 0 {
            images.extend(write_image(&image_dir, "truth", &trial.s_true, rows, cols)?);
        }
        let mut outcomes = Vec::with_capacity(cells.len());
        for &(method, ratio) in &cells {
            let run = run_method(spec, &trial, method, ratio)?;
            if write && i == 0 {
                images.extend(write_image(&image_dir, &image_stem(method, ratio), &run.s_img, rows, cols)?);
            }
            outcomes.push(RadarOutcome {
                trial: i,
                seed: trial.seed,
                method,
                ratio,
                tcr_db: tcr_db(&run.s_img, &support)?,
                top_hits: top_k_hits(&run.s_img, &support),
            });
        }
        Ok((outcomes, images))
    })?;
    let mut report = RadarReport { outcomes: Vec::new(), images: Vec::new() };
    for (o, im) in per_trial {
        report.outcomes.extend(o);
        report.images.extend(im);
    }
    Ok(report)
}

/// Images plus `radar_tcr.csv` under `out_dir`.
pub fn run_radar_image(spec: &ExperimentSpec) -> Result<RadarReport> {
    let report = radar_outcomes(spec, true)?;
    report.write_csv(&spec.out_dir.join("radar_tcr.csv"))?;
    Ok(report)
}

/// Writes the per-iteration diagnostics of a recovery.
pub fn write_diagnostics(path: &Path, rec: &RecoveryResult) -> Result<()> {
    let opt = |v: Option<f64>| v.map(fmt_sig).unwrap_or_default();
    let rows: Vec<Vec<String>> = rec
        .history
        .iter()
        .map(|h| vec![h.t.to_string(), fmt_sig(h.residual), fmt_sig(h.rho), opt(h.nmse_l), opt(h.nmse_s)])
        .collect();
    write_csv(path, &["t", "residual", "rho", "nmse_L", "nmse_s"], &rows)
}

/// Reads a `re,im` CSV as written by [`MeasurementSet::write_csv`].
pub fn read_complex_csv(path: &Path) -> Result<Vec<num_complex::Complex64>> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some("re,im") {
        return Err(Error::InvalidArgument(format!("{}: expected a 're,im' header", path.display())));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, line)| {
            let bad = || Error::InvalidArgument(format!("{}: bad entry on data line {}", path.display(), i + 1));
            let (re, im) = line.split_once(',').ok_or_else(bad)?;
            Ok(num_complex::Complex64::new(re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

/// Result of [`run_single`].
#[derive(Debug, Clone)]
pub struct SingleRun {
    pub run: MethodRun,
    /// `None` when the data came from a file without ground truth.
    pub tcr_db: Option<f64>,
    pub files: Vec<PathBuf>,
}

/// One method on one instance. With `input`, the radar data matrix is read
/// from `<input>/Y.csv`; otherwise the instance of `spec.seed` is
/// synthesized and its components are written alongside the results.
pub fn run_single(spec: &ExperimentSpec, method: Method, ratio: f64, input: Option<&Path>) -> Result<SingleRun> {
    spec.validate()?;
    let out = &spec.out_dir;
    std::fs::create_dir_all(out)?;
    let mut files = Vec::new();
    let (m, n) = spec.dims();
    let (trial, known_truth) = match input {
        Some(dir) => {
            if spec.kind != ExperimentKind::SfcwRadar {
                return Err(Error::Config("reading data from files needs kind = \"sfcw_radar\"".into()));
            }
            let y = unvec_antenna_major(&CVector::from_vec(read_complex_csv(&dir.join("Y.csv"))?), m, n)?;
            let zero = CMatrix::zeros(m, n);
            let trial = TrialData {
                seed: spec.seed,
                dictionary: build_dictionary(&spec.radar)?,
                s_true: CVector::zeros(spec.num_cells()),
                measurements: MeasurementSet { l: zero.clone(), d: zero.clone(), z: zero, y, snr_db: f64::NAN },
            };
            (trial, false)
        }
        None => {
            let trial = make_trial(spec, spec.seed, None)?;
            trial.measurements.write_csv(out)?;
            files.extend(["L", "D", "Z", "Y"].iter().map(|s| out.join(format!("{s}.csv"))));
            (trial, true)
        }
    };
    let ratio = if method.is_baseline() { 1.0 } else { ratio };
    let run = run_method(spec, &trial, method, ratio)?;

    let mask_rows: Vec<Vec<String>> = run.mask.indices().iter().map(|i| vec![i.to_string()]).collect();
    write_csv(&out.join("mask.csv"), &["index"], &mask_rows)?;
    files.push(out.join("mask.csv"));
    let s_path = out.join("s_hat.csv");
    let mut f = std::io::BufWriter::new(std::fs::File::create(&s_path)?);
    write_complex_csv(&mut f, run.s_img.iter().copied())?;
    std::io::Write::flush(&mut f)?;
    files.push(s_path);
    if let Some(l) = &run.l_hat {
        let l_path = out.join("L_hat.csv");
        let mut f = std::io::BufWriter::new(std::fs::File::create(&l_path)?);
        write_complex_csv(&mut f, vec_antenna_major(l).iter().copied())?;
        std::io::Write::flush(&mut f)?;
        files.push(l_path);
    }
    if let Some(rec) = &run.recovery {
        write_diagnostics(&out.join("diagnostics.csv"), rec)?;
        files.push(out.join("diagnostics.csv"));
    }
    if spec.kind == ExperimentKind::SfcwRadar {
        files.extend(write_image(out, "image", &run.s_img, spec.radar.grid_rows, spec.radar.grid_cols)?);
    }
    let tcr_db = if known_truth { Some(tcr_db(&run.s_img, &trial.support()?)?) } else { None };
    Ok(SingleRun { run, tcr_db, files })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn tiny_generic() -> ExperimentSpec {
        let mut spec = ExperimentSpec::new(ExperimentKind::GenericGaussian);
        spec.generic = GenericParams { num_antennas: 4, num_freqs: 5, num_cells: 12, rank: 1 };
        spec.num_defects = 2;
        spec.sp_rank = Some(1);
        spec.ratios = vec![0.5, 1.0];
        spec.trials = 2;
        spec.solver.max_outer = 20;
        spec
    }

    #[test]
    fn sweep_layout() {
        let spec = ExperimentSpec::new(ExperimentKind::GenericGaussian);
        let cells = sweep_cells(&spec);
        assert_eq!(cells.len(), 11);
        assert_eq!(cells[0], (Method::Sp, 1.0));
        assert_eq!(cells[1], (Method::Sf, 1.0));
        assert_eq!(cells[2], (Method::Lrsr, 0.3));
    }

    #[test]
    fn baselines_refuse_compressed_data() {
        let spec = tiny_generic();
        let trial = make_trial(&spec, 0, None).unwrap();
        assert!(run_method(&spec, &trial, Method::Sf, 0.5).is_err());
        assert!(run_method(&spec, &trial, Method::Sp, 1.0).is_ok());
    }

    #[test]
    fn masks_depend_on_seed_and_ratio_only() {
        let spec = tiny_generic();
        let a = trial_mask(&spec, 3, 0.5).unwrap();
        assert_eq!(a, trial_mask(&spec, 3, 0.5).unwrap());
        assert_eq!(a.len(), 10);
        assert_ne!(a, trial_mask(&spec, 4, 0.5).unwrap());
        let fixed = ExperimentSpec { mask: Some(vec![0, 2, 4]), ..spec };
        assert_eq!(trial_mask(&fixed, 3, 0.5).unwrap().indices(), &[0, 2, 4]);
    }

    #[test]
    fn table1_small_run() {
        let spec = tiny_generic();
        let t = run_table1(&spec).unwrap();
        assert_eq!(t.rows.len(), 2 + 2 * 3);
        assert!(t.rows.iter().all(|r| r.trials == 2 && r.mean_tcr_db.is_finite()));
        assert!(t.get(Method::LrpsrM, 0.5).is_some());
    }

    #[test]
    fn nmse_traces_are_padded() {
        let mut spec = tiny_generic();
        spec.methods = vec![Method::LrpsrS];
        spec.ratios = vec![1.0];
        let traces = run_nmse_traces(&spec).unwrap();
        let curve = traces.curve(Method::LrpsrS, 1.0);
        assert!(!curve.is_empty());
        assert!(curve.iter().enumerate().all(|(i, r)| r.t == i + 1));
    }

    #[test]
    fn top_hits_counting() {
        let support = DefectSupport::new(vec![1, 3], 5).unwrap();
        let c = |v: f64| Complex64::new(v, 0.0);
        let s = CVector::from_vec(vec![c(0.0), c(5.0), c(4.0), c(1.0), c(0.0)]);
        assert_eq!(top_k_hits(&s, &support), 1);
        let s = CVector::from_vec(vec![c(0.0), c(5.0), c(0.0), c(4.0), c(0.0)]);
        assert_eq!(top_k_hits(&s, &support), 2);
        assert_eq!(top_k_hits(&CVector::zeros(5), &support), 0);
    }

    #[test]
    fn complex_csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.csv");
        let vals = vec![Complex64::new(1.5, -2.0), Complex64::new(1e-300, 3.25e10)];
        let mut f = std::fs::File::create(&path).unwrap();
        write_complex_csv(&mut f, vals.iter().copied()).unwrap();
        assert_eq!(read_complex_csv(&path).unwrap(), vals);
    }
}
