use std::path::Path;
use std::process::{Command, Output};

fn lrpsr(args: &[&str], workers: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrpsr")).args(args).env("WORKER_COUNT", workers).output().expect("binary runs")
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("exp.toml");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const SMALL_GENERIC: &str = r#"
kind = "generic_gaussian"
ratios = [0.5]
methods = ["sf", "lrsr", "lrpsr_s"]
trials = 2

[generic]
num_antennas = 4
num_freqs = 6
num_cells = 16
rank = 1

[solver]
max_outer = 40
"#;

#[test]
fn usage_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.toml");
    let out = lrpsr(&["table1", "--config", missing.to_str().unwrap()], "1");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not found"));

    assert_eq!(lrpsr(&["table1"], "1").status.code(), Some(2));
    assert_eq!(lrpsr(&["frobnicate"], "1").status.code(), Some(2));
    let cfg = write_config(dir.path(), SMALL_GENERIC);
    assert_eq!(lrpsr(&["nmse", "--config", &cfg, "--method", "bogus"], "1").status.code(), Some(2));
    assert_eq!(lrpsr(&["--help"], "1").status.code(), Some(0));
}

#[test]
fn unknown_config_key_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &format!("{SMALL_GENERIC}\nwarp_factor = 9\n"));
    let out = lrpsr(&["table1", "--config", &cfg], "1");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warp_factor"));
}

#[test]
fn table1_csv_is_reproducible_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL_GENERIC);
    let mut csvs = Vec::new();
    for (i, workers) in ["1", "3", "1"].iter().enumerate() {
        let out_dir = dir.path().join(format!("run{i}"));
        let out = lrpsr(&["table1", "--config", &cfg, "--out-dir", out_dir.to_str().unwrap()], workers);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        csvs.push(std::fs::read(out_dir.join("table1.csv")).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
    assert_eq!(csvs[0], csvs[2]);
    let text = String::from_utf8(csvs.swap_remove(0)).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("ratio,method,mean_tcr_db,std_tcr_db,trials"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn solve_writes_outputs_and_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL_GENERIC);
    let out_dir = dir.path().join("solve");
    let out = lrpsr(
        &["solve", "--config", &cfg, "--out-dir", out_dir.to_str().unwrap(), "--method", "lrpsr_m", "--ratio", "0.5", "--seed", "4"],
        "1",
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["Y.csv", "L.csv", "D.csv", "Z.csv", "mask.csv", "s_hat.csv", "L_hat.csv", "diagnostics.csv"] {
        assert!(out_dir.join(f).is_file(), "{f} missing");
    }
    let diag = std::fs::read_to_string(out_dir.join("diagnostics.csv")).unwrap();
    assert_eq!(diag.lines().next(), Some("t,residual,rho,nmse_L,nmse_s"));
    assert_eq!(diag.lines().count(), 41);
    let mask = std::fs::read_to_string(out_dir.join("mask.csv")).unwrap();
    assert_eq!(mask.lines().count(), 1 + 12);
}

#[test]
fn radar_image_writes_pgm() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"
kind = "sfcw_radar"
ratios = [0.3]
methods = ["sf", "lrpsr_s"]

[radar]
num_antennas = 6
num_freqs = 8
grid_rows = 4
grid_cols = 5

[solver]
max_outer = 30
"#,
    );
    let out_dir = dir.path().join("radar");
    let out = lrpsr(&["radar-image", "--config", &cfg, "--out-dir", out_dir.to_str().unwrap()], "2");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let pgm = std::fs::read(out_dir.join("images/truth.pgm")).unwrap();
    let header = b"P5\n5 4\n255\n";
    assert_eq!(&pgm[..header.len()], header);
    assert_eq!(pgm.len(), header.len() + 20);
    let report = std::fs::read_to_string(out_dir.join("radar_tcr.csv")).unwrap();
    assert_eq!(report.lines().next(), Some("trial,seed,method,ratio,tcr_db,top_hits"));
}
