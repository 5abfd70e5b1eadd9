use std::path::Path;
use std::process::{Command, Output};

use cpforce::output::{read_csv_records, SweepRecord};
use cpforce::{StaticRecord, SweepDocument};
use cpforce_core::{dynamic_force, AtomWallConfig, GuardBand};

fn cpforce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpforce"))
        .args(args)
        .output()
        .expect("spawn cpforce")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn force_vanishes_at_zero_time() {
    let out = cpforce(&["force", "--d", "10", "--t", "0", "--k0", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r: SweepRecord = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(r.force, 0.0);
    assert_eq!(r.regime, "pre");
}

#[test]
fn back_reaction_time_exits_singular() {
    let out = cpforce(&["force", "--d", "10", "--t", "20", "--k0", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("t = 2d/c"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn late_force_matches_static_subcommand() {
    let late = cpforce(&["force", "--d", "10", "--t", "1e6", "--k0", "1"]);
    let stat = cpforce(&["static", "--d", "10", "--k0", "1"]);
    assert!(late.status.success() && stat.status.success());
    let late: SweepRecord = serde_json::from_str(&stdout(&late)).unwrap();
    let stat: StaticRecord = serde_json::from_str(&stdout(&stat)).unwrap();
    assert_eq!(late.regime, "post");
    assert!(((late.force - stat.force) / stat.force).abs() < 5e-5);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(cpforce(&["force", "--d", "10"]).status.code(), Some(1));
    assert_eq!(
        cpforce(&["force", "--d", "ten", "--t", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(cpforce(&["figure", "--which", "3"]).status.code(), Some(1));
    assert_eq!(
        cpforce(&["force", "--d", "-1", "--t", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        cpforce(&["sweep", "--d", "10", "--t-min", "5", "--t-max", "1"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn unwritable_output_exits_one() {
    let out = cpforce(&[
        "figure",
        "--which",
        "1",
        "--out",
        "/nonexistent/dir/fig.csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = |p: &Path| {
        vec![
            "sweep".to_owned(),
            "--d=10".into(),
            "--t-min=0.5".into(),
            "--t-max=19".into(),
            "--steps=75".into(),
            format!("--out={}", p.display()),
        ]
    };
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for p in [&a, &b] {
        let argv = args(p);
        let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
        assert!(cpforce(&argv).status.success());
    }
    let text = read(&a);
    assert_eq!(text, read(&b));
    assert!(text.contains("\nt,d,a,x0,force,force_reduced,regime\n"));
    let rows = read_csv_records(&text).unwrap();
    assert_eq!(rows.len(), 75);
    assert!(rows.windows(2).all(|w| w[0].t < w[1].t));
    let changes = rows
        .windows(2)
        .filter(|w| (w[0].force < 0.0) != (w[1].force < 0.0))
        .count();
    assert!(changes >= 2);
}

#[test]
fn fully_singular_sweep_is_empty_with_skip_count() {
    let out = cpforce(&[
        "sweep", "--d", "10", "--t-min", "19.99", "--t-max", "20.01", "--steps", "4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# skipped=4\n"));
    assert!(text.ends_with("t,d,a,x0,force,force_reduced,regime\n"));
    assert!(read_csv_records(&text).unwrap().is_empty());
}

#[test]
fn figure_one_stays_before_back_reaction() {
    let out = cpforce(&["figure", "--which", "1"]);
    assert!(out.status.success());
    let rows = read_csv_records(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 200);
    assert!(rows.iter().all(|r| r.regime == "pre"));
    assert!(rows.last().unwrap().t < 20.0);
}

#[test]
fn figure_two_tail_settles_on_static_force() {
    let fig = cpforce(&["figure", "--which", "2", "--format", "json"]);
    let stat = cpforce(&["static", "--d", "10", "--k0", "1"]);
    let doc: SweepDocument = serde_json::from_str(&stdout(&fig)).unwrap();
    let stat: StaticRecord = serde_json::from_str(&stdout(&stat)).unwrap();
    assert_eq!(doc.skipped, 0);
    assert!(doc.records.iter().all(|r| r.regime == "post"));
    let tail = &doc.records[doc.records.len() * 9 / 10..];
    let spread = tail
        .iter()
        .map(|r| ((r.force - stat.force) / stat.force).abs())
        .fold(0.0, f64::max);
    assert!(spread < 0.2, "{spread}");
}

#[test]
fn json_round_trip_reproduces_forces_bitwise() {
    let out = cpforce(&[
        "sweep", "--d", "3.7", "--t-min", "0.3", "--t-max", "40", "--steps", "31", "--k0", "0.9",
        "--mu", "1.3", "--format", "json",
    ]);
    let doc: SweepDocument = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!doc.records.is_empty());
    for r in &doc.records {
        let c = AtomWallConfig::new(r.d, r.t, doc.k0, doc.mu).unwrap();
        let again = dynamic_force(&c, GuardBand::new(doc.guard_band).unwrap()).unwrap();
        assert_eq!(again.force.to_bits(), r.force.to_bits());
        assert_eq!(SweepRecord::from_result(&again), *r);
    }
}

#[test]
fn config_file_fills_in_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "d = 10.0\nt = 5.0\nk0 = 2.0\n").unwrap();
    let cfg = path.to_str().unwrap();
    let from_file: SweepRecord =
        serde_json::from_str(&stdout(&cpforce(&["force", "--config", cfg]))).unwrap();
    assert_eq!((from_file.d, from_file.t, from_file.x0), (10.0, 5.0, 40.0));
    let overridden: SweepRecord =
        serde_json::from_str(&stdout(&cpforce(&["force", "--config", cfg, "--k0", "1"]))).unwrap();
    assert_eq!(overridden.x0, 20.0);

    std::fs::write(&path, "bogus = 1\n").unwrap();
    assert_eq!(cpforce(&["force", "--config", cfg]).status.code(), Some(1));
}

#[test]
fn validate_single_point_reports_force_check() {
    let out = cpforce(&["validate", "--d", "10", "--t", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("check force: points=1"));
    assert!(text.contains("check energy: points=1"));
}

#[test]
fn validate_with_tiny_truncation_fails_with_diagnostics() {
    let out = cpforce(&["validate", "--truncation", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("did not converge"));
}

#[test]
fn validate_default_grid_passes() {
    let out = cpforce(&["validate"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("all checks passed"));
}
