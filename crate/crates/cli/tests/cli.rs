use std::path::Path;
use std::process::{Command, Output};

fn spfide(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spfide"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("run spfide")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn reported_max_error(out: &Output) -> f64 {
    stdout(out)
        .lines()
        .find_map(|l| l.strip_prefix("max error"))
        .expect("max error line")
        .trim()
        .parse()
        .unwrap()
}

#[test]
fn solve_writes_solution_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = spfide(dir.path(), &["solve", "--problem", "example1", "--epsilon", "2^-24", "--n", "128"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let err = reported_max_error(&out);
    assert!(((err - 2.561e-5) / 2.561e-5).abs() < 5e-3, "max error {err}");
    let csv = std::fs::read_to_string(dir.path().join("solution.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "i,xi,y,exact,abs_error");
    assert_eq!(lines.len(), 130);
    let last: Vec<&str> = lines[129].split(',').collect();
    assert_eq!(last[0], "128");
    assert_eq!(last[1].parse::<f64>().unwrap(), 1.0);
    assert_eq!(last[2].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn coarse_solve_is_accurate() {
    let dir = tempfile::tempdir().unwrap();
    let out = spfide(dir.path(), &["solve", "--epsilon", "1", "--n", "8", "--out", "coarse.csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(reported_max_error(&out) <= 1e-3);
    assert!(dir.path().join("coarse.csv").exists());
}

#[test]
fn solve_reports_both_solvers() {
    let dir = tempfile::tempdir().unwrap();
    let out = spfide(dir.path(), &["solve", "--epsilon", "0.01", "--n", "64", "--solver", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("fixed point"));
    assert!(text.contains("cross-check"));
    assert!(text.contains("theta        positive"));
}

#[test]
fn bad_flags_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = spfide(dir.path(), &["solve", "--epsilon", "0.5"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("Usage"));
    for args in [
        &["solve", "--epsilon", "2", "--n", "8"][..],
        &["solve", "--epsilon", "0.5", "--n", "7"],
        &["solve", "--epsilon", "0.5", "--n", "8", "--solver", "cg"],
        &["solve", "--epsilon", "0.5", "--n", "8", "--problem", "nope"],
    ] {
        assert_eq!(spfide(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn study_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = spfide(
        dir.path(),
        &["study", "--epsilon-list", "2^0,2^-12", "--n-list", "16,32,64", "--output-dir", "res"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let res = dir.path().join("res");
    let study = std::fs::read_to_string(res.join("study.csv")).unwrap();
    let lines: Vec<&str> = study.lines().collect();
    assert_eq!(lines[0], "epsilon,n,max_error,rate");
    assert_eq!(lines.len(), 7);
    assert!(lines[3].ends_with(','), "largest N has no rate: {}", lines[3]);
    let loglog = std::fs::read_to_string(res.join("loglog.csv")).unwrap();
    assert!(loglog.starts_with("n,log10_n,epsilon,log10_error\n"));
    assert_eq!(loglog.lines().count(), 7);
    let md = std::fs::read_to_string(res.join("study.md")).unwrap();
    assert!(md.contains("| 2^-12 |"));
    assert!(md.contains("| e^N |") && md.contains("| p^N |"));
}

#[test]
fn study_with_both_solvers_adds_gap_column() {
    let dir = tempfile::tempdir().unwrap();
    let out = spfide(
        dir.path(),
        &["study", "--epsilon-list", "2^-6", "--n-list", "32,64", "--solver", "both", "--formats", "csv"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let study = std::fs::read_to_string(dir.path().join("study.csv")).unwrap();
    assert!(study.starts_with("epsilon,n,max_error,rate,cross_check_gap\n"));
    for line in study.lines().skip(1) {
        let gap: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(gap <= 1e-9);
    }
    assert!(!dir.path().join("study.md").exists());
}

#[test]
fn study_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("grid.cfg"),
        "problem=layer\nepsilon_list=2^-4,2^-20\nn_list=8,16\nsolver=lu\ntol=1e-12\noutput_dir=cfgout\nformats=csv,markdown\n",
    )
    .unwrap();
    let out = spfide(dir.path(), &["study", "--config", "grid.cfg"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let study = std::fs::read_to_string(dir.path().join("cfgout/study.csv")).unwrap();
    // The layer problem is reproduced to rounding.
    for line in study.lines().skip(1) {
        let err: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert!(err <= 1e-10, "{line}");
    }
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("grid.cfg"), "epsilon_list=2^-4\nn_list=8,16\nformats=csv\n").unwrap();
    let out = spfide(dir.path(), &["study", "--config", "grid.cfg", "--n-list", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let study = std::fs::read_to_string(dir.path().join("study.csv")).unwrap();
    assert_eq!(study.lines().count(), 2);
}

#[test]
fn study_rejects_bad_configuration() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(spfide(dir.path(), &["study", "--epsilon-list", ""]).status.code(), Some(2));
    assert_eq!(spfide(dir.path(), &["study", "--n-list", "64,32"]).status.code(), Some(2));
    assert_eq!(spfide(dir.path(), &["study", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(spfide(dir.path(), &["study", "--config", "missing.cfg"]).status.code(), Some(2));
    std::fs::write(dir.path().join("bad.cfg"), "epsilon_list=\n").unwrap();
    assert_eq!(spfide(dir.path(), &["study", "--config", "bad.cfg"]).status.code(), Some(2));
}

#[test]
fn study_outputs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--epsilon-list", "1,2^-10", "--n-list", "16,32", "--solver", "both"];
    for sub in ["a", "b"] {
        let mut full = vec!["study", "--output-dir", sub];
        full.extend_from_slice(&args);
        assert_eq!(spfide(dir.path(), &full).status.code(), Some(0));
    }
    for file in ["study.csv", "study.md", "loglog.csv"] {
        let a = std::fs::read(dir.path().join("a").join(file)).unwrap();
        let b = std::fs::read(dir.path().join("b").join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between runs");
    }
}

#[test]
fn failing_cell_exits_one_and_is_named() {
    let dir = tempfile::tempdir().unwrap();
    // Strong coupling breaks the contraction the fixed-point path relies on.
    let out = spfide(
        dir.path(),
        &["study", "--epsilon-list", "2^-3", "--n-list", "8", "--solver", "fixed-point", "--lambda", "4"],
    );
    assert_eq!(out.status.code(), Some(1));
    let msg = stderr(&out);
    assert!(msg.contains("warning: |lambda| = 4 exceeds"), "{msg}");
    assert!(msg.contains("epsilon = 1.25e-1, N = 8"), "{msg}");
    assert!(msg.contains("did not converge"), "{msg}");

    let solve = spfide(dir.path(), &["solve", "--epsilon", "2^-3", "--n", "8", "--solver", "both", "--lambda", "4"]);
    assert_eq!(solve.status.code(), Some(1));
}

#[test]
fn lambda_override_switches_to_double_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let out = spfide(dir.path(), &["study", "--epsilon-list", "2^-8", "--n-list", "16,32", "--lambda", "-0.1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("double-mesh"));
    let solve = spfide(dir.path(), &["solve", "--epsilon", "0.5", "--n", "8", "--lambda", "-0.1"]);
    assert_eq!(solve.status.code(), Some(0));
    assert!(stdout(&solve).contains("n/a"));
    let csv = std::fs::read_to_string(dir.path().join("solution.csv")).unwrap();
    assert!(csv.lines().nth(2).unwrap().ends_with(",,"));
}
