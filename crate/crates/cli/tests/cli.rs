//! End-to-end checks of the binary: outputs, determinism, exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_rate-regions")
}

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rate-regions-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn region_r5_known_corner() {
    let dir = tempdir("r5");
    let out = run(
        &["region", "r5", "--p1", "6", "--p2", "6", "--b", "0.6", "--out", "."],
        &dir,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.join("r5.csv")).unwrap();
    let last = csv.lines().last().unwrap();
    let mut f = last.split(',').map(|v| v.parse::<f64>().unwrap());
    let (r1, r2) = (f.next().unwrap(), f.next().unwrap());
    assert!((r1 - 1.403677461).abs() < 1e-6);
    assert!((r2 - 0.767711520).abs() < 1e-6);
}

#[test]
fn region_repeat_runs_are_byte_identical() {
    let a = tempdir("det-a");
    let b = tempdir("det-b");
    for dir in [&a, &b] {
        let out = run(
            &[
                "region", "r4", "--p1", "6", "--p2", "6", "--k", "2", "--b", "1.5", "--out", ".",
                "--alpha-steps", "21", "--beta-steps", "21", "--mu-steps", "21", "--samples",
                "129",
            ],
            dir,
        );
        assert!(out.status.success());
    }
    let x = std::fs::read(a.join("r4.csv")).unwrap();
    let y = std::fs::read(b.join("r4.csv")).unwrap();
    assert_eq!(x, y);
}

#[test]
fn region_regime_violation_exit_code() {
    let dir = tempdir("regime");
    let out = run(
        &["region", "r1", "--p1", "6", "--p2", "6", "--b", "0.6"],
        &dir,
    );
    assert_eq!(out.status.code(), Some(3));
    // Bad input file path: distinct I/O code.
    let out = run(&["fm", "--input", "missing.json", "--keep", "R1"], &dir);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn figure_emits_curves_and_svg() {
    let dir = tempdir("fig");
    let out = run(&["figure", "fig6c", "--out", ".", "--samples", "129"], &dir);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["fig6c_r1.csv", "fig6c_r3.csv", "fig6c_r4.csv", "fig6c.svg"] {
        assert!(dir.join(f).exists(), "{f} missing");
    }
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("subset r1 in r4: yes"), "{stdout}");
    assert!(stdout.contains("subset r3 in r4: yes"), "{stdout}");
    let svg = std::fs::read_to_string(dir.join("fig6c.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("polyline"));
}

#[test]
fn fm_projection_round_trip() {
    let dir = tempdir("fm");
    std::fs::write(
        dir.join("sys.json"),
        r#"{"vars":["x","y"],"rows":[
            {"coeffs":[1.0,1.0],"rhs":4.0},
            {"coeffs":[1.0,-1.0],"rhs":0.0},
            {"coeffs":[-1.0,0.0],"rhs":0.0}]}"#,
    )
    .unwrap();
    let out = run(
        &["fm", "--input", "sys.json", "--keep", "y", "--out", "proj.json"],
        &dir,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("proj.json")).unwrap()).unwrap();
    assert_eq!(report["kept_vars"], serde_json::json!(["y"]));
    // Identity projection keeps everything.
    let out = run(&["fm", "--input", "sys.json", "--keep", "x,y"], &dir);
    assert!(out.status.success());
}

#[test]
fn discrete_marton_check_passes() {
    let dir = tempdir("marton");
    let out = run(
        &["discrete", "--check", "marton", "--instances", "5", "--seed", "1"],
        &dir,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("check marton: PASS"), "{stdout}");
}

#[test]
fn config_file_replaces_flags() {
    let dir = tempdir("config");
    std::fs::write(
        dir.join("run.json"),
        r#"{"command":"region","name":"r2","p1":6.0,"p2":6.0,"out":"cfg-out"}"#,
    )
    .unwrap();
    let out = run(&["--config", "run.json"], &dir);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.join("cfg-out/r2.csv").exists());
}

#[test]
fn compare_reports_containment() {
    let dir = tempdir("compare");
    for (name, k) in [("a", "1.0"), ("b", "3.0")] {
        let out = run(
            &[
                "region", "r3", "--p1", "6", "--p2", "6", "--k", k, "--b", "1.5", "--out", ".",
            ],
            &dir,
        );
        assert!(out.status.success());
        std::fs::rename(dir.join("r3.csv"), dir.join(format!("{name}.csv"))).unwrap();
    }
    let out = run(&["compare", "a.csv", "b.csv", "--tol", "1e-6"], &dir);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("A in B: yes"), "{stdout}");
    assert!(stdout.contains("B in A: no"), "{stdout}");
}
