//! End-to-end runs of the `biharm` binary.

use biharm::scenario::{Command, Scenario};
use serde_json::Value;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command as Process, Output};

const BIN: &str = env!("CARGO_BIN_EXE_biharm");

fn scenarios_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn biharm(args: &[&str]) -> Output {
    Process::new(BIN)
        .args(args)
        .env_remove("BIHARM_THREADS")
        .output()
        .expect("spawn biharm")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("scenario.toml");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn report(out: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap()
}

const SMALL_KITE: &str = r#"
name = "small-kite"
wavenumber = 1.0
n = 32

[shape]
kind = "kite"
scale = 1.0

[[checks]]
check = "farfield_equivalence"

[[checks]]
check = "translation_invariance"
h = [0.0, 0.0]
"#;

#[test]
fn circle_oracle_scenario_passes_and_writes_far_field() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let config = scenarios_dir().join("circle-oracle.toml");
    let o = biharm(&["oracle", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    assert_eq!(r["all_pass"], Value::Bool(true));
    let oracle = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "circle_oracle")
        .expect("circle_oracle check");
    assert!(oracle["residual"].as_f64().unwrap() <= 1e-6);

    let mut rows = csv::Reader::from_path(out.join("farfield.csv")).unwrap();
    let headers = rows.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), ["angle_radians", "re", "im", "abs"]);
    let mut count = 0;
    for row in rows.records() {
        let v: Vec<f64> = row.unwrap().iter().map(|s| s.parse().unwrap()).collect();
        assert!((v[1].hypot(v[2]) - v[3]).abs() <= 1e-15 * v[3].max(1.0));
        count += 1;
    }
    assert_eq!(count, 360);
    assert!(out.join("timings.json").exists());
}

#[test]
fn zero_translation_and_requested_checks_only() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), SMALL_KITE);
    let out = tmp.path().join("out");
    let o = biharm(&["verify", &config, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    let names: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["farfield_equivalence", "translation_invariance"]);
    assert!(r["checks"][1]["residual"].as_f64().unwrap() <= 1e-12);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS ")).count(), 2);
}

#[test]
fn reruns_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), SMALL_KITE);
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    for out in [&a, &b] {
        let o = biharm(&["solve", &config, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    for file in ["report.json", "farfield.csv"] {
        assert_eq!(
            fs::read(a.join(file)).unwrap(),
            fs::read(b.join(file)).unwrap(),
            "{file}"
        );
    }
}

#[test]
fn node_count_override_reaches_the_report() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), SMALL_KITE);
    let out = tmp.path().join("out");
    let o = biharm(&["verify", &config, "--n", "48", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&out);
    assert!(r["scene"].as_str().unwrap().contains("n=48"), "{}", r["scene"]);
}

#[test]
fn failing_check_exits_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let text = format!(
        "{SMALL_KITE}\n[[checks]]\ncheck = \"manufactured_solution\"\n\n[tolerances]\nmanufactured_field = 1e-300\n"
    );
    let config = write_config(tmp.path(), &text);
    let out = tmp.path().join("out");
    let o = biharm(&["verify", &config, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL manufactured_solution"));
    assert_eq!(report(&out)["all_pass"], Value::Bool(false));
}

#[test]
fn invalid_wavenumber_is_an_error() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), &SMALL_KITE.replace("wavenumber = 1.0", "wavenumber = -1.0"));
    let o = biharm(&["verify", &config, "--out", tmp.path().join("out").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("wavenumber"));
}

#[test]
fn unwritable_output_is_an_error() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), SMALL_KITE);
    // a regular file where the output directory should go
    let blocker = tmp.path().join("blocker");
    fs::write(&blocker, "").unwrap();
    let o = biharm(&["solve", &config, "--out", blocker.join("out").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn thread_variable_is_validated() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), SMALL_KITE);
    let run = |threads: &str| {
        Process::new(BIN)
            .args(["solve", &config, "--out", tmp.path().join("out").to_str().unwrap()])
            .env("BIHARM_THREADS", threads)
            .output()
            .unwrap()
    };
    assert_eq!(run("zero").status.code(), Some(1));
    assert_eq!(run("0").status.code(), Some(1));
    assert_eq!(run("1").status.code(), Some(0));
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(biharm(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(biharm(&["verify"]).status.code(), Some(1));
    assert_eq!(biharm(&["--help"]).status.code(), Some(0));
    let missing = biharm(&["verify", "/nonexistent/scenario.toml"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn bundled_scenarios_validate() {
    let mut count = 0;
    for entry in fs::read_dir(scenarios_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("toml") {
            continue;
        }
        let s = Scenario::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let command = if s.phaseless.is_some() {
            Command::Phaseless
        } else if s.oracle.is_some() {
            Command::Oracle
        } else if s.checks.is_empty() {
            Command::Solve
        } else {
            Command::Verify
        };
        s.validate(command)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        count += 1;
    }
    assert!(count >= 5);
}
