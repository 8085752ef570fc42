use std::path::Path;
use std::process::{Command, Output};

use driftflight::flight::{simulate_batch, FlightParams};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_driftflight")).args(args).output().expect("binary runs")
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines().skip(2).map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect()
}

#[test]
fn simulate_is_reproducible_and_exact() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let base = ["simulate", "--d", "3", "--nu", "1", "--n", "2", "--c", "1", "--t", "1", "--count", "1000", "--seed", "7"];
    let out = run(&[&base[..], &["--out", a.to_str().unwrap(), "--threads", "1"]].concat());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&[&base[..], &["--out", b.to_str().unwrap(), "--threads", "4"]].concat());
    assert!(out.status.success());
    let (ta, tb) = (read(&a), read(&b));
    // the header echoes the output path, so compare everything after it
    assert_eq!(ta.split_once('\n').unwrap().1, tb.split_once('\n').unwrap().1);
    let rows = data_rows(&ta);
    assert_eq!(rows.len(), 1000);
    let p = FlightParams::new(3, 3, 2, 1.0, 1.0, 1.0).unwrap();
    let lib = simulate_batch(&p, 1000, 7).unwrap();
    for (row, x) in rows.iter().zip(&lib) {
        assert_eq!(&row[1..], x.as_slice());
    }
    let sidecar: serde_json::Value = serde_json::from_str(&read(&dir.path().join("a.csv.json"))).unwrap();
    assert_eq!(sidecar["seed"], 7);
    assert_eq!(sidecar["params"]["d"], 3);
    assert!(sidecar.get("threads").is_none());
}

#[test]
fn trajectory_export() {
    let dir = tempfile::tempdir().unwrap();
    let fin = dir.path().join("f.csv");
    let tr = dir.path().join("t.csv");
    let out = run(&[
        "simulate", "--d", "2", "--n", "3", "--count", "5", "--out", fin.to_str().unwrap(), "--trajectories",
        tr.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = read(&tr);
    assert!(text.lines().nth(1).unwrap() == "replicate,segment,t_k,x1,x2");
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 5 * 5);
    let finals = data_rows(&read(&fin));
    for (i, f) in finals.iter().enumerate() {
        let last = &rows[i * 5 + 4];
        assert_eq!(last[2], 1.0);
        assert_eq!(&last[3..], &f[1..]);
    }
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["simulate", "--count", "0"]).status.code(), Some(1));
    assert_eq!(run(&["density", "--formula", "nu1-closed", "--n", "3", "--d", "3"]).status.code(), Some(1));
    assert_eq!(run(&["density", "--formula", "nu1", "--nu", "0.5"]).status.code(), Some(1));
    assert_eq!(run(&["density", "--d", "3", "--m", "3"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["simulate", "--d", "x"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn io_errors() {
    assert_eq!(run(&["cdf", "--out", "/nonexistent-dir/x.csv"]).status.code(), Some(3));
    assert_eq!(run(&["cdf", "--config", "/nonexistent-dir/c.json"]).status.code(), Some(3));
}

#[test]
fn radial_density_grid_integrates_to_one() {
    let out = run(&["density", "--formula", "radial-projected", "--d", "3", "--m", "2", "--n", "1", "--nu", "0", "--points", "100"]);
    assert!(out.status.success());
    let rows = data_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 100);
    let trap: f64 = rows.windows(2).map(|w| 0.5 * (w[1][0] - w[0][0]) * (w[0][1] + w[1][1])).sum();
    assert!((trap - 1.0).abs() < 1e-3, "{trap}");
}

#[test]
fn density_outside_the_ball_is_zero() {
    let out = run(&["density", "--d", "3", "--m", "2", "--min", "1.5", "--max", "2", "--step", "0.5"]);
    assert!(out.status.success());
    let rows = data_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r[2] == 0.0));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"params": {"d": 4, "m": 2, "nu": 1.0}, "seed": 3, "orders": [2], "count": 50}"#).unwrap();
    let out = run(&["moments", "--config", cfg.to_str().unwrap(), "--d", "5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let meta: serde_json::Value = serde_json::from_str(text.lines().next().unwrap().trim_start_matches("# ")).unwrap();
    assert_eq!(meta["params"]["d"], 5);
    assert_eq!(meta["params"]["m"], 2);
    assert_eq!(meta["params"]["nu"], 1.0);
    assert_eq!(meta["seed"], 3);
    assert_eq!(data_rows(&text).len(), 1);
    std::fs::write(&cfg, r#"{"bogus": 1}"#).unwrap();
    assert_eq!(run(&["moments", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn every_command_is_deterministic() {
    let cases: &[&[&str]] = &[
        &["density", "--formula", "nu1", "--d", "2", "--n", "2", "--points", "7"],
        &["cf", "--formula", "nu1", "--d", "3", "--points", "4"],
        &["cf", "--d", "4", "--m", "2", "--nu", "0.5", "--points", "5"],
        &["cdf", "--d", "4", "--m", "2", "--n", "3", "--nu", "0.5", "--points", "11"],
        &["moments", "--d", "3", "--m", "1", "--count", "3000", "--orders", "1,2,3"],
        &["mixture", "--d", "3", "--m", "1", "--lambda", "0.7", "--points", "9"],
        &["simulate", "--d", "4", "--count", "300"],
    ];
    for args in cases {
        let a = run(args);
        let b = run(&[&args[..], &["--threads", "2"]].concat());
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn validate_filters_and_seeds() {
    let ids = |seed: &str| {
        let out = run(&["validate", "--only", "identities", "--seed", seed]);
        assert_eq!(out.status.code(), Some(0));
        serde_json::from_slice::<serde_json::Value>(&out.stdout).unwrap()
    };
    let (a, b) = (ids("1"), ids("2"));
    let checks = a["report"]["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["check_id"].as_str().unwrap().starts_with("identity/")));
    for (x, y) in checks.iter().zip(b["report"]["checks"].as_array().unwrap()) {
        assert_eq!(x["metric"], y["metric"]);
    }
    let gof = |seed: &str| {
        let out = run(&["validate", "--only", "gof-radial", "--count", "20000", "--seed", seed]);
        serde_json::from_slice::<serde_json::Value>(&out.stdout).unwrap()
    };
    let (a, b) = (gof("1"), gof("2"));
    let metric = |v: &serde_json::Value| v["report"]["checks"][0]["metric"].as_f64().unwrap();
    assert_ne!(metric(&a), metric(&b));
    let control = a["report"]["checks"].as_array().unwrap().iter().find(|c| c["negative_control"] == true).unwrap();
    assert_eq!(control["passed"], false);
}
