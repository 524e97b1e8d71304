use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hlayers"));
    c.env_remove("HLAYERS_THREADS");
    c
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(cmd: &str, config: &Path, extra: &[&str]) -> Output {
    bin()
        .arg(cmd)
        .arg("--config")
        .arg(config)
        .args(extra)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

const STRIP: &str = r#"{"problem":"strip","geometry":{"l":0.5},"boundary":{"modes":[{"omega":1}]},
 "method":"series","grid":{"x":{"from":0,"to":0.5,"n":5},"y":{"from":-1,"to":1,"n":7}}}"#;

#[test]
fn solve_strip_writes_grid() {
    let d = TempDir::new().unwrap();
    let cfg = write(&d, "c.json", STRIP);
    let out = d.path().join("u.csv");
    let o = run("solve", &cfg, &["--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,region,u"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 35);
    // x = l is the Dirichlet wall
    assert!(rows
        .iter()
        .filter(|r| r.starts_with("0.5,"))
        .all(|r| r.ends_with(",1,0")));
    let mid: Vec<f64> = rows
        .iter()
        .find(|r| r.starts_with("0.25,0,"))
        .unwrap()
        .split(',')
        .map(|s| s.parse().unwrap())
        .collect();
    assert!((mid[3] - 0.25f64.sinh() / 0.5f64.sinh()).abs() < 1e-9);
}

#[test]
fn strict_regime_warning_exits_4() {
    let d = TempDir::new().unwrap();
    let cfg = write(
        &d,
        "c.json",
        r#"{"problem":"halfplane_coupled","geometry":{"l":0.01,"k":0.01},"boundary":{"modes":[{"omega":1}]},
 "method":"series","grid":{"x":{"from":0,"to":0.1,"n":3},"y":{"from":0,"to":1,"n":3}}}"#,
    );
    assert_eq!(code(&run("solve", &cfg, &["--strict"])), 4);
    let o = run("solve", &cfg, &[]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("\"recommendation\":\"asymptotic\""));
}

#[test]
fn invalid_radius_exits_2() {
    let d = TempDir::new().unwrap();
    let cfg = write(
        &d,
        "c.json",
        r#"{"problem":"disk_coupled","geometry":{"R":1.2,"k":0.5},"boundary":{"modes":[{"n":1,"a":1}]},
 "grid":{"r":{"from":0,"to":1,"n":5},"theta":4}}"#,
    );
    assert_eq!(code(&run("solve", &cfg, &[])), 2);
}

#[test]
fn validation_failures_exit_2() {
    let d = TempDir::new().unwrap();
    for (i, text) in [
        // unknown field
        r#"{"problem":"strip","geometry":{"l":0.5,"L":1},"boundary":{"modes":[]}}"#,
        // k does not apply to the strip
        r#"{"problem":"strip","geometry":{"l":0.5,"k":1},"boundary":{"modes":[]},"grid":{"x":{"from":0,"to":0.5,"n":3},"y":{"from":0,"to":1,"n":3}}}"#,
        // grid leaves the strip
        r#"{"problem":"strip","geometry":{"l":0.5},"boundary":{"modes":[]},"grid":{"x":{"from":0,"to":0.6,"n":3},"y":{"from":0,"to":1,"n":3}}}"#,
        // two boundary sources
        r#"{"problem":"strip","geometry":{"l":0.5},"boundary":{"modes":[],"samples":"t.csv"},"grid":{"x":{"from":0,"to":0.5,"n":3},"y":{"from":0,"to":1,"n":3}}}"#,
        // polar grid on a planar problem
        r#"{"problem":"strip","geometry":{"l":0.5},"boundary":{"modes":[]},"grid":{"r":{"from":0,"to":0.5,"n":3},"theta":4}}"#,
    ]
    .iter()
    .enumerate()
    {
        let cfg = write(&d, &format!("c{i}.json"), text);
        assert_eq!(code(&run("solve", &cfg, &[])), 2, "{text}");
    }
}

#[test]
fn tail_tolerance_unmet_exits_3() {
    let d = TempDir::new().unwrap();
    let cfg = write(
        &d,
        "c.json",
        r#"{"problem":"halfplane_coupled","geometry":{"l":1e-7,"k":1e-7},"boundary":{"modes":[{"omega":1}]},
 "method":"series","truncation":{"tol":1e-14},"grid":{"x":{"from":0,"to":0.1,"n":3},"y":{"from":0,"to":1,"n":3}}}"#,
    );
    assert_eq!(code(&run("solve", &cfg, &[])), 3);
}

fn disk_sweep(hold: &str) -> String {
    format!(
        r#"{{"problem":"disk_coupled","geometry":{{"R":0.98,"k":0.05}},"boundary":{{"modes":[{{"n":1,"a":1}}]}},
 "methods":["series","asymptotic"],"truncation":{{"tol":1e-12}},
 "grid":{{"r":{{"from":0,"to":1,"n":51}},"theta":16}},
 "sweep":{{"thickness":[0.02,0.04,0.08],"hold":"{hold}"}}}}"#
    )
}

#[test]
fn disk_sweep_thickness_order() {
    let d = TempDir::new().unwrap();
    // At fixed k the leading-order error is O(1 − |ρ|) and does not shrink
    // with the layer; holding the Robin parameter h fixed recovers order 1.
    let fixed_k = stdout_json(&run("compare", &write(&d, "k.json", &disk_sweep("k")), &[]));
    let p = fixed_k["thickness_order"].as_f64().unwrap();
    assert!(p < 0.7, "fixed-k slope {p}");
    let fixed_h = stdout_json(&run(
        "compare",
        &write(&d, "h.json", &disk_sweep("robin")),
        &[],
    ));
    let p = fixed_h["thickness_order"].as_f64().unwrap();
    assert!((0.7..=1.3).contains(&p), "fixed-h slope {p}");
    let sweep = fixed_h["sweep"].as_array().unwrap();
    let h0 = sweep[0]["h"].as_f64().unwrap();
    assert!(sweep
        .iter()
        .all(|s| (s["h"].as_f64().unwrap() - h0).abs() < 1e-9));
}

#[test]
fn identical_methods_agree_exactly() {
    let d = TempDir::new().unwrap();
    let cfg = write(
        &d,
        "c.json",
        r#"{"problem":"annulus","geometry":{"R":0.7},"boundary":{"modes":[{"n":2,"a":1,"b":0.5}]},
 "methods":["asymptotic","asymptotic"],"grid":{"r":{"from":0.7,"to":1,"n":7},"theta":12}}"#,
    );
    let base = d.path().join("cmp");
    let o = run("compare", &cfg, &["--out", base.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let summary: Value =
        serde_json::from_str(&std::fs::read_to_string(base.with_extension("json")).unwrap())
            .unwrap();
    assert_eq!(summary["pairs"][0]["max_abs_diff"].as_f64(), Some(0.0));
    let table = std::fs::read_to_string(base.with_extension("csv")).unwrap();
    let header: Vec<&str> = table.lines().next().unwrap().split(',').collect();
    let col = header
        .iter()
        .position(|h| *h == "d_asymptotic_asymptotic_2")
        .unwrap();
    assert_eq!(table.lines().count(), 1 + 7 * 12);
    assert!(table
        .lines()
        .skip(1)
        .all(|l| l.split(',').nth(col) == Some("0")));
}

fn strip_compare(nx: usize, ny: usize) -> f64 {
    let d = TempDir::new().unwrap();
    let text = format!(
        r#"{{"problem":"strip","geometry":{{"l":0.5}},"boundary":{{"modes":[{{"omega":1}}]}},
 "methods":["series","oracle"],"truncation":{{"tol":1e-13}},
 "grid":{{"x":{{"from":0,"to":0.5,"n":{nx}}},"y":{{"from":-2,"to":2,"n":{ny}}}}}}}"#
    );
    let o = run("compare", &write(&d, "c.json", &text), &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    stdout_json(&o)["pairs"][0]["max_abs_diff"]
        .as_f64()
        .unwrap()
}

#[test]
fn strip_series_matches_fd_at_second_order() {
    // C from the 33×129 grid; the finer grid may lose up to the oracle's
    // accepted refinement spread (ratio ≥ 3.2 instead of 4).
    let (hc, hf) = (0.5 / 32.0, 0.5 / 64.0);
    let coarse = strip_compare(33, 129);
    let fine = strip_compare(65, 257);
    let c = coarse / (hc * hc);
    assert!(
        fine <= c * hf * hf * 4.0 / 3.2,
        "fine {fine:e} vs C·h² {:e}",
        c * hf * hf
    );
    assert!(fine < 1e-6);
}

#[test]
fn verify_disk_series_passes() {
    let d = TempDir::new().unwrap();
    let cfg = write(
        &d,
        "c.json",
        r#"{"problem":"disk_coupled","geometry":{"R":0.6,"k":3},"boundary":{"modes":[{"n":1,"a":1}]},
 "method":"series","truncation":{"tol":1e-12},"checks":{"pde":1e-8,"boundary":1e-8,"value_jump":1e-8,"flux_jump":1e-8}}"#,
    );
    let o = run("verify", &cfg, &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v = stdout_json(&o);
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn raw_field_fails_strip_inner_boundary() {
    let d = TempDir::new().unwrap();
    let cfg = write(
        &d,
        "c.json",
        r#"{"problem":"strip","geometry":{"l":0.5},"boundary":{"modes":[{"omega":1}]},"method":"raw"}"#,
    );
    let o = run("verify", &cfg, &[]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    let checks = v["checks"].as_array().unwrap();
    let by = |n: &str| {
        checks.iter().find(|c| c["name"] == n).unwrap()["pass"]
            .as_bool()
            .unwrap()
    };
    assert!(by("pde"));
    assert!(!by("boundary"));
}

#[test]
fn zero_field_passes() {
    let d = TempDir::new().unwrap();
    for (i, text) in [
        r#"{"problem":"halfplane_coupled","geometry":{"l":0.2,"k":0.3},"boundary":{"modes":[]},"method":"series"}"#,
        r#"{"problem":"annulus","geometry":{"R":0.5},"boundary":{"modes":[]},"method":"asymptotic"}"#,
    ]
    .iter()
    .enumerate()
    {
        let o = run("verify", &write(&d, &format!("z{i}.json"), text), &[]);
        assert_eq!(code(&o), 0, "{text}");
        let v = stdout_json(&o);
        assert_eq!(v["report"]["pde_residual"].as_f64(), Some(0.0));
    }
}

#[test]
fn verify_fd_oracle() {
    let d = TempDir::new().unwrap();
    let cfg = write(
        &d,
        "c.json",
        r#"{"problem":"disk_coupled","geometry":{"R":0.5,"k":0.2},"boundary":{"modes":[{"n":2,"a":1}]},
 "method":"oracle","grid":{"r":{"from":0,"to":1,"n":21},"theta":16}}"#,
    );
    let o = run("verify", &cfg, &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v = stdout_json(&o);
    assert!(v["report"]["pde_residual"].as_f64().unwrap() <= 1e-10);
}

fn regimes_of(geometry: &str) -> Value {
    let d = TempDir::new().unwrap();
    let text = format!(
        r#"{{"problem":"halfplane_coupled","geometry":{geometry},"boundary":{{"modes":[{{"omega":1}}]}}}}"#
    );
    let o = run("regimes", &write(&d, "c.json", &text), &[]);
    assert_eq!(code(&o), 0);
    stdout_json(&o)
}

#[test]
fn regimes_examples() {
    let v = regimes_of(r#"{"l":0.5,"k":1}"#);
    assert_eq!(v["rho"].as_f64(), Some(0.0));
    assert_eq!(v["J_needed"].as_u64(), Some(1));
    assert_eq!(v["recommendation"], "series");

    let v = regimes_of(r#"{"l":0.01,"k":0.01}"#);
    assert_eq!(v["recommendation"], "asymptotic");

    let v = regimes_of(r#"{"l":0.5,"k":0.5}"#);
    assert!((v["rho"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(v["recommendation"], "series");
}

#[test]
fn regimes_strict_and_unweighted() {
    let d = TempDir::new().unwrap();
    let cfg = write(
        &d,
        "c.json",
        r#"{"problem":"disk_coupled","geometry":{"R":0.99,"k":0.01},"boundary":{"modes":[{"n":1,"a":1}]}}"#,
    );
    assert_eq!(code(&run("regimes", &cfg, &[])), 0);
    assert_eq!(code(&run("regimes", &cfg, &["--strict"])), 4);

    let cfg = write(
        &d,
        "a.json",
        r#"{"problem":"annulus","geometry":{"R":0.7},"boundary":{"modes":[{"n":1,"a":1}]}}"#,
    );
    let v = stdout_json(&run("regimes", &cfg, &[]));
    assert_eq!(v["rho"].as_f64(), Some(1.0));
    assert_eq!(v["recommendation"], "series");
    assert!(v["J_needed"].as_u64().unwrap() > 1);
}

#[test]
fn identical_config_gives_identical_bytes() {
    let d = TempDir::new().unwrap();
    let cfg = write(
        &d,
        "c.json",
        r#"{"problem":"halfplane_coupled","geometry":{"l":0.3,"k":0.2,"a1":1.5},"boundary":{"modes":[{"omega":1,"A":2,"phi":0.3},{"omega":2.5}]},
 "method":"asymptotic","em_order":2,"grid":{"x":{"from":0,"to":1.2,"n":25},"y":{"from":-1,"to":1,"n":31}}}"#,
    );
    let a = run("solve", &cfg, &["--threads", "1"]);
    let b = run("solve", &cfg, &["--threads", "4"]);
    assert_eq!(code(&a), 0);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn thread_env_is_read_and_overridden() {
    let d = TempDir::new().unwrap();
    let cfg = write(&d, "c.json", STRIP);
    let bad_env = |extra: &[&str]| {
        bin()
            .env("HLAYERS_THREADS", "many")
            .arg("solve")
            .arg("--config")
            .arg(&cfg)
            .args(extra)
            .output()
            .unwrap()
    };
    assert_eq!(code(&bad_env(&[])), 2);
    assert_eq!(code(&bad_env(&["--threads", "2"])), 0);
}

fn round_trip(text: &str) -> (Value, Value) {
    let d = TempDir::new().unwrap();
    let cfg = write(&d, "c.json", text);
    let grid = d.path().join("u.csv");
    assert_eq!(
        code(&run("solve", &cfg, &["--out", grid.to_str().unwrap()])),
        0
    );
    let direct = stdout_json(&run("verify", &cfg, &[]));
    let mut with_file: Value = serde_json::from_str(text).unwrap();
    with_file["solution"] = Value::String("u.csv".into());
    let cfg2 = write(&d, "c2.json", &with_file.to_string());
    let reread = stdout_json(&run("verify", &cfg2, &[]));
    (direct, reread)
}

#[test]
fn solve_then_verify_round_trip() {
    for text in [
        r#"{"problem":"disk_coupled","geometry":{"R":0.7,"k":0.4},"boundary":{"modes":[{"n":3,"b":1}]},
 "method":"series","grid":{"r":{"from":0,"to":1,"n":11},"theta":9}}"#,
        r#"{"problem":"strip","geometry":{"l":0.5},"boundary":{"modes":[{"omega":1}]},
 "method":"raw","grid":{"x":{"from":0,"to":0.5,"n":5},"y":{"from":-1,"to":1,"n":5}}}"#,
    ] {
        let (direct, reread) = round_trip(text);
        let verdicts = |v: &Value| -> Vec<(String, bool)> {
            v["checks"]
                .as_array()
                .unwrap()
                .iter()
                .filter(|c| c["name"] != "solution_file")
                .map(|c| {
                    (
                        c["name"].as_str().unwrap().to_string(),
                        c["pass"].as_bool().unwrap(),
                    )
                })
                .collect()
        };
        assert_eq!(verdicts(&direct), verdicts(&reread));
        let file = reread["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == "solution_file")
            .unwrap()
            .clone();
        assert_eq!(file["pass"], Value::Bool(true));
    }
}

#[test]
fn sample_file_boundaries() {
    let d = TempDir::new().unwrap();
    let mut trace = String::from("theta,value\n");
    for j in 0..32 {
        let t = std::f64::consts::TAU * j as f64 / 32.0;
        trace.push_str(&format!("{t},{}\n", (2.0 * t).cos()));
    }
    write(&d, "circle.csv", &trace);
    let cfg = write(
        &d,
        "c.json",
        r#"{"problem":"annulus","geometry":{"R":0.6},"boundary":{"samples":"circle.csv","sample_modes":4},
 "method":"series","grid":{"r":{"from":0.8,"to":0.8,"n":1},"theta":1}}"#,
    );
    let o = run("solve", &cfg, &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let u: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .rsplit(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    let (r, big_r) = (0.8f64, 0.6f64);
    let exact = (r.powi(2) - (big_r * big_r / r).powi(2)) / (1.0 - big_r.powi(4));
    assert!((u - exact).abs() < 1e-9, "{u} vs {exact}");

    let mut line = String::new();
    for j in -400..=400 {
        let y = j as f64 * 0.05;
        line.push_str(&format!("{y},{}\n", 1.0 / (1.0 + y * y)));
    }
    write(&d, "line.csv", &line);
    let cfg = write(
        &d,
        "h.json",
        r#"{"problem":"halfplane_coupled","geometry":{"l":0.5,"k":0.5},"boundary":{"samples":"line.csv"},
 "method":"series","grid":{"x":{"from":0.5,"to":0.5,"n":1},"y":{"from":0,"to":0,"n":1}}}"#,
    );
    let o = run("solve", &cfg, &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}
