use std::process::{Command, Output};

use serde_json::Value;

fn dualkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualkit"))
        .args(args)
        .env_remove("DUALKIT_TOL")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = dualkit(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn pair_of_coulomb() {
    let doc = json(&["pair", "-a", "-1"]);
    assert_eq!(doc["schema"], "dualkit/1");
    assert_eq!(doc["command"], "pair");
    let r = &doc["result"];
    assert_eq!(r["a"].as_f64(), Some(-1.0));
    assert_eq!(r["b"].as_f64(), Some(2.0));
    assert_eq!(r["eta"].as_f64(), Some(2.0));
    assert_eq!(r["class"], "II");
}

#[test]
fn pair_keys_in_fixed_order() {
    let doc = json(&["pair", "-a", "1", "--C", "0.5"]);
    let keys: Vec<&String> = doc["result"].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["a", "b", "eta", "class", "C", "lambda_b_per_E_a", "E_b_per_lambda_a"]);
    let top: Vec<&String> = doc.as_object().unwrap().keys().collect();
    assert_eq!(top, ["schema", "command", "config", "result"]);
}

#[test]
fn degenerate_exponent_is_domain_error() {
    let out = dualkit(&["pair", "-a", "-2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("degenerate exponent a=-2"));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["pair"][..],
        &["frobnicate"],
        &["spectrum", "--system", "dirac"],
        &["green", "--system", "confine", "--L", "1", "--points", "1,2"],
        &["wkb", "--terms", "1;2"],
        &["confine", "--format", "csv"],
        &["--m", "-1", "confine"],
    ] {
        let out = dualkit(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stderr(&out).to_lowercase().contains("usage"), "{args:?}");
    }
}

#[test]
fn output_is_byte_identical() {
    let args = ["spectrum", "--system", "hooke", "--omega", "1.3", "--oracle"];
    let a = dualkit(&args);
    let b = dualkit(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn numbers_carry_twelve_digits() {
    let doc = json(&["specfun-eval", "--fn", "gamma", "--args", "0.5"]);
    assert_eq!(doc["result"]["value"].to_string(), "1.77245385091");
}

#[test]
fn config_echoes_flags() {
    let doc = json(&[
        "--m", "0.8", "--hbar", "1.3", "green", "--system", "hooke", "--E", "2.2", "--L", "1.5", "--points",
        "1,2;0.5,0.25", "--omega", "1.7",
    ]);
    let c = &doc["config"];
    assert_eq!(c["units"]["system"], "custom");
    assert_eq!(c["units"]["m"].as_f64(), Some(0.8));
    assert_eq!(c["units"]["hbar"].as_f64(), Some(1.3));
    assert_eq!(c["system"], "hooke");
    assert_eq!(c["E"].as_f64(), Some(2.2));
    assert_eq!(c["L"].as_f64(), Some(1.5));
    assert_eq!(c["omega"].as_f64(), Some(1.7));
    assert_eq!(c["points"], "1,2;0.5,0.25");

    let replay = json(&[
        "--m",
        &c["units"]["m"].to_string(),
        "--hbar",
        &c["units"]["hbar"].to_string(),
        "green",
        "--system",
        c["system"].as_str().unwrap(),
        "--E",
        &c["E"].to_string(),
        "--L",
        &c["L"].to_string(),
        "--points",
        c["points"].as_str().unwrap(),
        "--omega",
        &c["omega"].to_string(),
    ]);
    assert_eq!(replay, doc);
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_dualkit"))
        .args(["spectrum", "--system", "coulomb", "--numax", "1", "--ellmax", "0"])
        .env("DUALKIT_TOL", "1e-9")
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["config"]["tol"].as_f64(), Some(1e-9));
    assert_eq!(doc["result"]["tolerance"]["transfer"].as_f64(), Some(1e-9));
}

#[test]
fn green_csv_has_header_and_symmetry() {
    let out = dualkit(&["green", "--system", "coulomb", "--E", "-0.3", "--L", "0.5", "--points", "1,2;2,1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "r,r_prime,G");
    let g = |l: &str| l.rsplit(',').next().unwrap().to_string();
    assert_eq!(g(lines[1]), g(lines[2]));
}

#[test]
fn green_on_spectrum_fails() {
    let out = dualkit(&["green", "--system", "coulomb", "--E", "-0.5", "--L", "0.5", "--points", "1,2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("bound-state spectrum"));
}

#[test]
fn map_orbit_defaults_to_csv() {
    let out = dualkit(&["map-orbit", "--abar", "1", "--e", "0.5", "--n", "8"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("psi,x,y,u,v\n"));
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn spectrum_routes_agree() {
    let doc = json(&["--atomic", "spectrum", "--system", "coulomb", "--ellmax", "1", "--numax", "2", "--oracle"]);
    let entries = doc["result"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    for e in entries {
        assert_eq!(e["agree"], true);
        let n = e["nu"].as_f64().unwrap() + e["ell"].as_f64().unwrap() + 1.0;
        assert!((e["closed_form"].as_f64().unwrap() + 0.5 / (n * n)).abs() < 1e-11);
    }
}

#[test]
fn confine_reports_coupling_and_norm() {
    let doc = json(&["--m", "0.5", "confine", "--nu0", "0", "--ell", "1", "--D", "3"]);
    let r = &doc["result"];
    assert_eq!(r["lambda_a"].as_f64(), Some(-4.5));
    assert_eq!(r["nodes"].as_u64(), Some(0));
    assert!((r["norm_squared"].as_f64().unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn morse_truncates_at_bound_count() {
    let doc = json(&["morse", "--D1", "8", "--D2", "8", "--alpha", "1", "--numax", "10"]);
    assert_eq!(doc["result"]["bound_count"].as_u64(), Some(4));
    let levels = doc["result"]["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 4);
    assert_eq!(levels[0]["E"].as_f64(), Some(-6.125));
}

#[test]
fn wkb_entries() {
    let doc = json(&["wkb", "--terms", "-1:-1", "--ell", "0", "--D", "3", "--nmax", "2"]);
    let entries = doc["result"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    for e in entries {
        let n = e["n_r"].as_f64().unwrap() + 1.0;
        assert!((e["E"].as_f64().unwrap() + 0.5 / (n * n)).abs() < 1e-9);
        assert_eq!(e["provenance"], "wkb_numeric");
    }
}

#[test]
fn verify_fast_passes() {
    let doc = json(&["verify", "--fast"]);
    let r = &doc["result"];
    assert_eq!(r["passed"], true);
    assert_eq!(r["checks"].as_array().unwrap().len(), 10);
}
