use std::process::Command;

use serde_json::Value;
use twistlink::apoly::a_polynomial;
use twistlink::verify::SuiteResult;
use twistlink::volume::{estimate_alpha_max, volume, AlphaMaxEstimate, VolumeResult, VolumeStatus};

fn twistlink(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_twistlink"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
        out.status.code().expect("exit code"),
    )
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (out, _, code) = twistlink(&full);
    (serde_json::from_str(&out).expect("valid json"), code)
}

#[test]
fn envelope_has_four_keys() {
    let (v, code) = json(&["volume", "-m", "1", "--alpha", "1.0"]);
    assert_eq!(code, 0);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "params", "results", "errors"]);
    assert_eq!(v["command"], "volume");
    assert_eq!(v["params"]["m"], 1);
    assert!(v["errors"].as_array().unwrap().is_empty());
}

#[test]
fn volume_round_trips_through_json() {
    let (v, _) = json(&["volume", "-m", "2", "--alpha", "2pi/5"]);
    let parsed: VolumeResult = serde_json::from_value(v["results"][0].clone()).unwrap();
    let direct = volume(2, 2.0 * std::f64::consts::PI / 5.0, 1e-9).unwrap();
    assert_eq!(parsed, direct);
}

#[test]
fn non_hyperbolic_exits_with_two() {
    let (v, code) = json(&["volume", "-m", "1", "--alpha", "0.95pi"]);
    assert_eq!(code, 2);
    let parsed: VolumeResult = serde_json::from_value(v["results"][0].clone()).unwrap();
    assert_eq!(parsed.status, VolumeStatus::NonHyperbolic);
    assert_eq!(parsed.volume, 0.0);
}

#[test]
fn failures_exit_with_one() {
    let (v, code) = json(&["volume", "-m", "0", "--alpha", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["errors"].as_array().unwrap().len(), 1);
    assert!(v["results"].as_array().unwrap().is_empty());

    assert_eq!(twistlink(&["volume", "-m", "1", "--alpha", "4"]).2, 1);
    assert_eq!(twistlink(&["volume", "-m", "1", "--alpha", "pi/0"]).2, 1);
    assert_eq!(twistlink(&["volume", "--alpha", "1"]).2, 1);
    assert_eq!(
        twistlink(&["volume", "-m", "1", "--alpha", "1", "--tol", "0"]).2,
        1
    );
    assert_eq!(twistlink(&["frobnicate"]).2, 1);
    assert_eq!(twistlink(&["cover", "-m", "1", "-k", "2"]).2, 1);
}

#[test]
fn help_exits_with_zero() {
    let (out, _, code) = twistlink(&["--help"]);
    assert_eq!(code, 0);
    for sub in [
        "volume", "table", "cover", "alphamax", "apoly", "roots", "verify",
    ] {
        assert!(out.contains(sub), "{sub} missing from help");
    }
}

#[test]
fn negative_index_is_accepted() {
    let (v, code) = json(&["volume", "-m", "-2", "--alpha", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"][0]["m"], -2);
}

#[test]
fn cover_is_k_times_volume() {
    let (v, code) = json(&["cover", "-m", "1", "-k", "3..6"]);
    assert_eq!(code, 0);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let k = row["k"].as_i64().unwrap();
        let (single, _) = json(&["volume", "-m", "1", "--alpha", &format!("2pi/{k}")]);
        let base = single["results"][0]["volume"].as_f64().unwrap();
        assert_eq!(row["cover_volume"].as_f64().unwrap(), k as f64 * base);
    }
}

#[test]
fn alphamax_round_trips() {
    let (v, _) = json(&["alphamax", "-m", "1", "--tol", "1e-8"]);
    let parsed: AlphaMaxEstimate = serde_json::from_value(v["results"][0].clone()).unwrap();
    assert_eq!(parsed, estimate_alpha_max(1, 1e-8).unwrap());
    assert!(parsed.bracket_width < 1e-8);
}

#[test]
fn apoly_terms_match_text() {
    let (v, code) = json(&["apoly", "-m", "1"]);
    assert_eq!(code, 0);
    let row = &v["results"][0];
    assert_eq!(row["a_first"], row["a_second"]);
    let a = a_polynomial(1).unwrap().a_first;
    assert_eq!(row["a_first"]["poly_text"], a.to_string());
    let terms = row["a_first"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), a.len());
    for t in terms {
        let (e_m, e_l) = (
            t["e_M"].as_u64().unwrap() as u32,
            t["e_L"].as_u64().unwrap() as u32,
        );
        assert_eq!(t["coeff"].as_str().unwrap(), a.coeff(e_m, e_l).to_string());
    }
}

#[test]
fn table_csv_has_one_row_per_angle() {
    let (out, _, code) = twistlink(&[
        "table",
        "-m",
        "1",
        "--angles",
        "0.5,1,pi/2",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("m,alpha,volume,status"));
}

#[test]
fn roots_are_on_the_polynomial() {
    let (v, code) = json(&["roots", "-m", "2", "--alpha", "pi/2"]);
    assert_eq!(code, 0);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for r in rows {
        assert!(r["residual"].as_f64().unwrap() < 1e-10);
    }
}

#[test]
fn verify_suites_deserialize_and_pass() {
    let (v, code) = json(&["verify", "-m", "1", "--seed", "3"]);
    assert_eq!(code, 0);
    let suites: Vec<SuiteResult> = serde_json::from_value(v["results"].clone()).unwrap();
    assert!(suites.len() > 10);
    assert!(suites.iter().all(|s| s.passed));
    let (text, _, _) = twistlink(&["verify", "-m", "1", "--seed", "3"]);
    assert!(text.lines().next().unwrap().contains("m=1"));
    assert!(text.contains("0 failed"));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_twistlink"))
            .args([
                "table", "-m", "2", "--angles", "0.2,1,2", "--format", "json",
            ])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("16"));
}
