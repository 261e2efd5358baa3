use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn samelson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_samelson")).args(args).output().unwrap()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    format!("file:{}", p.display())
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = samelson(&all);
    (code(&o), serde_json::from_slice(&o.stdout).unwrap_or(Value::Null))
}

fn suite<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["results"]["suites"].as_array().unwrap().iter().find(|s| s["name"] == name).unwrap()
}

#[test]
fn verify_builtins_pass() {
    for args in [vec!["verify", "--model", "su3"], vec!["verify", "--model", "g2", "--structure", "plus"]] {
        let (c, r) = json(&args);
        assert_eq!(c, 0, "{r}");
        assert_eq!(suite(&r, "bicomplex")["status"], "pass");
        assert_eq!(suite(&r, "duality")["status"], "pass");
    }
}

#[test]
fn verify_star_check_on_su3() {
    let (c, r) = json(&["verify", "--model", "su3", "--star"]);
    assert_eq!(c, 0);
    assert!(suite(&r, "duality")["detail"].as_str().unwrap().contains("Hodge star"));
}

#[test]
fn verify_broken_model_reports_jacobi_witness() {
    let model = fixture("broken.json");
    let (c, r) = json(&["verify", "--model", &model]);
    assert_eq!(c, 1);
    let j = suite(&r, "jacobi");
    assert_eq!(j["status"], "fail");
    assert!(j["detail"].as_str().unwrap().starts_with("fails on (e"));
    assert_eq!(suite(&r, "bicomplex")["status"], "skipped");
}

#[test]
fn file_model_with_parameter() {
    let model = fixture("su3.json");
    let (c, r) = json(&["verify", "--model", &model, "--structure", "0,-1"]);
    assert_eq!(c, 0, "{r}");
    let (c, r) = json(&["diamond", "--model", &model, "--structure", "0,-1", "--kind", "dolbeault"]);
    assert_eq!(c, 0);
    assert_eq!(r["results"]["table"][0][1], 1);
}

#[test]
fn diamonds_match_printed_tables() {
    for (model, kind) in [("su3", "bott_chern"), ("su3", "dolbeault"), ("spin5", "dolbeault"), ("spin5", "bott_chern")] {
        let (c, r) = json(&["diamond", "--model", model, "--kind", kind, "--expect", "paper"]);
        assert_eq!(c, 0, "{model} {kind}");
        assert_eq!(r["results"]["golden"], "match");
    }
    let o = samelson(&["diamond", "--model", "spin5", "--structure", "minus", "--kind", "bc", "--expect", "paper"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn g2_bott_chern_has_no_golden() {
    let o = samelson(&["diamond", "--model", "g2", "--kind", "bott_chern"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("no paper golden"));
    assert!(text.lines().nth(1).unwrap().trim() == "1");
}

#[test]
fn de_rham_betti_numbers() {
    let (c, r) = json(&["diamond", "--model", "su3", "--kind", "de_rham"]);
    assert_eq!(c, 0);
    assert_eq!(r["results"]["betti"], serde_json::json!([1, 0, 0, 1, 0, 1, 0, 0, 1]));
}

#[test]
fn class_examples() {
    let (c, r) = json(&["class", "--model", "su3", "--kind", "aeppli", "--form", "omega"]);
    assert_eq!(c, 0);
    assert_eq!(r["results"]["verdict"], "nonzero");
    assert_eq!(r["results"]["coordinates"].as_array().unwrap().len(), 1);
    let (c, r) = json(&["class", "--model", "su3", "--kind", "dolbeault", "--form", "[|4]"]);
    assert_eq!(c, 0);
    assert_eq!(r["results"]["verdict"], "nonzero");
    let (c, r) = json(&["class", "--model", "su3", "--kind", "dolbeault", "--form", "[1|1]"]);
    assert_eq!(c, 0);
    assert_eq!(r["results"]["verdict"], "not_closed");
    let o = samelson(&["class", "--model", "su3", "--kind", "aeppli", "--form", "-i[14|] - i[1|4] + i[23|]"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bidegree"));
}

#[test]
fn class_reads_json_form_file() {
    let path = std::env::temp_dir().join(format!("samelson-form-{}.json", std::process::id()));
    std::fs::write(&path, r#"[{"holo": [], "anti": [4], "coeff": ["1/1", "0/1", "0/1", "0/1"]}]"#).unwrap();
    let arg = format!("@{}", path.display());
    let (c, r) = json(&["class", "--model", "su3", "--kind", "dolbeault", "--form", &arg]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(c, 0);
    assert_eq!(r["results"]["verdict"], "nonzero");
}

#[test]
fn flow_from_bi_invariant_metric() {
    let (c, r) = json(&["flow", "--model", "su3", "--eps", "0"]);
    assert_eq!(c, 0);
    let run = &r["results"]["runs"][0];
    assert_eq!(run["verdict"], "converged");
    assert_eq!(run["lambda"], 1.0);
    assert_eq!(run["steps"], 0);
}

#[test]
fn flow_converges_and_conserves_lambda() {
    let (c, r) = json(&["flow", "--model", "su3", "--eps", "0.05", "--seed", "7"]);
    assert_eq!(c, 0);
    let run = &r["results"]["runs"][0];
    assert_eq!(run["verdict"], "converged");
    assert!(run["lambda_drift_rate"].as_f64().unwrap() < 1e-8);
    assert!(run["final_state"]["ricci_norm"].as_f64().unwrap() < 1e-8);
    assert!(run["trajectory"].as_array().unwrap().len() >= 2);
}

#[test]
fn g2_minus_flow_converges() {
    let (c, r) = json(&["flow", "--model", "g2", "--eps", "0.02", "--structure", "minus", "--every", "0"]);
    assert_eq!(c, 0, "{}", r["results"]["runs"][0]["verdict"]);
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    for args in [
        vec!["flow", "--model", "spin5", "--eps", "0.05", "--seed", "3", "--runs", "3"],
        vec!["diamond", "--model", "su3", "--kind", "aeppli"],
        vec!["class", "--model", "spin5", "--kind", "bott_chern", "--form", "omega"],
    ] {
        let a = strip(json(&args).1);
        let b = strip(json(&args).1);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["verify", "--model", "e8"],
        vec!["verify", "--model", "su3", "--structure", "minus"],
        vec!["verify", "--model", "su3", "--structure", "1,0"],
        vec!["diamond", "--model", "su3", "--kind", "sideways"],
        vec!["flow", "--model", "su3", "--dt", "-1"],
        vec!["flow", "--model", "su3", "--structure", "1,2"],
    ] {
        assert_eq!(code(&samelson(&args)), 2, "{args:?}");
    }
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("samelson-out-{}.json", std::process::id()));
    let o = samelson(&["models", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(r["results"]["models"].as_array().unwrap().len(), 3);
}

#[test]
fn exact_mode_writes_trajectory_lines() {
    let path = std::env::temp_dir().join(format!("samelson-traj-{}.jsonl", std::process::id()));
    let (c, r) = json(&[
        "flow", "--model", "spin5", "--eps", "0.05", "--seed", "2", "--mode", "exact", "--steps", "50000", "--every", "500",
        "--trajectory", path.to_str().unwrap(),
    ]);
    assert_eq!(c, 0);
    let run = &r["results"]["runs"][0];
    assert!(run["max_exactness_residual"].as_f64().unwrap() < 1e-10);
    let lines: Vec<Value> =
        std::fs::read_to_string(&path).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(lines.len(), run["trajectory"].as_array().unwrap().len());
    for key in ["t", "H", "ricci_norm", "lambda"] {
        assert!(lines.iter().all(|l| !l[key].is_null()), "{key}");
    }
    assert_eq!(lines[0]["t"], 0.0);
    assert_eq!(lines[0]["H"].as_array().unwrap().len(), 5);
}
