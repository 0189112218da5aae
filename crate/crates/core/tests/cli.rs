//! End-to-end runs of the `germlab` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn fixture(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(rel)
        .display()
        .to_string()
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_germlab"));
    cmd.args(args).env_remove("GERMLAB_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn window<'a>(r: &'a Value, theorem: &str) -> &'a Value {
    r["results"]["windows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|w| w["theorem"] == theorem)
        .unwrap_or_else(|| panic!("no {theorem} entry"))
}

#[test]
fn analyze_cuspidal_edge_window() {
    let r = report(&["analyze", &fixture("germs/cuspidal_edge.json"), "--d", "1"]);
    assert_eq!(r["command"], "analyze");
    assert_eq!(window(&r, "KMA")["window"]["degrees"], json!([1, 2]));
    assert!(r["warnings"]
        .as_array()
        .unwrap()
        .iter()
        .any(|w| w.as_str().unwrap().contains("supplied by the user")));
}

#[test]
fn analyze_refuses_km_for_trivial_extension() {
    let r = report(&[
        "analyze",
        &fixture("germs/cuspidal_edge_trivial_extension.json"),
        "--d",
        "1",
    ]);
    let km = window(&r, "KM");
    assert_eq!(km["applicable"], false);
    assert!(km["reason"].as_str().unwrap().contains("not dimensionally correct"));
}

#[test]
fn analyze_bigerm_computes_d() {
    let r = report(&["analyze", &fixture("germs/bigerm_xy.json")]);
    assert_eq!(r["results"]["d"], 0);
    assert_eq!(window(&r, "KMA")["window"]["degrees"], json!([2]));
}

#[test]
fn mpoints_examples() {
    let edge = fixture("germs/cuspidal_edge.json");
    let r = report(&["mpoints", &edge, "-k", "2"]);
    assert_eq!(r["results"]["dim"]["dim"], 1);
    assert_eq!(r["results"]["expected_dim"], 1);
    assert_eq!(r["results"]["correct"], true);
    let r = report(&["mpoints", &edge, "-k", "2", "--strict"]);
    assert_eq!(r["results"]["dim"]["kind"], "empty");
    let r = report(&[
        "mpoints",
        &fixture("germs/cuspidal_edge_trivial_extension.json"),
        "-k",
        "2",
    ]);
    assert_eq!(r["results"]["dim"]["dim"], 1);
    assert_eq!(r["results"]["expected_dim"], 0);
    assert_eq!(r["results"]["correct"], false);
    assert!(!r["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn icss_and_monodromy_examples() {
    let r = report(&["icss", &fixture("models/bigerm_xy.json")]);
    assert_eq!(r["results"]["reduced_betti"], json!([0, 0, 1]));
    let r = report(&["monodromy", &fixture("matrices/phi6_companion.json")]);
    let m = &r["results"]["matrix"];
    assert_eq!(m["max_jordan"], 1);
    assert_eq!(
        m["supp"],
        json!([
            {"exponent": 1, "order": 6, "value": "exp(2πi·1/6)"},
            {"exponent": 5, "order": 6, "value": "exp(2πi·5/6)"}
        ])
    );
    let r = report(&[
        "monodromy",
        "--propagate",
        &fixture("models/bigerm_cusp_monodromy.json"),
    ]);
    assert_eq!(r["results"]["propagation"][0]["j_bound"], 1);
}

#[test]
fn bigerm_emits_two_branch_germ() {
    let r = report(&["bigerm", "--from-hypersurface", "x*y", "--emit", "germ"]);
    let germ = &r["results"]["emitted"];
    assert_eq!(germ["branches"].as_array().unwrap().len(), 2);
    assert_eq!((germ["n"].clone(), germ["p"].clone()), (json!(2), json!(3)));
}

#[test]
fn bigerm_model_file_matches_fixture() {
    let dir = std::env::temp_dir().join(format!("germlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("xy.json");
    let o = run(&[
        "bigerm",
        "--from-hypersurface",
        "x*y",
        "--emit",
        "model",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(
        written,
        std::fs::read_to_string(fixture("models/bigerm_xy.json")).unwrap()
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        vec![
            "analyze".to_string(),
            fixture("germs/cuspidal_edge.json"),
            "--d".into(),
            "1".into(),
        ],
        vec!["icss".to_string(), fixture("models/two_column.json")],
        vec![
            "monodromy".to_string(),
            "--suite".into(),
            "cm2".into(),
            "--cases".into(),
            "20".into(),
        ],
        vec![
            "analyze".to_string(),
            fixture("germs/whitney_cusp.json"),
            "--d".into(),
            "0".into(),
            "--format".into(),
            "text".into(),
        ],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn json_keys_are_sorted() {
    fn sorted(v: &Value) -> bool {
        match v {
            Value::Object(m) => {
                let keys: Vec<&String> = m.keys().collect();
                keys.windows(2).all(|w| w[0] < w[1]) && m.values().all(sorted)
            }
            Value::Array(a) => a.iter().all(sorted),
            _ => true,
        }
    }
    let out = run(&["analyze", &fixture("germs/whitney_cusp.json"), "--d", "0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert!(sorted(&v));
    let first_keys: Vec<&str> = text.lines().skip(1).take(1).collect();
    assert_eq!(first_keys, ["  \"command\": \"analyze\","]);
}

#[test]
fn exit_codes() {
    let missing = run(&["analyze", "/nonexistent/germ.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("germlab-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        "{\"n\": 2, \"p\": 3, \"branches\": [{\"vars\": [\"x\"], \"components\": [\"x +* y\"]}]}",
    )
    .unwrap();
    assert_eq!(run(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();

    let limited = run_env(
        &["analyze", &fixture("germs/whitney_cusp.json"), "--d", "0"],
        &[("GERMLAB_BUDGET", "pairs=1")],
    );
    assert_eq!(limited.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&limited.stderr).contains("resource limit"));
    let bad_budget = run_env(
        &["icss", &fixture("models/bigerm_xy.json")],
        &[("GERMLAB_BUDGET", "pairs=lots")],
    );
    assert_eq!(bad_budget.status.code(), Some(2));

    let non_cyclotomic = run(&["monodromy", &fixture("matrices/non_cyclotomic.json")]);
    assert_eq!(non_cyclotomic.status.code(), Some(1));
    // an inapplicable theorem is an in-band verdict, not a failure
    let refused = run(&[
        "analyze",
        &fixture("germs/cuspidal_edge_trivial_extension.json"),
        "--d",
        "1",
    ]);
    assert_eq!(refused.status.code(), Some(0));
}
