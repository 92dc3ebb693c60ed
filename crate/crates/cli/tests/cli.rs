use std::process::{Command, Output};

use serde_json::Value;

fn combfield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_combfield"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = combfield(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn cell(v: &Value, row: usize, col: &str) -> String {
    v["results"]["rows"][row][col].as_str().unwrap().to_string()
}

fn summary(v: &Value, key: &str) -> String {
    v["results"]["summary"][key].as_str().unwrap().to_string()
}

fn coefficient(v: &Value, eps: &str, g: &str) -> Option<String> {
    v["results"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["eps"] == eps && r["g"] == g)
        .map(|r| r["coefficient"].as_str().unwrap().to_string())
}

#[test]
fn bell_squared_series() {
    let v = json(&["series", "--model", "bell-squared", "--eps-order", "6"]);
    assert_eq!(coefficient(&v, "5", "0").as_deref(), Some("338/15"));
    assert_eq!(coefficient(&v, "4", "0").as_deref(), Some("75/8"));
}

#[test]
fn partitions_at_order_zero() {
    let v = json(&["series", "--model", "partitions", "--eps-order", "0"]);
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 1);
    assert_eq!(coefficient(&v, "0", "0").as_deref(), Some("1"));
}

#[test]
fn phi4_first_coefficient() {
    let v = json(&["series", "--model", "phi4", "--eps-order", "2", "--g-order", "1"]);
    assert_eq!(coefficient(&v, "2", "1").as_deref(), Some("1/8"));
    let f = json(&["series", "--model", "phi4", "--eps-order", "2", "--g-order", "1", "--connected"]);
    assert_eq!(coefficient(&f, "2", "1").as_deref(), Some("1/8"));
    assert_eq!(summary(&f, "function"), "ln Z");
}

#[test]
fn sequences() {
    let p = json(&["seq", "--name", "partitions", "--n", "6"]);
    assert_eq!(summary(&p, "values"), "1,1,2,3,5,7,11");
    let b = json(&["seq", "--name", "bell", "--n", "0"]);
    assert_eq!(summary(&b, "values"), "1");
    let sq = json(&["seq", "--name", "bell-squared", "--n", "4"]);
    assert_eq!(summary(&sq, "values"), "1,1,4,25,225");
    assert_eq!(summary(&sq, "provenance"), "series");
    let s = json(&["seq", "--name", "stirling", "--n", "4"]);
    assert_eq!(cell(&s, 7, "value"), "7");
    assert_eq!(cell(&s, 8, "value"), "6");
}

#[test]
fn verify_checks_pass() {
    let t = json(&["verify", "--check", "topology-identity", "--n", "4"]);
    assert_eq!(t["status"], "pass");
    assert_eq!(summary(&t, "t_n"), "233");
    for check in ["bell-squared", "stirling-model", "oracle-agreement", "exp-log"] {
        let v = json(&["verify", "--check", check, "--n", "4"]);
        assert_eq!(v["status"], "pass", "{check}");
    }
    let small = json(&["verify", "--check", "bell-squared", "--n", "1"]);
    assert_eq!(small["status"], "pass");
}

#[test]
fn enumeration_counts() {
    let pre = json(&["enumerate", "--structure", "preorders", "--n", "4", "--unlabelled"]);
    assert_eq!(summary(&pre, "count"), "33");
    let pos = json(&["enumerate", "--structure", "posets", "--n", "1"]);
    assert_eq!(summary(&pos, "count"), "1");
    let con = json(&["enumerate", "--structure", "posets", "--n", "3", "--connected"]);
    assert_eq!(summary(&con, "count"), "12");
    let d = json(&["enumerate", "--structure", "diagrams", "--n", "3", "--model", "bell-squared"]);
    assert_eq!(summary(&d, "count"), "10");
    assert_eq!(summary(&d, "symmetry_sum"), "25/6");
}

#[test]
fn representatives_are_listed() {
    let v = json(&["enumerate", "--structure", "posets", "--n", "2", "--representatives"]);
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn model_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pairs.json");
    std::fs::write(
        &path,
        r#"{"mode": "finite",
            "lines": [{"arity": 1, "amplitude": [{"coef": "1", "eps": 1, "g": 0}]}],
            "vertices": [{"arity": 2, "amplitude": [{"coef": "1", "eps": 0, "g": 1}]}]}"#,
    )
    .unwrap();
    let v = json(&["series", "--model", path.to_str().unwrap(), "--eps-order", "2", "--g-order", "1"]);
    assert_eq!(coefficient(&v, "2", "1").as_deref(), Some("1/2"));
}

#[test]
fn divergent_model_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("divergent.json");
    std::fs::write(
        &path,
        r#"{"mode": "finite",
            "lines": [{"arity": 2, "amplitude": [{"coef": "1", "eps": 0, "g": 0}]}],
            "vertices": [{"arity": 2, "amplitude": [{"coef": "1", "eps": 0, "g": 0}]}]}"#,
    )
    .unwrap();
    let out = combfield(&["series", "--model", path.to_str().unwrap(), "--eps-order", "2"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn bad_input_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = combfield(&["series", "--model", path.to_str().unwrap(), "--eps-order", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(combfield(&["series", "--model", "nope", "--eps-order", "2"]).status.code(), Some(2));
    assert_eq!(combfield(&["seq", "--name", "fibonacci", "--n", "3"]).status.code(), Some(2));
    assert_eq!(combfield(&["seq"]).status.code(), Some(2));
}

#[test]
fn enumeration_cap_exits_with_2() {
    let out = combfield(&["enumerate", "--structure", "preorders", "--n", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let out = combfield(&["enumerate", "--structure", "preorders", "--n", "7", "--allow-large"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["series", "--model", "bell-squared", "--eps-order", "5", "--format", "json"][..],
        &["verify", "--check", "oracle-agreement", "--n", "3", "--format", "csv"][..],
        &["enumerate", "--structure", "diagrams", "--n", "3", "--representatives"][..],
    ] {
        assert_eq!(combfield(args).stdout, combfield(args).stdout);
    }
}
