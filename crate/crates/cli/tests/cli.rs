use std::process::{Command, Output};

use serde_json::Value;

fn metacyc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metacyc"))
        .args(args)
        .output()
        .expect("run metacyc")
}

fn json(args: &[&str]) -> Value {
    let out = metacyc(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn classify_reports_derived_constants() {
    let v = json(&["classify", "I:5,4,3,2"]);
    assert_eq!(v["family"], "I");
    assert_eq!(v["r"], 5);
    assert_eq!(v["f"], 4);
    assert_eq!(v["z"], -1);
    assert_eq!(v["aut_order_log2"], 11);

    let v = json(&["classify", "II:4,3,2"]);
    assert_eq!(v["family"], "II");
    assert_eq!(v["e"], 2);
    assert_eq!(v["c"], 3);
}

#[test]
fn invalid_parameters_exit_2_and_name_the_constraint() {
    let out = metacyc(&["classify", "I:4,4,5,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("c < min{a, b}"), "{}", stderr(&out));

    let out = metacyc(&["classify", "III:4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("family III"));

    let out = metacyc(&["classify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_3() {
    let out = metacyc(&[
        "--max-bits",
        "10",
        "aut",
        "count",
        "I:4,4,3,2",
        "--method",
        "oracle",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("cap is 2^10"));
}

#[test]
fn formula_and_oracle_counts_agree() {
    for spec in ["I:4,4,3,2", "II:4,3,2"] {
        let f = json(&["aut", "count", spec, "--method", "formula"]);
        let o = json(&["aut", "count", spec, "--method", "oracle"]);
        assert_eq!(f["count"], o["count"], "{spec}");
    }
    assert_eq!(json(&["aut", "count", "II:3,3,2"])["count"], 128);
}

#[test]
fn aut_list_lines_are_automorphisms() {
    let out = metacyc(&["aut", "list", "II:3,3,2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 128);
    assert_eq!(lines[0]["img_alpha"], serde_json::json!([1, 0]));
    assert!(lines
        .iter()
        .all(|l| l.get("x1").is_some() && l.get("img_beta").is_some()));
}

#[test]
fn apply_matches_elem_arithmetic() {
    // φ_{5,0} fixes β and sends α to α^5.
    let v = json(&[
        "aut",
        "apply",
        "I:4,4,3,2",
        "--quad",
        "5,0,0,1",
        "--elem",
        "a^2*b",
    ]);
    assert_eq!(v["image"], serde_json::json!([10, 1]));
    let out = metacyc(&[
        "aut",
        "apply",
        "I:4,4,3,2",
        "--quad",
        "2,0,0,1",
        "--elem",
        "a",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = metacyc(&[
        "aut",
        "apply",
        "I:4,4,3,2",
        "--quad",
        "1,2,3",
        "--elem",
        "a",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn elem_commands() {
    assert_eq!(
        json(&["elem", "mul", "I:4,4,3,2", "a^2*b^3", "a*b"])["result"],
        serde_json::json!([15, 4])
    );
    assert_eq!(json(&["elem", "order", "I:4,4,3,2", "b"])["result"], 32);
    assert_eq!(
        json(&["elem", "pow", "I:4,4,3,2", "b", "16"])["result"],
        serde_json::json!([8, 0])
    );
    let g = json(&["elem", "inv", "II:4,3,2", "a^3*b^5"])["result"].clone();
    let g = format!("a^{}*b^{}", g[0], g[1]);
    assert_eq!(
        json(&["elem", "mul", "II:4,3,2", "a^3*b^5", &g])["result"],
        serde_json::json!([0, 0])
    );
}

#[test]
fn verify_exit_status_follows_the_report() {
    let v = json(&["verify", "II:3,3,2", "--suite", "compose"]);
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().len() >= 4);

    // The e = a-2 structure claims do not hold; the suite reports it.
    let out = metacyc(&["verify", "II:4,3,2", "--suite", "cocycle"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);

    let out = metacyc(&["verify", "I:4,4,3,2", "--suite", "cocycle"]);
    assert_eq!(out.status.code(), Some(2));
    let out = metacyc(&["verify", "I:4,4,3,2", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn structure_report_json() {
    let v = json(&["structure", "I:5,5,4,2"]);
    assert_eq!(v["branch"], "f=c+1, c>=d+2");
    assert_eq!(v["aut_order_log2"], 13);
    assert_eq!(v["x"]["order_log2"], 9);
    assert_eq!(v["x_cap_y"]["order_log2"], 2);
}

#[test]
fn human_output() {
    let out = metacyc(&["--human", "structure", "II:5,4,2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("family II"));
    assert!(text.contains("|Aut|    2^11"));
}
