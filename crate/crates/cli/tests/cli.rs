use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value as Json;

const TWO_BREAKS: &str = r#"{"field":"Q","generators":{"1":["0","1"],"2":["0","1"]}}"#;
const GF2_QUADRATIC: &str = r#"{"field":"gf2","generators":{"1":[1,1,1]}}"#;

fn weylmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylmod")).args(args).env_remove("WEYLMOD_MAX_ENUM").output().unwrap()
}

fn json_of(out: &Output) -> Json {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{}: {}", e, String::from_utf8_lossy(&out.stdout)))
}

fn ok(args: &[&str]) -> Json {
    let out = weylmod(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let j = json_of(&out);
    assert_eq!(j["schema"], "weylmod/1");
    j
}

fn file_with(dir: &tempfile::TempDir, name: &str, j: &Json) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string(j).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn classify_two_breaks() {
    let j = ok(&["block", "classify", TWO_BREAKS]);
    assert_eq!(j["type"], "tame");
    assert_eq!(j["reason"], "break of order 2: string and band modules over the quiver Q2");
}

#[test]
fn nondegenerate_orbit_info() {
    let j = ok(&["orbit", "info", r#"{"field":"Q","generators":{"1":["-1/2","1"]}}"#]);
    assert_eq!(j["degenerate"], false);
    assert_eq!(j["skeleton"], serde_json::json!([{}]));
}

#[test]
fn gf2_simple_and_module_checks() {
    let dir = tempfile::tempdir().unwrap();
    let ideal = file_with(&dir, "ideal.json", &serde_json::from_str(GF2_QUADRATIC).unwrap());
    let list = ok(&["simples", "list", &ideal]);
    assert_eq!(list["count"], 1);
    let m = ok(&["simples", "build", &ideal, "--N", "[1,1,0,1]"]);
    assert_eq!(m["k_dim"], 6);
    let path = file_with(&dir, "module.json", &m);
    assert_eq!(ok(&["module", "verify", &path])["passed"], true);
    let s = ok(&["module", "simple-check", &path]);
    assert_eq!(s["simple"], true);
    assert_eq!(s["exact"], true);
    assert_eq!(ok(&["module", "indec-check", &path])["indecomposable"], true);
}

#[test]
fn exit_codes() {
    let out = weylmod(&["simples", "build", GF2_QUADRATIC, "--N", "[1,0,1]"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"], "NotMaximal");
    let out = weylmod(&["orbit", "info", "{not json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"], "InvalidInput");
    let out = weylmod(&["orbit", "info", r#"{"generators":{}}"#]);
    assert_eq!(out.status.code(), Some(2));
    let out = weylmod(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"], "UsageError");
    let out = weylmod(&["indecomp", "list", r#"{"field":"Q","generators":{"1":["0","1"],"2":["0","1"],"3":["0","1"]}}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"], "WrongBreakOrder");
}

#[test]
fn output_is_deterministic() {
    let args = ["indecomp", "list", TWO_BREAKS, "--max-string", "4", "--poly", r#"["-2","1"]"#];
    let a = weylmod(&args);
    let b = weylmod(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn indecomposables_build_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let list = ok(&["indecomp", "list", TWO_BREAKS, "--max-string", "3", "--poly", r#"["-2","1"]"#]);
    assert_eq!(list["quiver"], "q2");
    assert_eq!(list["all_bands_listed"], false);
    let reps = list["reps"].as_array().unwrap();
    assert!(reps.len() > 10);
    for (k, r) in reps.iter().enumerate() {
        let rep = file_with(&dir, &format!("rep{}.json", k), r);
        let m = ok(&["indecomp", "build", TWO_BREAKS, "--rep", &rep, "--window", "2"]);
        let path = file_with(&dir, &format!("m{}.json", k), &m);
        assert_eq!(ok(&["module", "verify", &path])["passed"], true, "{}", r["name"]);
    }
    let one = ok(&["indecomp", "list", r#"{"field":"Q","generators":{"1":["0","1"]}}"#]);
    assert_eq!(one["count"], 4);
    let short = ok(&["indecomp", "list", r#"{"field":"Q","generators":{"1":["0","1"],"2":["0","1"]}}"#, "--max-string", "2"]);
    assert_eq!(short["all_bands_listed"], false);
}

#[test]
fn oracle_counts() {
    let j = ok(&["oracle", "enumerate", "--quiver", "q2", "--field", "gf2", "--dims", "1,1,1,1"]);
    assert_eq!(j["indecomposable_classes"], 14);
    let j = ok(&["oracle", "enumerate", "--quiver", "q1", "--field", "gf2", "--dims", "1,1"]);
    assert_eq!(j["tuples"], 3);
    assert_eq!(j["indecomposable_classes"], 2);
}

#[test]
fn budget_flag_and_environment() {
    let args = ["oracle", "enumerate", "--quiver", "q1", "--field", "gf2", "--dims", "2,2"];
    let out = Command::new(env!("CARGO_BIN_EXE_weylmod")).args(args).env("WEYLMOD_MAX_ENUM", "8").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"], "EnumerationBudgetExceeded");
    let mut with_flag: Vec<&str> = args.to_vec();
    with_flag.extend(["--budget", "8"]);
    assert_eq!(weylmod(&with_flag).status.code(), Some(1));
    assert_eq!(weylmod(&args).status.code(), Some(0));
}

#[test]
fn heisenberg_commands() {
    let j = ok(&["heisenberg", "graded-dim", "--degree", "0", "--length", "2", "--bound", "2", "--basis"]);
    assert_eq!(j["count"], "3");
    assert_eq!(j["basis"].as_array().unwrap().len(), 3);
    let j = ok(&["heisenberg", "graded-dim", "--degree", "-1", "--len", "1", "--bound", "1"]);
    assert_eq!(j["count"], "1");
    let j = ok(&["heisenberg", "check", "--indices", "3", "--radius", "1"]);
    assert_eq!(j["passed"], true);
    assert_eq!(j["central_charge"], "1");
    let out = weylmod(&["heisenberg", "check", "--lambda", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn skeleton_and_stdin() {
    ok(&["skeleton", "show", TWO_BREAKS]);
    ok(&["skeleton", "show", GF2_QUADRATIC]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_weylmod"))
        .args(["block", "classify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(GF2_QUADRATIC.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["type"], "tame");
}
