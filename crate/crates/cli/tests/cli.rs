//! End-to-end runs of the `kulikov` binary: exit codes, report contents and
//! the fan → complex → quotient file chain.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Self { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }
}

fn kulikov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kulikov")).args(args).output().unwrap()
}

fn run_on(args: &[&str], path: &Path) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.push(path.to_str().unwrap());
    kulikov(&all)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {:?}", out))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

const B22: &str = r#"{"rank": 2, "phi": [[1, 0], [0, 1]], "b": [[2, 0], [0, 2]]}"#;
const B4: &str = r#"{"rank": 1, "phi": [[1]], "b": [[4]]}"#;
const T0: &str = r#"{"rank": 0, "phi": [], "b": []}"#;

#[test]
fn validate_exit_codes() {
    let ws = Workspace::new();
    assert_eq!(code(&run_on(&["validate"], &ws.file("ok.json", B22))), 0);

    let neg = run_on(&["validate"], &ws.file("neg.json", r#"{"rank": 1, "phi": [[1]], "b": [[-2]]}"#));
    assert_eq!(code(&neg), 1);
    assert_eq!(json(&neg)["passed"], false);
    assert!(String::from_utf8_lossy(&neg.stderr).contains("pairing_positive_definite"));

    let missing = run_on(&["validate"], &ws.file("nob.json", r#"{"rank": 1, "phi": [[1]]}"#));
    assert_eq!(code(&missing), 2);
    assert!(missing.stdout.is_empty());

    assert_eq!(code(&run_on(&["validate"], &ws.dir.path().join("absent.json"))), 2);
}

#[test]
fn classify_examples() {
    let ws = Workspace::new();
    let r = json(&run_on(&["classify", "-q"], &ws.file("b22.json", B22)));
    assert_eq!(r["kulikov_type"], "III");
    assert_eq!(r["n_x"], 4);
    assert_eq!(r["delta_x"]["euler_characteristic"], 2);
    assert!(r["consistency"].as_object().unwrap().values().all(|v| v == true));

    let r = json(&run_on(&["classify", "-q"], &ws.file("b4.json", B4)));
    assert_eq!(r["kulikov_type"], "II");
    assert_eq!(r["n_x"], 3);
    assert_eq!(r["delta_x"]["shape"], "chain");

    let r = json(&run_on(&["classify", "-q"], &ws.file("t0.json", T0)));
    assert_eq!(r["kulikov_type"], "I");
    assert_eq!(r["n_x"], 1);
}

#[test]
fn classify_refuses_odd_data_with_exit_one() {
    let ws = Workspace::new();
    let odd = ws.file("odd.json", r#"{"rank": 1, "phi": [[1]], "b": [[3]], "a_basis": [0]}"#);
    let out = run_on(&["classify"], &odd);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not even"));
}

#[test]
fn base_change_examples() {
    let ws = Workspace::new();
    let b4 = ws.file("b4.json", B4);
    let r = json(&run_on(&["base-change", "--e", "3"], &b4));
    assert_eq!((r["n"].clone(), r["n_l"].clone(), r["consistent"].clone()), (3.into(), 7.into(), true.into()));

    let b22 = ws.file("b22.json", B22);
    let r = json(&run_on(&["base-change", "--e", "2"], &b22));
    assert_eq!((r["n"].clone(), r["n_l"].clone(), r["consistent"].clone()), (4.into(), 10.into(), true.into()));

    for path in [&b4, &b22] {
        let r = json(&run_on(&["base-change", "--e", "1"], path));
        assert_eq!(r["n_l"], r["n"]);
    }
    assert_eq!(code(&run_on(&["base-change", "--e", "0"], &b4)), 1);
}

#[test]
fn monodromy_examples() {
    let r = json(&kulikov(&["monodromy", "--toric-rank", "2"]));
    assert_eq!((r["index_h2"].clone(), r["kulikov_type"].clone()), (3.into(), "III".into()));
    let r = json(&kulikov(&["monodromy", "--toric-rank", "0"]));
    assert_eq!((r["index_h2"].clone(), r["kulikov_type"].clone()), (1.into(), "I".into()));

    // g·E₁₃·g⁻¹ with g = Id + E₃₁
    let ws = Workspace::new();
    let conj = ws.file(
        "n.json",
        r#"{"dim": 4, "entries": [["-1","0","1","0"],["0","0","0","0"],["-1","0","1","0"],["0","0","0","0"]]}"#,
    );
    let r = json(&run_on(&["monodromy", "--matrix"], &conj));
    assert_eq!((r["index_h2"].clone(), r["kulikov_type"].clone(), r["rank_n"].clone()), (2.into(), "II".into(), 1.into()));

    let unipotent = ws.file("u.json", r#"{"dim": 4, "entries": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]]}"#);
    assert_eq!(code(&run_on(&["monodromy", "--matrix"], &unipotent)), 1);
    let jordan = ws.file("j.json", r#"{"dim": 4, "entries": [["0","1","0","0"],["0","0","1","0"],["0","0","0","0"],["0","0","0","0"]]}"#);
    let out = run_on(&["monodromy", "--matrix"], &jordan);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("square to zero"));
}

#[test]
fn fan_complex_quotient_chain() {
    let ws = Workspace::new();
    let data = ws.file("b22.json", B22);
    let built = run_on(&["fan", "build", "-q"], &data);
    assert_eq!(code(&built), 0);
    let built_doc = json(&built);
    assert_eq!(built_doc["nu"], 1);
    let fan = ws.file("fan.json", &String::from_utf8(built.stdout).unwrap());

    let checked = kulikov(&["fan", "check", fan.to_str().unwrap(), "--data", data.to_str().unwrap()]);
    assert_eq!(code(&checked), 0);
    assert_eq!(json(&checked)["violations"]["h_free"], Value::Array(vec![]));

    let bare = ws.file("bare.json", &built_doc["fan"].to_string());
    let dual = run_on(&["complex", "dual", "-q"], &bare);
    assert_eq!(code(&dual), 0);
    let dual_doc = json(&dual);
    assert_eq!(dual_doc["vertices"].as_array().unwrap().len(), 4);
    assert!(dual_doc["involution"].is_object());

    let complex = ws.file("dual.json", &dual_doc.to_string());
    let quotient = json(&run_on(&["complex", "quotient", "-q"], &complex));
    let cells = |k: &str| quotient[k].as_array().unwrap().len() as i64;
    assert_eq!(cells("vertices"), 4);
    let chi = cells("vertices") - cells("edges") + cells("triangles");
    assert_eq!(chi, 2);
}

#[test]
fn fan_check_names_failing_certificates() {
    // the unit cube triangulation with period lattice Z² has a fixed vertex
    let ws = Workspace::new();
    let data = ws.file("b22.json", B22);
    let built = json(&run_on(&["fan", "build", "-q"], &data));
    let mut fan = built["fan"].clone();
    fan["lattice"] = serde_json::json!([[1, 0], [0, 1]]);
    let out = run_on(&["fan", "check"], &ws.file("unit.json", &fan.to_string()));
    assert_eq!(code(&out), 1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("h_free") && stderr.contains("property_d"), "{stderr}");
}

#[test]
fn quotient_needs_an_involution() {
    let ws = Workspace::new();
    let built = json(&run_on(&["fan", "build", "-q"], &ws.file("b4.json", B4)));
    let mut dual = json(&run_on(&["complex", "dual", "-q"], &ws.file("fan.json", &built.to_string())));
    dual.as_object_mut().unwrap().remove("involution");
    let out = run_on(&["complex", "quotient"], &ws.file("plain.json", &dual.to_string()));
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no involution"));
}

#[test]
fn window_override_is_guarded() {
    let ws = Workspace::new();
    let data = ws.file("b22.json", B22);
    let small = kulikov(&["classify", data.to_str().unwrap(), "--window", "1"]);
    assert_eq!(code(&small), 1);
    assert!(String::from_utf8_lossy(&small.stderr).contains("safe bound"));
    assert_eq!(code(&kulikov(&["classify", "-q", data.to_str().unwrap(), "--window", "1", "--unsafe"])), 0);
    assert_eq!(code(&kulikov(&["classify", "-q", data.to_str().unwrap(), "--window", "9"])), 0);
    // --unsafe alone is a usage error
    assert_eq!(code(&kulikov(&["classify", data.to_str().unwrap(), "--unsafe"])), 2);
}

#[test]
fn reports_are_byte_identical() {
    let ws = Workspace::new();
    let data = ws.file("b.json", r#"{"rank": 2, "phi": [[1, 0], [0, 1]], "b": [[4, 2], [2, 4]]}"#);
    let a = run_on(&["report", "-q"], &data);
    let b = run_on(&["report", "-q"], &data);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["base_change"].as_array().unwrap().len(), 6);
}

#[test]
fn quiet_silences_the_summary() {
    let ws = Workspace::new();
    let data = ws.file("b4.json", B4);
    assert!(run_on(&["classify", "--quiet"], &data).stderr.is_empty());
    assert!(!run_on(&["classify"], &data).stderr.is_empty());
}
