use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn wbq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wbq")).args(args).env_remove("WBQ_CACHE_DIR").output().expect("binary runs")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn schema_errors(v: &Value) -> Vec<String> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas/result.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    validator.iter_errors(v).map(|e| e.to_string()).collect()
}

#[test]
fn b11_at_rho_one_is_one_block() {
    for field in ["cyclo:4,rho=zeta^0", "qpow:0"] {
        let o = wbq(&["decomp", "--r", "1", "--s", "1", "--field", field]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let v = json_of(&o);
        // rows (1,(∅,∅)) and (0,((1),(1))); only the second label has a simple head
        assert_eq!(v["decomposition"], serde_json::json!([[0, 1], [0, 1]]));
        assert_eq!(v["simple_columns"], serde_json::json!([1]));
        assert_eq!(v["blocks"].as_array().unwrap().len(), 1);
        assert_eq!(v["oracles"]["semisimple"]["computed"], Value::Bool(false));
    }
    let a = json_of(&wbq(&["decomp", "--r", "1", "--s", "1", "--field", "cyclo:4,rho=zeta^0"]));
    let b = json_of(&wbq(&["decomp", "--r", "1", "--s", "1", "--field", "qpow:0"]));
    assert_eq!(a["decomposition"], b["decomposition"]);
    assert_eq!(b["oracles"]["einfty"], Value::Bool(true));
}

#[test]
fn generic_b21_is_identity() {
    let o = wbq(&["decomp", "--r", "2", "--s", "1", "--field", "generic"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["decomposition"], serde_json::json!([[1, 0, 0], [0, 1, 0], [0, 0, 1]]));
    assert_eq!(v["blocks"].as_array().unwrap().len(), 3);
}

#[test]
fn gram_b11_top_label_is_delta() {
    let v = json_of(&wbq(&["gram", "--r", "1", "--s", "1"]));
    let g = &v["grams"][0];
    assert_eq!(g["label"], serde_json::json!({"f": 1, "lambda1": [], "lambda2": []}));
    // δ = (ρ − ρ⁻¹)/(q − q⁻¹)
    assert_eq!(g["matrix"], serde_json::json!([["(q*rho^2 - q)/(q^2*rho - rho)"]]));
    assert_eq!(g["rank"], 1);
}

#[test]
fn schur_weyl_equality() {
    let v = json_of(&wbq(&["schur-weyl", "--n", "2", "--r", "1", "--s", "1"]));
    assert_eq!(v["rank"], 2);
    assert_eq!(v["equal"], Value::Bool(true));
    let v = json_of(&wbq(&["schur-weyl", "--n", "1", "--r", "1", "--s", "1"]));
    assert_eq!(v["rank"], 1);
    assert_eq!(v["equal"], Value::Bool(false));
}

#[test]
fn verify_default_grid_and_filters() {
    let o = wbq(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json_of(&o)["passed"], Value::Bool(true));
    let o = wbq(&["verify", "--only", "relations", "--r", "2", "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
}

#[test]
fn usage_errors_exit_one_with_single_line() {
    for args in [
        vec!["decomp", "--r", "1", "--s", "1", "--field", "cyclo:x"],
        vec!["decomp", "--r", "1"],
        vec!["decomp", "--r", "0", "--s", "1"],
        vec!["verify", "--only", "nonsense"],
        vec!["singular", "--r", "1", "--s", "1", "--f", "1", "--lambda1", "1"],
        vec!["singular", "--r", "1", "--s", "1", "--f", "0", "--lambda1", "1", "--lambda2", "1", "--n", "1"],
        vec!["frobnicate"],
        vec!["cache", "list"],
    ] {
        let o = wbq(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("usage error:"), "{err}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["decomp", "--r", "2", "--s", "2", "--field", "cyclo:3,rho=free"], vec!["gram", "--r", "2", "--s", "1", "--field", "qpow:1"]] {
        let a = wbq(&args);
        let b = wbq(&args);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn outputs_validate_against_schema() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["decomp", "--r", "2", "--s", "1", "--field", "cyclo:4,rho=free"],
        vec!["decomp", "--r", "2", "--s", "1", "--field", "qpow:3"],
        vec!["gram", "--r", "2", "--s", "1"],
        vec!["blocks", "--r", "2", "--s", "2", "--field", "cyclo:3,rho=zeta^1"],
        vec!["semisimple", "--r", "2", "--s", "1", "--field", "cyclo:6,rho=zeta^2"],
        vec!["singular", "--r", "2", "--s", "1", "--f", "1", "--lambda1", "1", "--field", "cyclo:4"],
        vec!["singular", "--r", "2", "--s", "1", "--f", "0", "--lambda1", "1,1", "--lambda2", "1"],
        vec!["schur-weyl", "--r", "2", "--s", "1"],
        vec!["verify", "--only", "rank,routes", "--r", "1", "--s", "1"],
        vec!["cache", "build", "--r", "1", "--s", "1", "--cache-dir", d],
        vec!["cache", "list", "--cache-dir", d],
        vec!["cache", "clear", "--cache-dir", d],
    ];
    for args in runs {
        let o = wbq(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let errs = schema_errors(&json_of(&o));
        assert!(errs.is_empty(), "{args:?}: {errs:?}");
    }
}

#[test]
fn singular_vectors_of_b11() {
    // (1,(∅,∅)) at n = 2 is v₁⊗v₁* + v₂⊗v₂*
    let v = json_of(&wbq(&["singular", "--r", "1", "--s", "1", "--f", "1"]));
    assert_eq!(v["singular_dim"], 1);
    let terms = v["basis"][0].as_array().unwrap();
    let idx: Vec<(Value, Value)> = terms.iter().map(|t| (t["i"].clone(), t["j"].clone())).collect();
    assert_eq!(idx, vec![(serde_json::json!([1]), serde_json::json!([1])), (serde_json::json!([2]), serde_json::json!([2]))]);
    assert!(terms.iter().all(|t| t["coeff"] == "1"));
}

#[test]
fn latex_and_csv_tables() {
    let o = wbq(&["decomp", "--r", "2", "--s", "1", "--output", "latex"]);
    let t = String::from_utf8(o.stdout).unwrap();
    assert!(t.starts_with("\\begin{tabular}") && t.trim_end().ends_with("\\end{tabular}"));
    let o = wbq(&["blocks", "--r", "1", "--s", "1", "--field", "qpow:0", "--output", "csv"]);
    let t = String::from_utf8(o.stdout).unwrap();
    assert_eq!(t.lines().count(), 3);
}

#[test]
fn cache_build_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = json_of(&wbq(&["cache", "build", "--r", "2", "--s", "2", "--field", "generic", "--cache-dir", d]));
    assert_eq!(first["built"], Value::Bool(true));
    let file = dir.path().join(first["file"].as_str().unwrap());
    let bytes = std::fs::read(&file).unwrap();
    let second = json_of(&wbq(&["cache", "build", "--r", "2", "--s", "2", "--field", "generic", "--cache-dir", d]));
    assert_eq!(second["built"], Value::Bool(false));
    assert_eq!(std::fs::read(&file).unwrap(), bytes);
    // a cached run produces the same result as a fresh one
    let cached = wbq(&["decomp", "--r", "2", "--s", "2", "--cache-dir", d]);
    let fresh = wbq(&["decomp", "--r", "2", "--s", "2"]);
    assert_eq!(cached.stdout, fresh.stdout);
    let list = json_of(&wbq(&["cache", "list", "--cache-dir", d]));
    assert_eq!(list["files"].as_array().unwrap().len(), 1);
    let cleared = json_of(&wbq(&["cache", "clear", "--cache-dir", d]));
    assert_eq!(cleared["removed"], 1);
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_wbq")).args(["cache", "build", "--r", "1", "--s", "1"]).env("WBQ_CACHE_DIR", dir.path()).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
