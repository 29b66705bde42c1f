use std::fs;
use std::path::Path;
use std::process::Command;

use mixjoin_cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use tempfile::TempDir;

struct Output {
    code: i32,
    doc: Value,
    stdout: String,
    stderr: String,
}

fn mixjoin(args: &[&str]) -> Output {
    let argv = std::iter::once("mixjoin").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    let stdout = String::from_utf8(out).unwrap();
    let doc = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    Output {
        code,
        doc,
        stdout,
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, v: &Value) -> String {
    let path = dir.path().join(name);
    fs::write(&path, v.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn zeta_join_figure_eight() {
    let o = mixjoin(&["zeta", "join", "--num1", "1,-3,1", "--den1", "1", "--num2", "[1,-3,1]"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.doc["result"]["num"], json!([1, -9, 16, -9, 1]));
    assert_eq!(o.doc["result"]["den"], json!([1]));
}

#[test]
fn seifert_lambda() {
    let o = mixjoin(&["seifert", "lambda", "-m", "3"]);
    assert_eq!(o.doc["result"], json!([[1, 0], [-1, 1]]));
    let o = mixjoin(&["seifert", "lambda", "-m", "-3"]);
    assert_eq!(o.doc["result"], json!([[1, -1], [0, 1]]));
}

#[test]
fn enhanced_witness() {
    let o = mixjoin(&["enhanced", "witness", "--ell", "2", "--k", "2"]);
    assert_eq!(o.code, EXIT_OK);
    let r = &o.doc["result"];
    assert_eq!((r["invariant"]["mu"].clone(), r["invariant"]["lambda"].clone()), (json!(2), json!(1)));
    assert_eq!(r["variable_count"], json!(3));
    let text = r["polynomial"].as_str().unwrap();
    let back = mixjoin(&["parse", "--poly", text]);
    assert_eq!(back.doc["result"]["text"], json!(text));
}

#[test]
fn enhanced_subcommands() {
    let o = mixjoin(&["enhanced", "brieskorn", "3", "4"]);
    assert_eq!((o.doc["result"]["mu"].clone(), o.doc["result"]["lambda"].clone()), (json!(6), json!(0)));
    let o = mixjoin(&["enhanced", "join", "--mu1", "2", "--lambda1", "1", "--mu2", "3", "--lambda2", "0", "--k", "3"]);
    assert_eq!(o.doc["result"]["mu"], json!(6));
    assert_eq!(o.doc["result"]["lambda"], json!(1));
    assert_eq!(o.doc["result"]["enhanced"], json!([6, 1]));
    let o = mixjoin(&["enhanced", "base-cases"]);
    assert_eq!(o.doc["result"].as_array().unwrap().len(), 3);
    let o = mixjoin(&["enhanced", "witness", "--ell", "0", "--k", "2"]);
    assert_eq!(o.code, EXIT_DOMAIN);
    assert_eq!(o.doc["error"]["code"], json!("enhanced.invalid_ell"));
}

#[test]
fn newton_reports() {
    let o = mixjoin(&["newton", "--poly", "z1^2 + zb2^2", "--samples", "32"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.doc["result"]["convenient"], json!(true));
    assert_eq!(o.doc["result"]["nondegenerate"], json!(true));
    let o = mixjoin(&["newton", "--poly", "z1*zb1", "--nondegenerate"]);
    assert_eq!(o.doc["result"]["nondegenerate"], json!(false));
    assert!(o.doc["result"].get("faces").is_none());
}

#[test]
fn degree_command() {
    let o = mixjoin(&["degree", "--poly", "z1^3*zb1"]);
    assert_eq!(o.doc["result"]["degree"], json!(2));
    assert_eq!(o.doc["result"]["stable"], json!(true));
    let o = mixjoin(&["degree", "--poly", "z1*z2"]);
    assert_eq!(o.doc["error"]["code"], json!("winding.not_one_variable"));
}

#[test]
fn zeta_other_commands() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "cps.json", &json!([[1, -1], [1, -3, 1]]));
    let o = mixjoin(&["zeta", "from-charpolys", &f]);
    assert_eq!(o.doc["result"]["divisor"]["num"], json!([1, -3, 1]));
    assert_eq!(o.doc["result"]["reduced"]["num"], json!([1, -3, 1]));
    assert_eq!(o.doc["result"]["reduced"]["den"], json!([1]));
    let o = mixjoin(&["zeta", "reduced", "--num", "1", "--den", "-1,1"]);
    assert_eq!(o.doc["result"]["num"], json!([1]));
    let o = mixjoin(&["zeta", "composed", "--p", "1,-3,1", "--q", "-1,1"]);
    assert_eq!(o.doc["result"]["product"], json!([1, -3, 1]));
}

#[test]
fn seifert_file_commands() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &json!([[0, -1], [-1, 2]]));
    let b = write(&dir, "b.json", &json!({"entries": [[0, 1], [1, 2]], "k": 1}));
    let o = mixjoin(&["seifert", "congruent", "--depth", "8", &a, &b]);
    assert_eq!(o.doc["result"]["status"], json!("CongruentWitness"));

    let o = mixjoin(&["seifert", "extend", &b, "--b", "0,0", "--eps", "1"]);
    assert_eq!(o.doc["result"]["entries"], json!([[0, 1, 0], [1, 2, 0], [0, 0, 1]]));
    assert!(o.stderr.contains("warning: k = 1"));
    let o = mixjoin(&["--quiet", "seifert", "extend", &b, "--b", "0,0"]);
    assert!(o.stderr.is_empty());

    let t = write(&dir, "t.json", &json!([[1, 0], [-1, 1]]));
    let o = mixjoin(&["seifert", "charpoly", &t]);
    assert_eq!(o.doc["result"]["charpoly"], json!([1, -1, 1]));
    let o = mixjoin(&["seifert", "invariants", &t]);
    assert_eq!(o.doc["result"]["alexander"], json!([1, -1, 1]));
    let o = mixjoin(&["seifert", "tensor", "--n", "1", "--m", "1", &t, &t]);
    assert_eq!(o.doc["result"]["rank"], json!(4));
    let o = mixjoin(&["seifert", "brieskorn", "2", "2", "2"]);
    assert_eq!(o.doc["result"]["entries"], json!([[1]]));
}

#[test]
fn manifest_records_digests() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &json!([[1]]));
    let o = mixjoin(&["--seed", "7", "seifert", "charpoly", &a]);
    let m = &o.doc["manifest"];
    assert_eq!(m["seed"], json!(7));
    let sha = hex::encode(Sha256::digest(fs::read(&a).unwrap()));
    assert_eq!(m["inputs"], json!([{"path": a, "sha256": sha}]));
    assert_eq!(m["command"][0], json!("--seed"));
    assert!(o.stderr.contains("wall time"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--seed", "3", "newton", "--poly", "z1^2*zb1 + z2^3", "--samples", "16"];
    let first = mixjoin(&args);
    assert_eq!(first.code, EXIT_OK);
    assert_eq!(first.stdout, mixjoin(&args).stdout);
}

#[test]
fn json_indent_controls_layout() {
    let compact = mixjoin(&["--json-indent", "0", "seifert", "lambda", "-m", "2"]);
    assert_eq!(compact.stdout.lines().count(), 1);
    let wide = mixjoin(&["--json-indent", "4", "seifert", "lambda", "-m", "2"]);
    assert!(wide.stdout.contains("\n    \"manifest\""));
    assert_eq!(compact.doc["result"], wide.doc["result"]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["zeta", "bogus"][..], &["seifert", "lambda"], &["degree"], &["--seed", "x", "parse"]] {
        let o = mixjoin(args);
        assert_eq!(o.code, EXIT_USAGE, "{args:?}");
        assert!(o.stderr.contains("Usage"), "{args:?}: {}", o.stderr);
        assert!(o.stdout.is_empty());
    }
    assert_eq!(mixjoin(&["--help"]).code, EXIT_OK);
}

#[test]
fn malformed_inputs_report_codes() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "[[1, 2], [3").unwrap();
    let bad = bad.to_str().unwrap();
    let o = mixjoin(&["seifert", "charpoly", bad]);
    assert_eq!((o.code, o.doc["error"]["code"].clone()), (EXIT_DOMAIN, json!("input.json")));
    let o = mixjoin(&["seifert", "charpoly", "/nonexistent/form.json"]);
    assert_eq!(o.doc["error"]["code"], json!("io.read"));
    let ragged = write(&dir, "r.json", &json!([[1, 2], [3]]));
    let o = mixjoin(&["seifert", "charpoly", &ragged]);
    assert_eq!(o.doc["error"]["code"], json!("matrix.ragged"));
    let singular = write(&dir, "s.json", &json!([[2, 0], [0, 1]]));
    let o = mixjoin(&["seifert", "invariants", &singular]);
    assert_eq!(o.doc["error"]["code"], json!("seifert.not_unimodular"));
    let o = mixjoin(&["parse", "--poly", "z1 + * z2"]);
    assert_eq!(o.doc["error"]["code"], json!("poly.syntax"));
    let o = mixjoin(&["zeta", "join", "--num1", "1,x", "--num2", "1"]);
    assert_eq!(o.doc["error"]["code"], json!("input.invalid"));
}

#[test]
fn parse_from_file() {
    let dir = TempDir::new().unwrap();
    let p = mixjoin(&["parse", "--poly", "1/2*z1^2 - (1+2i)*zb2"]);
    let f = write(&dir, "p.json", &p.doc["result"]["polynomial"]);
    let o = mixjoin(&["parse", "--file", &f]);
    assert_eq!(o.doc["result"]["text"], p.doc["result"]["text"]);
    let o = mixjoin(&["parse", "--poly", "z3", "--vars", "2"]);
    assert_eq!(o.doc["error"]["code"], json!("poly.variable_index"));
}

fn pipeline(steps: Value) -> Output {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "script.json", &steps);
    mixjoin(&["pipeline", &f])
}

#[test]
fn pipeline_trefoil_chain() {
    let o = pipeline(json!([
        {"op": "brieskorn_form", "exponents": [2, 3]},
        {"op": "monodromy_charpoly", "input": 0},
        {"op": "zeta_from_charpolys", "input": 1, "n_vars": 2},
        {"op": "reduced_zeta", "input": 2},
    ]));
    assert_eq!(o.code, EXIT_OK);
    let last = &o.doc["result"][3];
    assert_eq!((last["num"].clone(), last["den"].clone()), (json!([1, -1, 1]), json!([1])));
    // A form carries its own k.
    let o = pipeline(json!([
        {"op": "brieskorn_form", "exponents": [2, 3]},
        {"op": "zeta_from_charpolys", "input": 0},
        {"op": "reduced_zeta", "input": 1},
    ]));
    assert_eq!(o.doc["result"][2]["num"], json!([1, -1, 1]));
}

#[test]
fn pipeline_small_cases() {
    let o = pipeline(json!([]));
    assert_eq!((o.code, o.doc["result"].clone()), (EXIT_OK, json!([])));
    let o = pipeline(json!([
        {"op": "lambda_matrix", "m": 2},
        {"op": "join_tensor", "left": 0, "n": 1, "right": 0, "m": 1},
    ]));
    assert_eq!(o.doc["result"][1]["entries"], json!([[-1]]));
}

#[test]
fn pipeline_mixed_operations() {
    let o = pipeline(json!([
        {"op": "divisor", "num": [1, -3, 1]},
        {"op": "divisor_join", "left": 0, "right": 0},
        {"op": "witness", "ell": 3, "k": 2},
        {"op": "parse", "source": "z1^2 + zb2^2"},
        {"op": "convenient", "input": 3},
        {"op": "enhanced", "mu": 2, "lambda": 1, "k": 1},
        {"op": "brieskorn_enhanced", "exponents": [2, 2]},
        {"op": "join_enhanced", "left": 5, "right": 6, "k": 3},
    ]));
    assert_eq!(o.code, EXIT_OK);
    let r = &o.doc["result"];
    assert_eq!(r[1]["num"], json!([1, -9, 16, -9, 1]));
    assert_eq!(r[2]["invariant"]["mu"], json!(3));
    assert_eq!(r[4], json!(true));
    assert_eq!((r[7]["mu"].clone(), r[7]["lambda"].clone()), (json!(2), json!(1)));
}

#[test]
fn pipeline_errors_keep_partial_results() {
    let o = pipeline(json!([
        {"op": "lambda_matrix", "m": 3},
        {"op": "reduced_zeta", "input": 5},
    ]));
    assert_eq!(o.code, EXIT_DOMAIN);
    assert_eq!(o.doc["results"].as_array().unwrap().len(), 1);
    assert_eq!(o.doc["error"]["code"], json!("pipeline.dangling_reference"));
    assert_eq!(o.doc["error"]["step"], json!(1));

    let o = pipeline(json!([
        {"op": "lambda_matrix", "m": 3},
        {"op": "reduced_zeta", "input": 0},
    ]));
    assert_eq!(o.doc["error"]["code"], json!("pipeline.type_mismatch"));

    let o = pipeline(json!([{"op": "frobnicate"}]));
    assert_eq!(o.doc["error"]["code"], json!("pipeline.unknown_operation"));
    let o = pipeline(json!([{"op": "lambda_matrix", "m": 0}]));
    assert_eq!(o.doc["error"]["code"], json!("seifert.zero_index"));
    let o = pipeline(json!({"op": "lambda_matrix"}));
    assert_eq!(o.doc["error"]["code"], json!("input.invalid"));
}

#[test]
fn binary_exit_codes() {
    let bin = Path::new(env!("CARGO_BIN_EXE_mixjoin"));
    let ok = Command::new(bin).args(["--quiet", "seifert", "lambda", "-m", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(doc["result"], json!([[1, 0], [-1, 1]]));
    let domain = Command::new(bin).args(["--quiet", "seifert", "lambda", "-m", "0"]).output().unwrap();
    assert_eq!(domain.status.code(), Some(1));
    let usage = Command::new(bin).args(["seifert"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
