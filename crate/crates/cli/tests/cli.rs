use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const K5: &str = "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigenclique")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.display().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn gen(dir: &TempDir, name: &str, family: &str) -> String {
    let p = dir.path().join(name).display().to_string();
    let out = run(&["gen", "--family", family, "--output", &p]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(Path::new(&p).exists());
    p
}

#[test]
fn k5_spectrum() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "k5.txt", K5);
    let out = run(&["spectrum", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["toolkit"], "eigenclique");
    assert!((v["report"]["lambda_min"].as_f64().unwrap() + 1.0).abs() < 1e-9);
    assert!((v["report"]["lambda_max"].as_f64().unwrap() - 4.0).abs() < 1e-9);
}

#[test]
fn empty_file_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "empty.txt", "");
    let out = run(&["spectrum", "--input", &input]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_input_exits_one() {
    assert_eq!(run(&["spectrum"]).status.code(), Some(1));
}

#[test]
fn bad_usage_exits_one_and_help_zero() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn dense_random_graph_verifies() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "g.txt", "gnp:100,0.5,9");
    let out = run(&["spectrum", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "holds");
    let out = run(&["clique", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["verified"], true);
}

#[test]
fn clique_union_recovers_a_block() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "cu.txt", "clique-union:64,64,64");
    let out = run(&["clique", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["size"], 64);
}

#[test]
fn single_vertex_and_edgeless() {
    let dir = TempDir::new().unwrap();
    let k1 = write(&dir, "k1.txt", "1 0\n");
    let v = json(&run(&["clique", "--input", &k1]));
    assert_eq!(v["report"]["clique"], serde_json::json!([0]));
    let e = write(&dir, "e.txt", "10 0\n");
    let out = run(&["clique", "--input", &e]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["size"], 1);
}

#[test]
fn pipeline_errors_name_the_phase() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "g.txt", "gnp:40,0.5,1");
    let out = run(&["clique", "--input", &input, "--params", "gamma=5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("phase 1"));
}

#[test]
fn chowla_sets() {
    let v = json(&run(&["chowla", "--set", "1"]));
    // odd cycle on the chosen modulus
    let n = v["report"]["n"].as_f64().unwrap();
    let expected = -2.0 * (std::f64::consts::PI / n).cos();
    assert!((v["report"]["lambda_min"].as_f64().unwrap() - expected).abs() < 1e-9);
    let out = run(&["chowla", "--set", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["report"]["residual"].as_f64().unwrap() < 1e-9);
    assert_eq!(run(&["chowla", "--set", "0,1"]).status.code(), Some(1));
    assert_eq!(run(&["chowla", "--set", "-3"]).status.code(), Some(1));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let input = gen(&dir, "g.txt", "gnp:60,0.3,4");
    for cmd in ["spectrum", "clique", "maxcut", "decompose"] {
        let a = run(&[cmd, "--input", &input, "--seed", "3"]);
        let b = run(&[cmd, "--input", &input, "--seed", "3"]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn output_file_and_text_format() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "k5.txt", K5);
    let out_path = dir.path().join("r.txt").display().to_string();
    let out = run(&["bisect", "--input", &input, "--format", "text", "--output", &out_path]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&out_path).unwrap();
    assert!(text.contains("toolkit: \"eigenclique\""));
}

#[test]
fn unknown_param_rejected() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "k5.txt", K5);
    let out = run(&["maxcut", "--input", &input, "--params", "bogus=1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
}

#[test]
fn maxcut_small_graph() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "k5.txt", K5);
    let out = run(&["maxcut", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["cut"]["value"], 6);
}
