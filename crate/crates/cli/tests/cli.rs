use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cellalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellalg")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn build_quiver_writes_six_dimensional_datum() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.json");
    let o = cellalg(&["build", "--family", "quiver", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = read_json(&out);
    assert_eq!(v["format_version"], 1);
    let t_sets = v["body"]["t_sets"].as_array().unwrap();
    let dim: usize = t_sets.iter().map(|t| t.as_array().unwrap().len().pow(2)).sum();
    assert_eq!(dim, 6);
    assert_eq!(v["content_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn build_bubble_to_stdout() {
    let o = cellalg(&["build", "--family", "bubble", "--n", "2", "--m", "2", "--delta", "3", "--delta", "5"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let dim: usize = v["body"]["t_sets"].as_array().unwrap().iter().map(|t| t.as_array().unwrap().len().pow(2)).sum();
    assert_eq!(dim, 10);
}

#[test]
fn invalid_input_exits_with_two() {
    assert_eq!(code(&cellalg(&["build", "--family", "matrix", "--n", "0"])), 2);
    assert_eq!(code(&cellalg(&["build", "--family", "bubble", "--n", "2", "--m", "2", "--delta", "3"])), 2);
    assert_eq!(code(&cellalg(&["build", "--family", "nonsense"])), 2);
    assert_eq!(code(&cellalg(&["build", "--family", "tl", "--n", "2", "--delta", "1", "--field", "gf(4)"])), 2);
    assert_eq!(code(&cellalg(&["report", "/definitely/not/here.json"])), 2);
    assert_eq!(code(&cellalg(&["report", "--family", "quiver", "--sections", "bogus"])), 2);
}

#[test]
fn cached_builds_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let o = cellalg(&[
            "build", "--family", "pnm", "--n", "2", "--m", "2", "--delta", "5", "--delta", "7",
            "--cache", cache.to_str().unwrap(), "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
}

#[test]
fn quiver_full_report() {
    let dir = tempfile::tempdir().unwrap();
    let (alg, rep) = (dir.path().join("q.json"), dir.path().join("r.json"));
    assert_eq!(code(&cellalg(&["build", "--family", "quiver", "--out", alg.to_str().unwrap()])), 0);
    let o = cellalg(&["report", alg.to_str().unwrap(), "--out", rep.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = read_json(&rep);
    let section = |name: &str| v["sections"].as_array().unwrap().iter().find(|s| s["section"] == name).unwrap().clone();
    assert_eq!(section("blocks")["data"]["direct"]["blocks"], serde_json::json!([["λ1", "λ2"]]));
    assert_eq!(section("gram")["data"]["radicals"][1]["radical_isomorphic_to"], serde_json::json!(["λ2"]));
}

#[test]
fn reports_are_deterministic() {
    let args = ["report", "--family", "bubble", "--n", "2", "--m", "2", "--delta", "1", "--delta", "3", "--seed", "9"];
    let (a, b) = (cellalg(&args), cellalg(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn matrix_report_is_semisimple() {
    let o = cellalg(&["report", "--family", "matrix", "--n", "3", "--sections", "simples,loewy"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sections"][0]["data"]["semisimple_by_gram"], true);
    assert_eq!(v["sections"][1]["data"]["decomposition"]["entries"], serde_json::json!([[1]]));
}

#[test]
fn bubble_three_points_report_passes() {
    let o = cellalg(&["report", "--family", "bubble", "--n", "3", "--m", "2", "--delta", "1", "--delta", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn prime_field_loewy_is_unsupported_but_succeeds() {
    let o = cellalg(&["report", "--family", "tl", "--n", "3", "--delta", "1", "--field", "gf(5)", "--sections", "loewy"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sections"][0]["status"], "unsupported");
}

#[test]
fn verify_and_oracle_subcommands() {
    let o = cellalg(&["verify", "--family", "bubble", "--n", "2", "--m", "2", "--delta", "0", "--delta", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = cellalg(&["oracle", "--family", "pnm", "--n", "1", "--m", "1", "--delta", "0"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sections"][0]["data"]["semisimple"], false);
    let o = cellalg(&["oracle", "--family", "tl", "--n", "3", "--delta", "-1"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn custom_json_round_trip_and_failure() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("m.json");
    assert_eq!(code(&cellalg(&["build", "--family", "matrix", "--n", "2", "--out", alg.to_str().unwrap()])), 0);
    let mut body = read_json(&alg)["body"].clone();
    body.as_object_mut().unwrap().remove("kind");
    let datum = dir.path().join("datum.json");
    std::fs::write(&datum, body.to_string()).unwrap();
    let o = cellalg(&["verify", "--family", "custom-json", "--input", datum.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    body["star"] = serde_json::json!([1, 0, 2, 3]);
    std::fs::write(&datum, body.to_string()).unwrap();
    let o = cellalg(&["verify", "--family", "custom-json", "--input", datum.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&cellalg(&["build", "--family", "custom-json"])), 2);
}
