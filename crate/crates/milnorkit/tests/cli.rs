use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output};

fn milnorkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_milnorkit")).args(args).output().expect("binary runs")
}

fn results(args: &[&str]) -> Value {
    let out = milnorkit(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(doc["tool"], "milnorkit");
    doc["results"].clone()
}

#[test]
fn braid_milnor_fiber() {
    let r = results(&["milnor", "--name", "braid"]);
    assert_eq!(r["delta1"], serde_json::json!({"1": 5, "3": 1}));
    assert_eq!(r["b1"], 7);
    let fox = results(&["milnor", "--name", "braid", "--method", "fox"]);
    assert_eq!(fox["delta1"], r["delta1"]);
}

#[test]
fn icosidodecahedral_lattice() {
    let r = results(&["lattice", "--name", "icosidodecahedral"]);
    assert_eq!(r["L2"], serde_json::json!({"2": 30, "4": 15}));
    assert_eq!(r["n"], 16);
}

#[test]
fn falk_fiber_schur_multiplier_has_three_torsion() {
    let r = results(&["nilp2", "--name", "falk1", "--fiber"]);
    assert_eq!(r["H2"]["rank"], 12);
    assert_eq!(r["H2"]["torsion"], serde_json::json!([3]));
    let u = results(&["nilp2", "--name", "falk1"]);
    assert_eq!(u["H2"]["torsion"], serde_json::json!([]));
}

#[test]
fn h1cover_from_catalog_presentation() {
    let r = results(&["h1cover", "--name", "deleted_b3"]);
    assert_eq!(r["h1"]["rank"], 7);
    assert_eq!(r["h1"]["torsion"], serde_json::json!([2, 2]));
}

#[test]
fn fiber_ranks_need_a_certificate() {
    let ok = results(&["lcs", "--name", "falk1", "--fiber", "--kmax", "4"]);
    assert_eq!(ok["phi"]["4"]["value"], 6);
    assert_eq!(ok["phi"]["4"]["provenance"], "transfer");
    let refused = milnorkit(&["lcs", "--name", "braid", "--fiber"]);
    assert_eq!(refused.status.code(), Some(3));
    let nilp = milnorkit(&["nilp2", "--name", "braid", "--fiber"]);
    assert_eq!(nilp.status.code(), Some(3));
}

#[test]
fn exit_codes() {
    assert_eq!(milnorkit(&["milnor", "--name", "nonesuch"]).status.code(), Some(2));
    assert_eq!(milnorkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(milnorkit(&["lattice"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = ["cv", "--name", "b3", "--seed", "3"];
    let a = milnorkit(&args);
    let b = milnorkit(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["params"]["seed"], 3);
    assert_eq!(doc["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn file_input_matches_catalog() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    let doc = serde_json::json!({
        "field": "Q",
        "dim": 3,
        "forms": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1]],
    });
    write!(f, "{doc}").unwrap();
    let path = f.path().to_str().unwrap();
    let r = results(&["milnor", "--file", path]);
    assert_eq!(r["b1"], 7);
    let betti = results(&["betti", "--file", path]);
    assert_eq!(betti, results(&["betti", "--name", "braid"]));
}

#[test]
fn pretty_output_is_a_summary() {
    let out = milnorkit(&["betti", "--name", "braid", "--pretty"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("milnorkit betti (braid)"));
    assert!(text.lines().any(|l| l.starts_with("U = ")));
}

#[test]
fn doublecover_and_resonance_run() {
    let r = results(&["resonance", "--name", "braid", "--field", "F2"]);
    assert_eq!(r["R1"].as_array().unwrap().len(), 5);
    assert!(r["beta"]["2"].is_number());
    let d = results(&["doublecover", "--name", "braid", "--alpha", "1,1,1,1,1,1"]);
    assert!(d.is_object());
}
