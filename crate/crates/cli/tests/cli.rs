use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn grachs(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_grachs")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let report = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), report, String::from_utf8(out.stderr).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("grachs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn theta2_is_a_cocycle() {
    let (code, report, _) = grachs(&["gc", "cocycle", "--builtin", "theta2"]);
    assert_eq!(code, 0);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["outputs"]["verdict"], true);
}

#[test]
fn theta2_is_not_a_coboundary() {
    let (code, report, _) = grachs(&["gc", "coboundary", "--builtin", "theta2"]);
    assert_eq!(code, 2);
    assert_eq!(report["outputs"]["verdict"], false);
    assert_eq!(report["certificates"].as_array().unwrap().len(), 1);
}

#[test]
fn empty_vector_is_a_cocycle() {
    let path = scratch("empty.json");
    std::fs::write(&path, r#"{"sig":{"d":2,"colors":0,"oriented":["black"],"connected":true},"terms":[]}"#).unwrap();
    let (code, report, _) = grachs(&["gc", "cocycle", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["outputs"]["verdict"], true);
}

#[test]
fn cohomology_reports_small_classes() {
    let (_, r, _) = grachs(&["cohomology", "--d", "1", "--N", "2", "--k", "3", "--connected"]);
    assert_eq!(r["outputs"]["cohomology_dim"], 1);
    let (_, r, _) = grachs(&["cohomology", "--d", "3", "--N", "3", "--k", "3", "--connected"]);
    assert_eq!(r["outputs"]["cohomology_dim"], 1);
}

#[test]
fn budget_is_enforced() {
    let (code, _, err) = grachs(&["cohomology", "--d", "3", "--N", "4", "--k", "6", "--connected", "--budget", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("budget"), "{err}");
}

#[test]
fn malformed_input_reports_position() {
    let path = scratch("bad.json");
    std::fs::write(&path, "{\n  \"sig\": [\n").unwrap();
    let (code, _, err) = grachs(&["gc", "differential", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn usage_errors_exit_with_one() {
    let (code, _, _) = grachs(&["gc", "frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn poisson_fixture_is_a_lie_bialgebroid() {
    let path = scratch("poisson.json");
    let (code, _, _) = grachs(&["fixtures", "poisson", "--deg", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let p = path.to_str().unwrap();
    let (code, r, _) = grachs(&["bialgebroid", "check", "--data", p]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["violated"], serde_json::json!([]));
    assert_eq!(r["outputs"]["hamiltonian_square_zero"], true);
    let (_, r, _) = grachs(&["bialgebroid", "classify", "--data", p]);
    assert_eq!(r["outputs"]["structure"], "Lie");
}

#[test]
fn psi_only_data_is_quasi_lie() {
    let path = scratch("psi.json");
    let doc = r#"{"m":0,"n":3,"psi":[[[{"coeffs":{}},{"coeffs":{}},{"coeffs":{}}],[{"coeffs":{}},{"coeffs":{}},{"coeffs":{"":"1/1"}}],[{"coeffs":{}},{"coeffs":{"":"-1/1"}},{"coeffs":{}}]],[[{"coeffs":{}},{"coeffs":{}},{"coeffs":{"":"-1/1"}}],[{"coeffs":{}},{"coeffs":{}},{"coeffs":{}}],[{"coeffs":{"":"1/1"}},{"coeffs":{}},{"coeffs":{}}]],[[{"coeffs":{}},{"coeffs":{"":"1/1"}},{"coeffs":{}}],[{"coeffs":{"":"-1/1"}},{"coeffs":{}},{"coeffs":{}}],[{"coeffs":{}},{"coeffs":{}},{"coeffs":{}}]]]}"#;
    std::fs::write(&path, doc).unwrap();
    let (code, r, err) = grachs(&["bialgebroid", "classify", "--data", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(r["outputs"]["structure"], "quasi-Lie");
    assert_eq!(r["outputs"]["hamiltonian"]["quasi_lie"], true);
}

#[test]
fn random_components_are_flagged() {
    let path = scratch("cob.json");
    grachs(&["fixtures", "coboundary", "--seed", "4", "--out", path.to_str().unwrap()]);
    let (code, r, _) = grachs(&["bialgebroid", "check", "--data", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(!r["outputs"]["violated"].as_array().unwrap().is_empty());
}

#[test]
fn bialgebra_fixture_round_trips_and_is_deterministic() {
    let (a, b) = (scratch("bi1.json"), scratch("bi2.json"));
    grachs(&["fixtures", "bialgebra", "--out", a.to_str().unwrap()]);
    grachs(&["fixtures", "bialgebra", "--out", b.to_str().unwrap()]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let (code, r, _) = grachs(&["bialgebroid", "check", "--data", a.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["violated"], serde_json::json!([]));
}

#[test]
fn rep_apply_multiplies_on_the_edgeless_graph() {
    let (g, f) = (scratch("unit.json"), scratch("f.json"));
    std::fs::write(&g, r#"{"sig":{"d":3,"colors":1,"oriented":[],"connected":false},"arity":1,"terms":[{"q":"1","g":{"n":1,"edges":[]}}]}"#).unwrap();
    std::fs::write(&f, r#"{"m":1,"n":1,"terms":[{"x":[2],"p":[0],"xi":[1],"zeta":[],"q":"3/2"}]}"#).unwrap();
    let out = scratch("value.json");
    let (code, r, err) =
        grachs(&["rep", "apply", "--graph", g.to_str().unwrap(), "--function", f.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(r["outputs"]["flavor"], "Bialgebroid");
    let a: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    let b: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(a["terms"][0]["x"], b["terms"][0]["x"]);
    assert_eq!(b["terms"][0]["q"], "3/2");
}

#[test]
fn single_edge_class_is_exact() {
    let (code, r, _) = grachs(&["cohomology", "--d", "3", "--N", "2", "--k", "1", "--connected"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["basis_size"], 1);
    assert_eq!(r["outputs"]["cohomology_dim"], 0);
}

#[test]
fn edge_generator_is_maurer_cartan() {
    let (code, r, _) = grachs(&["gc", "mc-check", "--builtin", "upsilon_s", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["verdict"], true);
}

#[test]
fn theta3_pair_round_trips_through_files() {
    let pair = scratch("pair.json");
    let p = pair.to_str().unwrap();
    let (code, r, _) = grachs(&["theta3", "solve", "--out", p]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["solution_dim"], 1);
    assert_eq!(r["outputs"]["counts"]["vartheta3"], 68);
    assert_eq!(r["outputs"]["counts"]["theta3"], 288);
    let (code, r, _) = grachs(&["theta3", "verify", "--pair", p]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["not_exact_in_bioriented"], true);
    let data = scratch("poisson-theta6.json");
    grachs(&["fixtures", "poisson", "--out", data.to_str().unwrap()]);
    let (code, r, _) = grachs(&["bialgebroid", "theta6", "--data", data.to_str().unwrap(), "--pair", p]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["zero"], true);
}
