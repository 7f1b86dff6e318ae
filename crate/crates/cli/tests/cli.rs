use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiverdef"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (serde_json::Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    (serde_json::from_slice(&o.stdout).expect("json output"), o.status.code().unwrap())
}

#[test]
fn trivial_algebra_has_dim_one() {
    let o = run(&["algebra", "check", &data("trivial.toml")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("dim 1"));
    let (v, _) = json(&["algebra", "check", "corpus:D3A2^2,2"]);
    assert_eq!(v["symmetric"], true);
}

#[test]
fn versal_of_simple_is_truncated() {
    let o = run(&["versal", &data("s0.toml")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Truncated(2)"));
    let (v, code) = json(&["versal", "--max-order", "4", &data("beta.toml")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["kind"], "trivial");
    assert_eq!(v["order"], 4);
}

#[test]
fn tau_orbit_of_tube_module() {
    let o = run(&["orbit", &data("u0.toml"), "--functor", "tau", "--cap", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("period 3"));
    let (v, _) = json(&["orbit", &data("u0.toml"), "--functor", "omega", "--cap", "8"]);
    assert_eq!(v["result"]["kind"], "periodic");
}

#[test]
fn module_queries() {
    let (v, _) = json(&["module", "info", &data("top0.toml")]);
    assert_eq!(v["top"], serde_json::json!([1, 0, 0]));
    assert_eq!(v["socle"], serde_json::json!([0, 1, 1]));
    let (v, _) = json(&["hom", &data("s1.toml"), &data("beta.toml")]);
    assert_eq!(v["hom_dim"], 1);
    let (v, _) = json(&["ext", &data("s0.toml"), &data("s1.toml")]);
    assert_eq!(v["ext_dim"], 1);
    let (v, _) = json(&["stable-end", &data("u0.toml")]);
    assert_eq!(v["stable_end_dim"], 1);
}

#[test]
fn syzygy_output_is_a_module_file() {
    let o = run(&["syzygy", &data("beta.toml")]);
    assert!(o.status.success());
    let text = stdout(&o);
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(data("d3r.toml"), dir.path().join("d3r.toml")).unwrap();
    let out = dir.path().join("omega.toml");
    std::fs::write(&out, &text).unwrap();
    let (v, code) = json(&["module", "info", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 3);
}

#[test]
fn complex_tangent_of_socle_inclusion() {
    let (v, code) = json(&["complex", "tangent", &data("socle.toml")]);
    assert_eq!(code, 0);
    assert!(v["t_f"].as_u64().unwrap() >= v["t_f_proflat"].as_u64().unwrap());
}

#[test]
fn bimodule_and_transfer() {
    let o = run(&["bimodule", "verify", &data("syzygy.toml"), "--inverse", &data("cosyzygy.toml")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict Holds"));
    // the regular bimodule is not inverse to the syzygy
    let o = run(&["bimodule", "verify", &data("syzygy.toml"), "--inverse", &data("regular.toml")]);
    assert_eq!(o.status.code(), Some(1));
    let (v, code) = json(&["transfer", &data("s0.toml")]);
    assert_eq!(code, 0);
    assert_eq!(v["stable_end_equal"], true);
    assert_eq!(v["versal_equal"], true);
}

#[test]
fn corpus_report_exit_codes() {
    let o = run(&["corpus", "report", "D3R", "1,2,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("PASS").count(), 9);
    let (v, code) = json(&["--field", "3", "corpus", "report", "D3D2^1,2,2,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["field"], 3);
    let o = run(&["corpus", "list"]);
    assert!(stdout(&o).contains("D3B2^2,2,2"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["hom", "missing.toml", "missing.toml"]).status.code(), Some(2));
    let (v, code) = json(&["corpus", "report", "D3A2^1,2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "usage");
    assert_eq!(run(&["--field", "4", "versal", &data("s0.toml")]).status.code(), Some(2));
    assert_eq!(run(&["ext", "--degree", "0", &data("s0.toml"), &data("s0.toml")]).status.code(), Some(2));
}

#[test]
fn order_below_three_is_rejected() {
    assert_eq!(run(&["versal", "--max-order", "2", &data("s0.toml")]).status.code(), Some(2));
}
