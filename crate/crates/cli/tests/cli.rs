//! Runs the binary against the fixture corpus. Golden reports live in
//! `tests/golden`; set `UPDATE_GOLDEN=1` to rewrite them.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

fn knotoid(args: &[&str]) -> Output {
    knotoid_with(args, None, &[])
}

fn knotoid_with(args: &[&str], stdin: Option<&[u8]>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_knotoid"));
    cmd.args(args).current_dir(fixtures()).env_remove("KNOTOID_MAX_STATES");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(bytes) = stdin {
            pipe.write_all(bytes).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn golden(name: &str, o: &Output) {
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &o.stdout).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap();
    assert_eq!(String::from_utf8_lossy(&o.stdout), want, "{name}");
}

#[test]
fn golden_certify_kinoshita() {
    let o = knotoid(&["certify", "kinoshita.json"]);
    golden("certify_kinoshita", &o);
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["status"], "exact");
    assert_eq!((v["h_plus"].as_u64(), v["h_minus"].as_u64()), (Some(1), Some(1)));
    assert_eq!(v["minimal_sequences"], serde_json::json!(["+-"]));
}

#[test]
fn golden_invariants_cloud() {
    let o = knotoid(&["invariants", "cloud.json"]);
    golden("invariants_cloud", &o);
    let v = json(&o);
    assert_eq!(v["index_polynomial"], "1 - t");
    // The same polynomial as -A^-2 + 2*A^-6 - A^-10, printed in ascending order.
    let u2: knotoid::Laurent1 = v["normalized_turaev_by_u"]["2"].as_str().unwrap().parse().unwrap();
    assert_eq!(u2, knotoid::Laurent1::parse_with("-A^-2 + 2*A^-6 - A^-10", knotoid::Var::A).unwrap());
}

#[test]
fn golden_validate_and_seq() {
    golden("validate_bifoil", &knotoid(&["validate", "bifoil.json"]));
    golden("seq_spiral", &knotoid(&["seq", "spiral.json"]));
}

#[test]
fn golden_search_cloud() {
    let o = knotoid(&["search", "cloud.json", "--budget-crossings", "5", "--budget-height", "4"]);
    golden("search_cloud", &o);
    let v = json(&o);
    assert_eq!(v["minimal_sequences"], serde_json::json!(["+-", "-+"]));
}

#[test]
fn golden_lift_spiral() {
    golden("lift_spiral_2", &knotoid(&["lift", "--n", "2", "spiral.json"]));
}

#[test]
fn rot_then_seq_through_pipe() {
    let op = knotoid(&["op", "--kind", "rot", "kinoshita.json"]);
    assert!(op.status.success());
    let seq = knotoid_with(&["seq", "-"], Some(&op.stdout), &[]);
    assert!(seq.status.success());
    assert_eq!(json(&seq)["seq"], "-+");
}

#[test]
fn closures_of_kinoshita_are_unknots() {
    for mode in ["over", "under"] {
        let c = knotoid(&["closure", "--mode", mode, "kinoshita.json"]);
        assert!(c.status.success());
        let inv = knotoid_with(&["invariants", "-"], Some(&c.stdout), &[]);
        assert_eq!(json(&inv)["normalized_bracket"], "1", "{mode}");
    }
}

#[test]
fn product_certifies_additively() {
    let p = knotoid(&["product", "bifoil.json", "bifoil.json"]);
    assert!(p.status.success());
    let c = knotoid_with(&["certify", "-"], Some(&p.stdout), &[]);
    let v = json(&c);
    assert_eq!((v["h_plus"].as_u64(), v["h_minus"].as_u64()), (Some(2), Some(0)));
    assert_eq!(v["minimal_sequences"], serde_json::json!(["++"]));
}

#[test]
fn reports_are_deterministic() {
    for args in [&["invariants", "kinoshita.json"][..], &["search", "bifoil.json", "--budget-crossings", "3"][..]] {
        let a = knotoid(args);
        let b = knotoid(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let bad_json = knotoid_with(&["validate", "-"], Some(b"{\n  \"vertices\": [\n"), &[]);
    assert_eq!(bad_json.status.code(), Some(1));
    let err = String::from_utf8_lossy(&bad_json.stderr);
    assert!(err.contains("line") && err.contains("column"), "{err}");

    assert_eq!(knotoid(&["lift", "--n", "0", "spiral.json"]).status.code(), Some(2));
    assert_eq!(knotoid(&["op", "--kind", "flip", "spiral.json"]).status.code(), Some(2));
    assert_eq!(knotoid(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(knotoid(&["invariants", "missing.json"]).status.code(), Some(1));

    let partial = knotoid(&["search", "kinoshita.json", "--budget-states", "10"]);
    assert_eq!(partial.status.code(), Some(3));
    assert_eq!(json(&partial)["search"]["partial"], true);
}

#[test]
fn invalid_diagram_is_reported() {
    // A crossing whose slots are wired so the map needs a handle.
    let text = std::fs::read_to_string(fixtures().join("bifoil.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    let edges = v["edges"].as_array_mut().unwrap();
    let (a, b) = (edges[0]["to"].clone(), edges[1]["to"].clone());
    edges[0]["to"] = b;
    edges[1]["to"] = a;
    let o = knotoid_with(&["validate", "-"], Some(v.to_string().as_bytes()), &[]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert_eq!(r["valid"], false);
    assert!(!r["violations"].as_array().unwrap().is_empty());
    let o = knotoid_with(&["invariants", "-"], Some(v.to_string().as_bytes()), &[]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn out_flag_and_budget_sources() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let config = dir.path().join("k.toml");
    std::fs::write(&config, "max_crossings = 2\nmax_states = 40\n").unwrap();
    let o = knotoid(&["search", "bifoil.json", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["budget"]["max_crossings"], 2);
    assert_eq!(v["budget"]["max_states"], 40);
    assert_eq!(v["budget"]["max_height"], 3);

    let o = knotoid_with(
        &["search", "bifoil.json", "--config", config.to_str().unwrap()],
        None,
        &[("KNOTOID_MAX_STATES", "30")],
    );
    assert_eq!(json(&o)["budget"]["max_states"], 30);
    let o = knotoid_with(
        &["search", "bifoil.json", "--config", config.to_str().unwrap(), "--budget-states", "25"],
        None,
        &[("KNOTOID_MAX_STATES", "30")],
    );
    assert_eq!(json(&o)["budget"]["max_states"], 25);

    std::fs::write(&config, "max_depth = 3\n").unwrap();
    assert_eq!(knotoid(&["search", "bifoil.json", "--config", config.to_str().unwrap()]).status.code(), Some(2));
}
