use std::path::PathBuf;
use std::process::Command;

use lawkit_cli::dsl::{emit, parse};
use lawkit_core::pretheory::{Pretheory, BUNDLED};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn lawkit(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_lawkit")).args(args).current_dir(root()).output().expect("binary runs");
    (String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap(), out.status.code().unwrap())
}

fn scratch(name: &str, text: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn bundled_files_round_trip() {
    for name in BUNDLED {
        let (text, _, code) = lawkit(&["bundled", name, "--emit"]);
        assert_eq!(code, 0);
        assert_eq!(parse(&text).unwrap().pretheory, Pretheory::bundled(name).unwrap());
        let shipped = std::fs::read_to_string(root().join("presentations").join(format!("{name}.pth"))).unwrap();
        assert_eq!(shipped, emit(&Pretheory::bundled(name).unwrap()));
    }
}

#[test]
fn initial_homs() {
    let (out, _, code) = lawkit(&["hom", "presentations/init.pth", "1", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("hom: 2 classes"), "{out}");
}

#[test]
fn monoid_is_not_a_theory() {
    let (out, _, code) = lawkit(&["check-theory", "presentations/monoid.pth"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("certified"));
}

#[test]
fn initial_is_a_theory() {
    let f = scratch("init-graph.pth", "base graph\n");
    let (out, _, code) = lawkit(&["check-theory", &f, "--bound", "3"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn truncated_hom_is_unknown() {
    let (_, _, code) = lawkit(&["hom", "presentations/monoid.pth", "1", "2", "--bound", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn models_json() {
    let (out, _, code) = lawkit(&["--json", "models", "presentations/monoid.pth", "--size", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    let counts: Vec<u64> = v["data"].as_array().unwrap().iter().map(|r| r["models"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![0, 1, 4]);
}

#[test]
fn iso_monoid_presentations() {
    let (out, _, code) = lawkit(&["iso", "presentations/monoid.pth", "presentations/monoid-redundant.pth"]);
    assert_eq!(code, 0, "{out}");
    let (_, _, code) = lawkit(&["iso", "presentations/monoid.pth", "presentations/category.pth"]);
    assert_eq!(code, 1);
}

#[test]
fn complete_initial() {
    let (out, _, code) = lawkit(&["complete", "presentations/init.pth", "--bound", "3", "--depth", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("complete: theory"), "{out}");
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(lawkit(&["frobnicate"]).2, 3);
    assert_eq!(lawkit(&["experiment", "nope"]).2, 3);
    assert_eq!(lawkit(&["check-theory", "no/such/file.pth"]).2, 4);
    let bad = scratch("bad.pth", "base fin\ngenerator m : 1 -> 2\neq m = id[1]\n");
    let (_, err, code) = lawkit(&["check-theory", &bad]);
    assert_eq!(code, 4);
    assert!(err.contains(":3:"), "{err}");
    assert_eq!(lawkit(&["bundled", "nope", "--emit"]).2, 4);
    assert_eq!(lawkit(&["--help"]).2, 0);
}

#[test]
fn experiments_match_golden_reports() {
    let names = [
        "monoid-census",
        "segal",
        "simplex",
        "groupoid-pushout",
        "involutive-arities",
        "catalan",
        "saturation",
        "coequalizer",
        "eq36",
    ];
    for name in names {
        let (out, _, code) = lawkit(&["--json", "experiment", name]);
        assert_eq!(code, 0, "{name}");
        let golden = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))).unwrap();
        assert_eq!(out, golden, "{name}");
    }
}

#[test]
fn groupoid_pushout_text() {
    let (out, _, code) = lawkit(&["experiment", "groupoid-pushout"]);
    assert_eq!(code, 0);
    assert!(out.contains(": a -> c"));
}
