use std::path::PathBuf;
use std::process::{Command, Output};

use tambara_cli::commands::{export_corpus, export_lens};
use tambara_cli::export::Exporter;
use tambara_cli::resolve::ResolvedOptic;
use tambara_cli::{InstanceFile, Resolved};
use tambara_core::Corpus;

fn lens64() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("instances/lens64.json")
}

fn tambara(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tambara")).args(args).output().unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn minimal_file_checks() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "min.json", r#"{"sets": {"two": ["a", "b"]}}"#);
    let o = tambara(&["check", &f]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn dangling_reference_is_a_resolution_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "bad.json", r#"{"sets": {"a": [0]}, "functions": {"f": {"dom": "a", "cod": "nowhere", "map": []}}}"#);
    let o = tambara(&["check", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nowhere"));
}

#[test]
fn syntax_errors_report_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "bad.json", "{\n  \"sets\": {\"a\": [0]},\n  \"extra\": true\n}\n");
    let o = tambara(&["check", &f]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("line 3") && err.contains("extra"), "{err}");
}

#[test]
fn lawless_category_fails_its_check() {
    // the declared identity `g` does not fix itself: `g ; g = e`
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"categories": {"C": {
        "objects": ["x"],
        "morphisms": [["e", "x", "x"], ["g", "x", "x"]],
        "identities": [["x", "g"]],
        "compose": [["e", "e", "e"], ["e", "g", "e"], ["g", "e", "e"], ["g", "g", "e"]]}}}"#;
    let f = write(&dir, "c.json", text);
    let o = tambara(&["check", &f, "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["checks"][0]["status"], "fail");
    assert!(v["checks"][0]["witness"].is_string());
}

#[test]
fn golden_lens_instance() {
    let p = lens64();
    let p = p.to_str().unwrap();
    assert_eq!(tambara(&["check", p]).status.code(), Some(0));
    let o = tambara(&["optic-hom", p, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["checks"][0]["count"], 64);
}

#[test]
fn golden_lens_is_regenerated_exactly() {
    let text = std::fs::read_to_string(lens64()).unwrap();
    assert_eq!(export_lens([2, 2, 2, 2], 2).unwrap(), text);
    let file = InstanceFile::parse(&text).unwrap();
    assert_eq!(InstanceFile::parse(&file.to_json()).unwrap(), file);
    let r = Resolved::from_file(&file).unwrap();
    let ResolvedOptic::Integrand(i) = &r.optics["lens"] else { panic!("lens is an integrand") };
    let mut ex = Exporter::new();
    ex.optic_integrand("lens", i);
    assert_eq!(ex.file, file);
}

#[test]
fn corpus_instances_round_trip() {
    for seed in 0..12 {
        let text = export_corpus(seed).unwrap();
        let file = InstanceFile::parse(&text).unwrap();
        assert_eq!(file.to_json(), text);
        let r = Resolved::from_file(&file).unwrap();
        r.require_lawful().unwrap();
        let act = Corpus::new(seed).action();
        assert_eq!(*r.actions["X0"], *act, "seed {seed}");
        let mut ex = Exporter::new();
        for q in r.families.values() {
            ex.family(q);
        }
        for m in r.modules.values() {
            ex.module(m);
        }
        let ResolvedOptic::Objects { x, y, inner, outer } = &r.optics["optic"] else { panic!() };
        ex.optic_objects("optic", x, y, *inner, *outer);
        assert_eq!(ex.file.to_json(), text, "seed {seed}");
    }
}

#[test]
fn file_commands_on_a_corpus_instance() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "c.json", &export_corpus(2).unwrap());
    for cmd in ["check", "coend", "end", "optic-hom", "adjunction", "rep-check"] {
        let o = tambara(&[cmd, &f, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&o.stdout));
        assert!(!json(&o)["checks"].as_array().unwrap().is_empty(), "{cmd}");
    }
}

#[test]
fn budget_exhaustion_is_a_resource_limit() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "c.json", &export_corpus(2).unwrap());
    let o = tambara(&["adjunction", &f, "--budget", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(json(&o)["checks"][0]["status"], "resource-limit");
    assert_eq!(tambara(&["dlens-suite", "--max-size", "9"]).status.code(), Some(3));
}

#[test]
fn reports_are_reproducible() {
    let args = ["suite", "--only", "1,4,7,10", "--seed", "5", "--format", "json", "--no-timing"];
    let (a, b) = (tambara(&args), tambara(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn dlens_suite_small() {
    let o = tambara(&["dlens-suite", "--max-size", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let v = json(&o);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn lens_without_a_file() {
    let o = tambara(&["optic-hom", "--lens", "2,2,2,2", "--bound", "2", "--format", "json"]);
    assert_eq!(json(&o)["checks"][0]["count"], 64);
    assert_eq!(tambara(&["suite", "--only", "11"]).status.code(), Some(2));
}
