use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fx(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_esnlab")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = run(&all);
    (code(&o), serde_json::from_slice(&o.stdout).expect("json report"))
}

fn check<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn check_inverse_lists_idempotents() {
    let (c, v) = json(&["check", "--inverse", &fx("b2_5_415.cay")]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["idempotents"], serde_json::json!([1, 4, 5]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn check_text_mentions_structure() {
    let o = run(&["check", "--inverse", &fx("b2_5_415.cay")]);
    let s = stdout(&o);
    assert!(s.contains("idempotents: {1,4,5}"), "{s}");
    assert!(s.contains("2: 4->5 3: 5->4"), "{s}");
}

#[test]
fn check_double_inverse_on_projections_fails_with_witness() {
    let (c, v) = json(&["check", "--double-inverse", &fx("projections_pair.cay")]);
    assert_eq!(c, 1);
    let w = check(&v, "double_inverse")["witness"].as_str().unwrap();
    assert!(w.contains("more than one"), "{w}");
}

#[test]
fn check_double_accepts_projections() {
    assert_eq!(code(&run(&["check", "--double", &fx("projections_pair.cay")])), 0);
}

#[test]
fn check_hop_vop_files() {
    let dir = tempfile::tempdir().unwrap();
    let (h, v) = (dir.path().join("h.cay"), dir.path().join("v.cay"));
    std::fs::write(&h, "2\n1 2\n2 1\n").unwrap();
    std::fs::write(&v, "2\n1 2\n2 1\n").unwrap();
    let o = run(&["check", "--double-inverse", "--hop", h.to_str().unwrap(), "--vop", v.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn check_semigroup_on_nonassociative_gives_triple() {
    let (c, v) = json(&["check", "--semigroup", &fx("nonassociative.cay")]);
    assert_eq!(c, 1);
    assert_eq!(check(&v, "semigroup")["witness"], "(1*1)*2 != 1*(1*2)");
}

#[test]
fn mixing_single_and_pair_checks_is_usage_error() {
    assert_eq!(code(&run(&["check", "--inverse", "--double", &fx("z2_pair.cay")])), 2);
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = ["", "x", "2\n1 2\n", "2\n1 3\n1 1\n", "0\n", "300\n", "2\n1 2\n2 1\n\n2\n1 1\n", "{"];
    for (i, text) in cases.iter().enumerate() {
        let p = dir.path().join(format!("bad{i}.cay"));
        std::fs::write(&p, text).unwrap();
        let p = p.to_str().unwrap();
        for args in [
            vec!["check", "--inverse", p],
            vec!["check", "--double", p],
            vec!["esn", "to-groupoid", p],
            vec!["esn", "to-semigroup", p],
            vec!["double", "to-dis", p],
            vec!["decompose", p],
            vec!["compose", p],
        ] {
            let o = run(&args);
            assert_eq!(code(&o), 2, "{args:?} on {text:?}: {}", String::from_utf8_lossy(&o.stderr));
            assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
        }
    }
}

#[test]
fn missing_file_and_bad_flags_exit_two() {
    assert_eq!(code(&run(&["check", "/nonexistent/x.cay"])), 2);
    assert_eq!(code(&run(&["search", "--order", "9"])), 2);
    assert_eq!(code(&run(&["search", "--order", "2", "--class", "bogus"])), 2);
    assert_eq!(code(&run(&["search", "--order", "2", "--pairs", "--noncommutative"])), 2);
    assert_eq!(code(&run(&["--jobs", "0", "search", "--order", "2"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn esn_to_groupoid_reports_arrows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.json");
    let o = run(&["--out", out.to_str().unwrap(), "esn", "to-groupoid", "--roundtrip", &fx("b2_5_415.cay")]);
    assert_eq!(code(&o), 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let arrows: Vec<(String, String, String)> = doc["arrows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| (a["label"].as_str().unwrap().into(), a["dom"].as_str().unwrap().into(), a["cod"].as_str().unwrap().into()))
        .filter(|(l, d, c)| !(l == d && d == c))
        .collect();
    assert_eq!(arrows, [("2".into(), "4".into(), "5".into()), ("3".into(), "5".into(), "4".into())]);

    let back = dir.path().join("s.cay");
    let o = run(&["--out", back.to_str().unwrap(), "esn", "to-semigroup", "--roundtrip", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        std::fs::read_to_string(&back).unwrap().trim(),
        std::fs::read_to_string(fixtures().join("b2_5_415.cay"))
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n")
            .trim()
    );
}

#[test]
fn esn_to_semigroup_on_partial_bijections() {
    let (c, v) = json(&["esn", "to-semigroup", "--roundtrip", &fx("i2_groupoid.json")]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["order"], 7);
    let (c, _) = json(&["esn", "to-semigroup", &fx("i2_literal_groupoid.json")]);
    assert_eq!(c, 1);
}

#[test]
fn roundtrip_on_every_inverse_fixture() {
    assert_eq!(code(&run(&["esn", "to-groupoid", "--roundtrip", &fx("b2_5_415.cay")])), 0);
    for f in ["z2_pair.cay", "clifford3_pair.cay"] {
        assert_eq!(code(&run(&["double", "roundtrip", &fx(f)])), 0);
    }
}

#[test]
fn double_to_dig_on_z2_has_one_object() {
    let (c, v) = json(&["double", "to-dig", &fx("z2_pair.cay")]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["objects"], 1);
    assert!(v["artifact"].is_object());
}

#[test]
fn double_dig_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    assert_eq!(code(&run(&["--out", g.to_str().unwrap(), "double", "to-dig", &fx("clifford3_pair.cay")])), 0);
    let g = g.to_str().unwrap();
    assert_eq!(code(&run(&["double", "validate-axioms", g])), 0);
    assert_eq!(code(&run(&["double", "validate-axioms", "--strict-axiom-ix", g])), 0);
    assert_eq!(code(&run(&["double", "roundtrip", g])), 0);
    let o = run(&["double", "to-dis", g]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("1 3 2"));
}

#[test]
fn validate_axioms_on_mutated_dig_names_axiom() {
    let (c, v) = json(&["double", "validate-axioms", &fx("chain3_mutated_dig.json")]);
    assert_eq!(c, 1);
    assert_eq!(check(&v, "vii")["passed"], false);
    assert!(check(&v, "vii")["witness"].is_string());
}

#[test]
fn verify_interchange_on_clifford() {
    assert_eq!(code(&run(&["double", "verify-appb", &fx("clifford3_pair.cay")])), 0);
    assert_eq!(code(&run(&["double", "verify-interchange", &fx("clifford3_pair.cay")])), 0);
}

#[test]
fn decompose_and_compose() {
    let o = run(&["decompose", &fx("clifford3_pair.cay")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("improper: true, commutative: true, clifford: true"));

    let (c, v) = json(&["decompose", &fx("z2_pair.cay")]);
    assert_eq!(c, 0);
    assert_eq!(v["artifact"]["base"]["elements"].as_array().unwrap().len(), 1);
    assert_eq!(v["artifact"]["groups"][0]["size"], 2);

    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.json");
    let d = dir.path().join("d.cay");
    assert_eq!(code(&run(&["--out", p.to_str().unwrap(), "decompose", &fx("clifford3_pair.cay")])), 0);
    assert_eq!(code(&run(&["--out", d.to_str().unwrap(), "compose", p.to_str().unwrap()])), 0);
    let orig = esnlab::double::DoubleSemigroup::parse(&std::fs::read_to_string(fixtures().join("clifford3_pair.cay")).unwrap()).unwrap();
    let back = esnlab::double::DoubleSemigroup::parse(&std::fs::read_to_string(&d).unwrap()).unwrap();
    assert_eq!(orig, back);
}

#[test]
fn decompose_rejects_non_double_inverse() {
    assert_eq!(code(&run(&["decompose", &fx("projections_pair.cay")])), 1);
}

#[test]
fn search_examples() {
    assert_eq!(code(&run(&["search", "--order", "3", "--class", "inverse", "--pairs", "--expect-none"])), 0);
    let (c, v) = json(&["search", "--order", "2", "--class", "semigroup", "--pairs"]);
    assert_eq!(c, 0);
    assert!(v["result"]["proper_classes"].as_u64().unwrap() > 0);
    assert_eq!(code(&run(&["search", "--order", "2", "--class", "semigroup", "--pairs", "--expect-none"])), 1);
    let (c, v) = json(&["search", "--order", "4", "--class", "inverse"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["class_count"], 16);
}

#[test]
fn dot_output() {
    let o = run(&["--format", "dot", "check", "--inverse", &fx("b2_5_415.cay")]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.starts_with("digraph") && s.trim_end().ends_with('}'), "{s}");
    assert_eq!(code(&run(&["--format", "dot", "search", "--order", "1"])), 2);
}

fn copy_fixtures(to: &Path) {
    for e in std::fs::read_dir(fixtures()).unwrap() {
        let e = e.unwrap();
        std::fs::copy(e.path(), to.join(e.file_name())).unwrap();
    }
}

#[test]
fn fixture_suite_exit_codes() {
    let o = run(&["fixture-suite"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(code(&run(&["paper-suite", "--help"])), 0);

    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    let d = dir.path().to_str().unwrap();
    std::fs::write(dir.path().join("z2_pair.cay"), "2\n1 2\n").unwrap();
    let o = run(&["fixture-suite", "--fixtures", d]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("z2_pair.cay"));

    copy_fixtures(dir.path());
    std::fs::write(dir.path().join("b2_5_415.cay"), "5\n1 1 1 1 2\n1 1 4 1 2\n1 5 1 3 1\n1 2 1 4 1\n1 1 3 1 5\n").unwrap();
    let o = run(&["fixture-suite", "--fixtures", d]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL b2_5_415.cay."), "{}", stdout(&o));

    let o = Command::new(env!("CARGO_BIN_EXE_esnlab"))
        .arg("fixture-suite")
        .env("ESNLAB_FIXTURES", "/nonexistent")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}
