use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn subpat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subpat")).args(args).env_remove("SUBPAT_SERVER").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn validate_accepts_the_carton_michel_fixture() {
    let out = subpat(&["validate", &fixture("cm-astar-a.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["cm"]["complete"], true);
    assert_eq!(v["cm"]["unambiguous"], true);
}

#[test]
fn classify_with_both_engines() {
    let out = subpat(&["classify", &fixture("dfa-contains-a.json"), "--max-level", "3", "--engine", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for r in v["reports"].as_array().unwrap() {
        assert_eq!(r["levels"]["sigma2"]["1"], true);
    }
}

#[test]
fn check_pattern_absent_exits_one() {
    let out = subpat(&["check-pattern", "--automaton", &fixture("dfa-A.json"), "--pattern", "builtin:da", "--format", "text"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("absent"));
}

#[test]
fn check_pattern_from_a_file_with_witness() {
    let out = subpat(&[
        "check-pattern",
        "--automaton",
        &fixture("dfa-A-prime.json"),
        "--pattern",
        &fixture("pattern-diamond.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["present"], true);
    assert_eq!(v["verified"], true);
    assert!(v["witness"]["h"].is_object());
}

#[test]
fn invalid_inputs_exit_two_and_resources_three() {
    assert_eq!(subpat(&["validate", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(subpat(&["classify", &fixture("rev-astar-a.json")]).status.code(), Some(2));
    assert_eq!(subpat(&["pattern", "gen", "builtin:zz"]).status.code(), Some(2));
    assert_eq!(subpat(&["bogus"]).status.code(), Some(2));
    let out = subpat(&["check-pattern", "--automaton", &fixture("dfa-A.json"), "--pattern", "builtin:si:3", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn partial_dfas_need_complete() {
    let dir = std::env::temp_dir().join(format!("subpat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("partial.json");
    std::fs::write(
        &path,
        r#"{"kind":"dfa","alphabet":["a","b"],"states":["p"],"initial":"p","final":["p"],"transitions":[["p","a","p"]]}"#,
    )
    .unwrap();
    let p = path.to_string_lossy();
    assert_eq!(subpat(&["validate", &p]).status.code(), Some(2));
    let out = subpat(&["validate", &p, "--complete"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["states"], 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn corpus_generation_is_seeded() {
    let run = |seed: &str| json(&subpat(&["corpus", "gen", "--kind", "cm", "--states", "3", "--count", "4", "--seed", seed]));
    let a = run("11");
    assert_eq!(a["automata"].as_array().unwrap().len(), 4);
    assert_eq!(a, run("11"));
    let e = json(&subpat(&["corpus", "gen", "--kind", "dfa", "--states", "2"]));
    assert_eq!(e["expected"], 128);
    assert_eq!(e["automata"].as_array().unwrap().len(), 128);
}

#[test]
fn crosscheck_and_self_test() {
    let out = subpat(&["crosscheck", &fixture("dfa-ab-star.json"), &fixture("cm-finitely-many-a.json"), "--self-test"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["automata"], 2);
    assert_eq!(v["self_test"]["detected"], true);
    assert_eq!(subpat(&["crosscheck"]).status.code(), Some(2));
}

#[test]
fn hardness_generation_from_file_and_random() {
    let v = json(&subpat(&["hardness", "gen", "--graph", &fixture("digraph-chain.json"), "--from", "t", "--to", "s"]));
    assert_eq!(v["reachable"], false);
    assert_eq!(v["empty_language"], true);
    let v = json(&subpat(&["hardness", "gen", "--random", "5", "--seed", "9", "--kind", "cm"]));
    assert_eq!(v["carton_michel"], true);
    assert_eq!(v["empty_language"], !v["reachable"].as_bool().unwrap());
}

#[test]
fn text_format_renders_monoids() {
    let out = subpat(&["monoid", &fixture("dfa-ab-star.json"), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[syntactic]") && text.contains("monoid with 6 elements"), "{text}");
}
