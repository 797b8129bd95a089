use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn indres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indres"))
        .args(args)
        .env_remove("INDRES_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn lines(out: &[u8]) -> Vec<Value> {
    String::from_utf8_lossy(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("every line is JSON"))
        .collect()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn s4_at_two_is_strong() {
    let g = corpus().join("s4.json");
    let out = indres(&["check", "--group", path_str(&g), "--prime", "2", "--mode", "strong"]);
    assert_eq!(out.status.code(), Some(0));
    let ls = lines(&out.stdout);
    assert_eq!(ls.len(), 5);
    for l in &ls {
        assert_eq!(l["strong"]["feasible"], true);
        assert_eq!(l["weak"], Value::Null);
        assert_eq!(l["prime"], 2);
    }
    // only the degree-2 character has even degree
    let statuses: Vec<&str> = ls.iter().map(|l| l["status"].as_str().unwrap()).collect();
    assert_eq!(statuses, ["trivial", "trivial", "strong", "trivial", "trivial"]);
}

#[test]
fn a5_all_primes() {
    let g = corpus().join("a5.json");
    let out = indres(&["check", "--group", path_str(&g), "--primes", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let ls = lines(&out.stdout);
    let mut primes: Vec<u64> = ls.iter().map(|l| l["prime"].as_u64().unwrap()).collect();
    primes.dedup();
    assert_eq!(primes, [2, 3, 5]);
    assert_eq!(ls.len(), 15);
    assert!(ls.iter().all(|l| l["meets_mode"] == true));
}

#[test]
fn single_character() {
    let g = corpus().join("s4.json");
    let out = indres(&["check", "--group", path_str(&g), "--prime", "2", "--char", "2"]);
    let ls = lines(&out.stdout);
    assert_eq!(ls.len(), 1);
    assert_eq!(ls[0]["character"], 2);
    assert_eq!(ls[0]["degree"], 2);
    assert_eq!(ls[0]["target_index"], 2);
    assert_eq!(ls[0]["linear_witness"]["coefficient"], 1);
}

#[test]
fn malformed_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\n  \"name\": \"x\",\n  \"degree\": 3,\n  \"cycles\": [\"(1,2\"]\n}\n").unwrap();
    let out = indres(&["check", "--group", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let syntax = dir.path().join("syntax.json");
    fs::write(&syntax, "{\n  \"name\": \"x\",\n  \"degree\": 3,\n  \"cycles\": [\"(1,2)\",]\n}\n").unwrap();
    let out = indres(&["check", "--group", path_str(&syntax)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("syntax.json:4:"), "{err}");
    let out = indres(&["check", "--group", path_str(&corpus().join("s4.json")), "--primes", "2,x"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn empty_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("out.jsonl");
    let out = indres(&["census", "--corpus", path_str(dir.path()), "--out", path_str(&report)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_to_string(report).unwrap(), "");
}

#[test]
fn capped_and_broken_entries_are_isolated() {
    let dir = tempfile::tempdir().unwrap();
    for f in ["s4.json", "a5.json", "s5.json"] {
        fs::copy(corpus().join(f), dir.path().join(f)).unwrap();
    }
    let report = dir.path().join("out.jsonl");
    let out = indres(&[
        "census", "--corpus", path_str(dir.path()), "--out", path_str(&report), "--element-cap", "100",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let ls = lines(fs::read_to_string(&report).unwrap().as_bytes());
    let capped: Vec<&Value> = ls.iter().filter(|l| l["status"] == "capped").collect();
    assert!(!capped.is_empty());
    assert!(capped.iter().all(|l| l["group"] == "S5"));
    assert!(ls.iter().filter(|l| l["group"] != "S5").all(|l| l["meets_mode"] == true));
    assert_eq!(ls.iter().filter(|l| l["group"] == "A5").count(), 15);

    fs::write(dir.path().join("zz_broken.json"), "{ not json").unwrap();
    fs::remove_file(dir.path().join("s5.json")).unwrap();
    let out = indres(&["census", "--corpus", path_str(dir.path()), "--out", path_str(&report)]);
    assert_eq!(out.status.code(), Some(1));
    let ls = lines(fs::read_to_string(&report).unwrap().as_bytes());
    let last = ls.last().unwrap();
    assert_eq!(last["status"], "error");
    assert_eq!(last["group"], "zz_broken");
    assert_eq!(ls.len(), 1 + 15 + 10);
}

#[test]
fn census_is_deterministic_and_cache_is_sound() {
    let dir = tempfile::tempdir().unwrap();
    let small = dir.path().join("corpus");
    fs::create_dir(&small).unwrap();
    for f in ["s4.json", "a5.json", "q16.json", "f21.json", "gl2_3.json", "sl2_5.json"] {
        fs::copy(corpus().join(f), small.join(f)).unwrap();
    }
    let run = |jobs: &str, name: &str, cache: Option<&Path>| {
        let out_path = dir.path().join(name);
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_indres"));
        cmd.args(["census", "--corpus", path_str(&small), "--out", path_str(&out_path), "--jobs", jobs, "--filters"]);
        match cache {
            Some(c) => cmd.env("INDRES_CACHE_DIR", c),
            None => cmd.env_remove("INDRES_CACHE_DIR"),
        };
        let out = cmd.output().unwrap();
        assert_eq!(out.status.code(), Some(0));
        (fs::read(out_path).unwrap(), String::from_utf8_lossy(&out.stderr).into_owned())
    };
    let (one, _) = run("1", "one.jsonl", None);
    let (four, _) = run("4", "four.jsonl", None);
    assert_eq!(one, four);
    let cache = dir.path().join("cache");
    let (cold, log) = run("3", "cold.jsonl", Some(&cache));
    assert!(log.contains(" 0 cache hits"), "{log}");
    let (warm, log) = run("2", "warm.jsonl", Some(&cache));
    assert!(!log.contains(" 0 cache hits"), "{log}");
    assert_eq!(cold, one);
    assert_eq!(warm, one);
    // no temporary files are left behind
    assert!(fs::read_dir(&cache).unwrap().all(|e| e.unwrap().path().extension().unwrap() == "jsonl"));
}

#[test]
fn q8_table() {
    let out = indres(&["table", "--group", path_str(&corpus().join("q8.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let t: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(t["characters"].as_array().unwrap().len(), 5);
    assert_eq!(t["conductor"], 4);
    assert_eq!(t["degrees"], serde_json::json!([1, 1, 1, 1, 2]));
}

#[test]
fn families_sl2_5() {
    let out = indres(&["families", "--family", "sl2", "--q", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(!text.contains("FAIL"), "{text}");
    assert!(text.contains("psi_1"));
    assert!(text.contains("quotient SL2 -> PSL2 (order 60)"));
}

#[test]
fn families_emit_and_reload() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q16.json");
    let out = indres(&["families", "--family", "quaternion", "--n", "3", "--emit", path_str(&path)]);
    assert_eq!(out.status.code(), Some(0));
    let out = indres(&["check", "--group", path_str(&path), "--prime", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out.stdout).len(), 7);
    let out = indres(&["families", "--family", "sl2", "--q", "6"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    let out = indres(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
