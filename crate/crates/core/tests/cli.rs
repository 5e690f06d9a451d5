use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use syncrel::cli::run;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

/// Runs the CLI in-process; returns the exit code and the parsed report.
fn syncrel(args: &[&str]) -> (i32, Value) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("syncrel").chain(args.iter().copied()), &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    let json = serde_json::from_str(text.trim()).unwrap_or(Value::Null);
    (code, json)
}

fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn classify_reports() {
    let (code, r) = syncrel(&["classify", &fixture("r2.syna")]);
    assert_eq!(code, 0);
    assert_eq!(r["class"], "FS");
    assert_eq!(r["lag"], "infinite");
    assert_eq!(r["shift"], "finite");

    let (_, r) = syncrel(&["classify", &fixture("inputs_then_outputs.syna")]);
    assert_eq!(r["shiftlag"], "finite");

    let (_, r) = syncrel(&["classify", &fixture("r1.syna")]);
    assert_eq!(r["class"], "ALL");
}

#[test]
fn classify_jobs_keeps_order() {
    let files = ["r1.syna", "r2.syna", "alternating.syna", "ab_target.syna", "ab_source.syna"].map(fixture);
    let mut args = vec!["classify", "--jobs", "3"];
    args.extend(files.iter().map(String::as_str));
    let (code, par) = syncrel(&args);
    assert_eq!(code, 0);
    let arr = par.as_array().unwrap();
    assert_eq!(arr.len(), files.len());
    for (f, r) in files.iter().zip(arr) {
        let (_, single) = syncrel(&["classify", f]);
        assert_eq!(r["class"], single["class"]);
        assert_eq!(r["states"], single["states"]);
    }
}

#[test]
fn parse_errors_carry_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(&dir, "bad.syna", "input-alphabet: a\noutput-alphabet: b\nregex: a z\n");
    let (code, r) = syncrel(&["classify", &bad]);
    assert_eq!(code, 2);
    assert_eq!(r["error"], "parse");
    let msg = r["message"].as_str().unwrap();
    assert!(msg.contains(":3:8:"), "{msg}");
    assert!(msg.contains("`z`"), "{msg}");

    let bad = write(&dir, "bad2.syna", "input-alphabet: a\noutput-alphabet: b\nstates: p\ninitial: p\nfinal: p\np z p\n");
    let (code, r) = syncrel(&["classify", &bad]);
    assert_eq!(code, 2);
    assert!(r["message"].as_str().unwrap().contains(":6:3:"));

    let bad = write(&dir, "bad3.syna", "input-alphabet: a\nsorts: x\n");
    let (code, r) = syncrel(&["classify", &bad]);
    assert_eq!(code, 2);
    assert_eq!(r["error"], "parse");

    let shared = write(&dir, "shared.syna", "input-alphabet: a\noutput-alphabet: a\nregex: a\n");
    assert_eq!(syncrel(&["classify", &shared]).0, 2);

    let (code, r) = syncrel(&["classify", "/nonexistent/x.syna"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"], "io");
}

#[test]
fn definability_example() {
    let (code, r) = syncrel(&["def", &fixture("ab_source.syna"), &fixture("ab_target.syna")]);
    assert_eq!(code, 0);
    assert_eq!(r["answer"], "unknown");
    assert_eq!(r["witness"], Value::Null);
    assert!(r["checks"].as_array().unwrap().len() >= 3);
}

#[test]
fn witness_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.syna").to_string_lossy().into_owned();
    let t = fixture("ab_target.syna");
    let (code, r) = syncrel(&["def", &t, &t, "--witness", &w]);
    assert_eq!(code, 0);
    assert_eq!(r["answer"], "yes");
    assert_eq!(r["witness"], w.as_str());
    let (code, r) = syncrel(&["verify-witness", &t, &t, &w]);
    assert_eq!(code, 0);
    assert_eq!(r["answer"], "yes");

    // a witness outside T is rejected
    let junk = write(&dir, "junk.syna", "input-alphabet: a\noutput-alphabet: b\nregex: b a\n");
    let (_, r) = syncrel(&["verify-witness", &t, &t, &junk]);
    assert_eq!(r["answer"], "no");
}

#[test]
fn uniformization_commands() {
    let (code, r) = syncrel(&["unif", "rec", &fixture("r1.syna")]);
    assert_eq!(code, 0);
    assert_eq!(r["answer"], "no");

    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("u.synt").to_string_lossy().into_owned();
    let (code, r) = syncrel(&["unif", "rec", &fixture("r2.syna"), "--witness", &w]);
    assert_eq!(code, 0);
    assert_eq!(r["answer"], "yes");
    assert_eq!(r["bound"], 1);
    let outs: Vec<&str> = r["uniformizer"].as_array().unwrap().iter().map(|p| p["output"].as_str().unwrap()).collect();
    assert_eq!(outs, ["d", "e"]);
    let (_, r) = syncrel(&["unif", "verify", &w, &fixture("r2.syna")]);
    assert_eq!(r["answer"], "yes");
    let (_, r) = syncrel(&["unif", "verify", &fixture("r2_subseq.synt"), &fixture("r2.syna")]);
    assert_eq!(r["answer"], "yes");

    let (_, r) = syncrel(&["unif", "finiteshift", &fixture("r2.syna")]);
    assert_eq!(r["answer"], "yes");

    let (code, r) = syncrel(&["unif", "subseq", &fixture("r2.syna")]);
    assert_eq!(code, 0);
    assert_eq!(r["answer"], "unknown");
    assert!(r["reason"].as_str().unwrap().starts_with("unsupported"));
}

#[test]
fn transducer_and_distance_commands() {
    let (_, r) = syncrel(&["transducer", "eval", &fixture("r2_subseq.synt"), "aca"]);
    assert_eq!(r["output"], "e d");
    let (_, r) = syncrel(&["transducer", "eval", &fixture("r2_subseq.synt"), "aa"]);
    assert_eq!(r["output"], Value::Null);

    let (_, r) = syncrel(&["distance", "limited", &fixture("two_runs.synd")]);
    assert_eq!(r["limited"], false);
    let (_, r) = syncrel(&["distance", "limited", &fixture("chain3.synd")]);
    assert_eq!(r["limited"], true);
    assert_eq!(r["bound"], 3);
    let (_, a) = syncrel(&["distance", "eval", &fixture("two_runs.synd"), "aaaa"]);
    let (_, b) = syncrel(&["oracle", "distance", &fixture("two_runs.synd"), "aaaa"]);
    assert_eq!(a["distance"], b["distance"]);
}

#[test]
fn oracle_commands() {
    let (code, r) = syncrel(&["oracle", "metrics", "aabaabbbbbbbaaab"]);
    assert_eq!(code, 0);
    assert_eq!((r["lag"].as_u64(), r["shift"].as_u64(), r["shiftlag"].as_u64()), (Some(4), Some(5), Some(2)));

    let (_, r) = syncrel(&["oracle", "pairs", &fixture("r2.syna"), "--max-len", "2"]);
    let pairs: Vec<(String, String)> = r["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_str().unwrap().into(), p[1].as_str().unwrap().into()))
        .collect();
    assert_eq!(pairs, [("b".into(), "d".into()), ("c".into(), "e".into())]);

    let (code, r) = syncrel(&["oracle", "pairs", &fixture("r2.syna"), "--max-len", "13"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"], "bound");
}

#[test]
fn text_format() {
    let mut out = Vec::new();
    let code = run(["syncrel", "--format", "text", "unif", "rec", &fixture("r1.syna")], &mut out, &mut Vec::new());
    assert_eq!(code, 0);
    assert!(String::from_utf8(out).unwrap().starts_with("no"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_syncrel");
    let ok = Command::new(bin).args(["classify", &fixture("r2.syna")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["class"], "FS");
    let usage = Command::new(bin).args(["classify"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let unknown = Command::new(bin).args(["frobnicate"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(2));
}
