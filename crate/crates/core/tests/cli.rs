//! Runs every command shown in the README and checks exit codes.

use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_unitsum"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).env_remove("UNITSUM_WORKERS").output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"))
}

/// Commands listed in README.md under "CLI usage", one per line after `unitsum`.
fn readme_commands() -> Vec<Vec<String>> {
    let readme = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md")).expect("README.md");
    readme
        .lines()
        .filter_map(|l| l.trim().strip_prefix("unitsum "))
        .map(|l| {
            let mut args = Vec::new();
            let mut cur = String::new();
            let mut quoted = false;
            for ch in l.chars() {
                match ch {
                    '"' => quoted = !quoted,
                    ' ' if !quoted => {
                        if !cur.is_empty() {
                            args.push(std::mem::take(&mut cur));
                        }
                    }
                    _ => cur.push(ch),
                }
            }
            if !cur.is_empty() {
                args.push(cur);
            }
            args
        })
        .collect()
}

#[test]
fn readme_examples_run() {
    let cmds = readme_commands();
    assert!(cmds.len() >= 10, "README lists {} commands", cmds.len());
    let dir = tempfile::tempdir().unwrap();
    for cmd in cmds {
        let args: Vec<String> = cmd.iter().map(|a| a.replace("/tmp/enum.ckpt", dir.path().join("enum.ckpt").to_str().unwrap())).collect();
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, _, err) = run(&refs);
        let expected = if refs.first() == Some(&"ell") && refs.get(1) == Some(&"x^2+x+1") { 2 } else { 0 };
        assert_eq!(code, expected, "{refs:?}: {err}");
    }
}

#[test]
fn documented_values() {
    let v = json(&["ell", "x^2-x-1"]);
    assert_eq!(v["outputs"]["invariants"]["ell"]["k"], 3);
    let v = json(&["ell", "x^2-2x-1", "--max-k", "8"]);
    assert_eq!(v["outputs"]["invariants"]["od"]["kind"], "infinite");
    assert_eq!(v["outputs"]["invariants"]["ev"]["k"], 4);
    let v = json(&["parity", "x^2-3x+1", "--power", "3"]);
    assert_eq!(v["outputs"]["power"]["report"]["parity"], "even");
    assert_eq!(v["outputs"]["power"]["resultant_x^n-1"], "-16");
    let v = json(&["bounds", "--d", "2", "--r", "1", "--regulator", "0.4812"]);
    let b = v["outputs"]["ell_upper_bound"].as_f64().unwrap();
    assert!((b - 7.632).abs() < 1e-3, "{b}");
    let v = json(&["family", "cubic-t", "--t", "-1"]);
    assert_eq!(v["outputs"][0]["verification"]["value"], 10);
    assert_eq!(v["outputs"][0]["verification"]["search"]["k"], 10);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["ell", "x^2+x+1"]).0, 2);
    assert_eq!(run(&["ell", "x^2+"]).0, 3);
    assert_eq!(run(&["frobnicate"]).0, 3);
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
    assert_eq!(run(&["family", "cubic", "--k", "10"]).0, 2);
    assert_eq!(run(&["enumerate", "--k", "4", "--cap", "64", "--max-candidates", "100"]).0, 4);
    assert_eq!(run(&["verify-claims", "--only", "no-such-claim"]).0, 3);
    let bad = bin().args(["bounds", "--poly", "x^2-x-1"]).env("UNITSUM_WORKERS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn workers_env_is_deterministic() {
    let a = bin().args(["ell", "x^3+x^2+7x+1"]).env("UNITSUM_WORKERS", "1").output().unwrap();
    let b = bin().args(["ell", "x^3+x^2+7x+1"]).env("UNITSUM_WORKERS", "4").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn enumerate_resume_matches_full_run() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck.json");
    let ck = ck.to_str().unwrap();
    let (code, full, _) = run(&["enumerate", "--k", "3", "--cap", "10", "--degrees", "2,3"]);
    assert_eq!(code, 0);
    let body: Vec<&str> = full.lines().filter(|l| l.starts_with("{\"f\"")).collect();
    assert!(body.len() > 4);
    // a checkpoint written after the fourth report
    let (code, first, _) = run(&["enumerate", "--k", "3", "--cap", "10", "--degrees", "2,3", "--checkpoint", ck]);
    assert_eq!(code, 0);
    assert_eq!(first, full);
    let cp: Value = serde_json::from_str(&std::fs::read_to_string(ck).unwrap()).unwrap();
    assert!(cp["index"].as_u64().unwrap() >= body.len() as u64 - 1);
    let fourth: Value = serde_json::from_str(body[3]).unwrap();
    let coeffs: Vec<i64> = fourth["f"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect();
    let last = unitsum::polyz::IntPoly::from_i64s(&coeffs).to_string();
    std::fs::write(ck, serde_json::json!({"index": 3, "last": last}).to_string()).unwrap();
    let (code, rest, err) = run(&["enumerate", "--k", "3", "--cap", "10", "--degrees", "2,3", "--checkpoint", ck, "--resume"]);
    assert_eq!(code, 0, "{err}");
    let rest_body: Vec<&str> = rest.lines().filter(|l| l.starts_with("{\"f\"")).collect();
    assert_eq!(rest_body, body[4..].to_vec());
}

#[test]
fn sweep_csv_and_dot() {
    let (code, out, _) = run(&["family", "quad", "--sweep", "k=3..8", "--csv"]);
    assert_eq!(code, 0);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| &r[9] == "confirmed"));
    let (code, dot, _) = run(&["graph", "four-cycle", "x^2-x-1", "--dot"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("graph G {"));
    assert_eq!(dot.matches(" -- ").count(), 4);
}
