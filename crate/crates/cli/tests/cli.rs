use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use ueb_core::{ExactMatrix, PhasedScalar};

fn ueb(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ueb")).args(args).current_dir(dir).output().expect("run ueb")
}

fn report(out: &Output) -> Value {
    let stdout = String::from_utf8_lossy(&out.stdout);
    let line = stdout.lines().next().unwrap_or_else(|| panic!("no report; stderr: {}", String::from_utf8_lossy(&out.stderr)));
    serde_json::from_str(line).expect("report is JSON")
}

/// Drops timing and the command echo so two runs can be compared.
fn strip(mut v: Value) -> Value {
    let obj = v.as_object_mut().unwrap();
    obj.remove("elapsed_ms");
    obj.remove("command");
    obj.remove("artifacts");
    for c in obj["checks"].as_array_mut().unwrap() {
        c.as_object_mut().unwrap().remove("elapsed_ms");
    }
    v
}

fn read(path: &Path) -> Value {
    serde_json::from_slice(&fs::read(path).unwrap()).unwrap()
}

#[test]
fn pauli_two_constructs_and_verifies() {
    let dir = TempDir::new().unwrap();
    let out = ueb(&["construct", "pauli:2", "--out", "p.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["seed"], 357);
    assert_eq!(r["artifacts"][0]["role"], "output");
    assert_eq!(r["artifacts"][0]["sha256"].as_str().unwrap().len(), 64);
    let file = read(&dir.path().join("p.json"));
    assert_eq!(file["members"].as_array().unwrap().len(), 4);

    let out = ueb(&["verify", "ueb", "p.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["checks"][0]["result"]["pairs_checked"], 6);
    assert_eq!(r["artifacts"][0]["role"], "input");
}

#[test]
fn round_trip_gives_identical_reports() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    assert!(ueb(&["construct", "nice", "--group", "heisenberg:3", "-o", "a.json"], p).status.success());
    // Re-export through a generic JSON value, which reorders keys.
    let v = read(&p.join("a.json"));
    fs::write(p.join("b.json"), serde_json::to_vec_pretty(&v).unwrap()).unwrap();
    for kind in ["ueb", "nice"] {
        let a = report(&ueb(&["verify", kind, "a.json"], p));
        let b = report(&ueb(&["verify", kind, "b.json"], p));
        assert_eq!(strip(a), strip(b), "verify {kind}");
    }
    let a = report(&ueb(&["analyze", "cocycle", "a.json"], p));
    let b = report(&ueb(&["analyze", "cocycle", "b.json"], p));
    assert_eq!(strip(a), strip(b));
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    assert!(ueb(&["construct", "pauli:4", "-o", "p.json"], p).status.success());
    let one = report(&ueb(&["--jobs", "1", "analyze", "cocycle", "p.json"], p));
    let four = report(&ueb(&["--jobs", "4", "analyze", "cocycle", "p.json"], p));
    assert_eq!(strip(one), strip(four));
}

#[test]
fn seed_is_recorded() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    assert!(ueb(&["construct", "pauli:11", "-o", "p.json"], p).status.success());
    let r = report(&ueb(&["--seed", "42", "analyze", "cocycle", "p.json"], p));
    assert_eq!(r["seed"], 42);
    let plan = &r["checks"][0]["result"]["identity_plan"];
    assert_eq!(plan["mode"], "sampled");
    assert_eq!(plan["seed"], 42);
}

#[test]
fn sam_d3_contains_displayed_members() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    let out = ueb(&["construct", "sam", "cyclic:3", "fourier:3", "-o", "s.json"], p);
    assert_eq!(out.status.code(), Some(0));
    let file = read(&p.join("s.json"));
    let members: Vec<ExactMatrix> = serde_json::from_value(file["members"].clone()).unwrap();
    let (o, l) = (PhasedScalar::zero, PhasedScalar::one);
    let w = |k| PhasedScalar::zeta(3, k);
    let e01 = ExactMatrix::from_entries(3, 3, vec![o(), l(), o(), o(), o(), l(), l(), o(), o()]);
    let e12 = ExactMatrix::from_entries(3, 3, vec![o(), o(), w(2), l(), o(), o(), o(), w(1), o()]);
    assert_eq!(members[1], e01);
    assert_eq!(members[5], e12);

    let flagged = ueb(&["construct", "sam", "--latin", "cyclic:4", "--hadamard", "fourier:4"], p);
    assert_eq!(flagged.status.code(), Some(0));
}

#[test]
fn verification_failures_exit_one() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    fs::write(p.join("l.json"), "[[0,1],[0,1]]").unwrap();
    let out = ueb(&["verify", "latin", "l.json"], p);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["pass"], false);
    assert!(r["checks"][0]["result"]["violation"].is_object());

    assert!(ueb(&["construct", "pauli:2", "-o", "p.json"], p).status.success());
    let mut v = read(&p.join("p.json"));
    let first = v["members"][1].clone();
    v["members"][3] = first;
    fs::write(p.join("dup.json"), serde_json::to_vec(&v).unwrap()).unwrap();
    assert_eq!(ueb(&["verify", "ueb", "dup.json"], p).status.code(), Some(1));
    assert_eq!(ueb(&["verify", "nice", "dup.json"], p).status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    assert_eq!(ueb(&["verify", "ueb", "missing.json"], p).status.code(), Some(2));
    fs::write(p.join("junk.json"), "{not json").unwrap();
    assert_eq!(ueb(&["verify", "ueb", "junk.json"], p).status.code(), Some(2));
    assert_eq!(ueb(&["verify", "ueb"], p).status.code(), Some(2));
    assert_eq!(ueb(&["construct", "pauli:x"], p).status.code(), Some(2));
    assert_eq!(ueb(&["construct", "nice", "--group", "sl2:5"], p).status.code(), Some(2));
    assert_eq!(ueb(&["frobnicate"], p).status.code(), Some(2));
    let out = ueb(&["analyze", "induce", "--group", "heisenberg:3", "--from", "whole", "--character", "zeta^z"], p);
    assert_eq!(out.status.code(), Some(2));
    // A nice basis needs its index group.
    assert!(ueb(&["construct", "sam", "cyclic:2", "fourier:2", "-o", "s.json"], p).status.success());
    assert_eq!(ueb(&["verify", "nice", "s.json"], p).status.code(), Some(2));
}

#[test]
fn analyses() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    assert!(ueb(&["construct", "pauli:3", "-o", "p.json"], p).status.success());
    let r = report(&ueb(&["analyze", "monomial", "p.json"], p));
    assert_eq!(r["checks"][0]["result"]["is_monomial"], true);
    assert_eq!(r["checks"][0]["result"]["zero_fraction"], "2/3");

    assert!(ueb(&["construct", "sam", "cyclic:4", "halpha", "-o", "h.json"], p).status.success());
    let r = report(&ueb(&["analyze", "wickedness", "h.json"], p));
    assert_eq!(r["checks"][0]["result"]["wicked"], true);
    let r = report(&ueb(&["analyze", "wickedness", "p.json"], p));
    assert_eq!(r["checks"][0]["result"]["wicked"], false);

    let out = ueb(&["analyze", "induce", "--group", "heisenberg:3", "--from", "center", "--character", "zeta^z", "-o", "i.json"], p);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["checks"][0]["result"]["dim"], 9);
    assert_eq!(r["checks"][0]["result"]["character_matches_trace"], true);
    let r = report(&ueb(&["analyze", "sparsity", "i.json"], p));
    assert_eq!(r["checks"][0]["result"]["min_zero_fraction"], "8/9");
    assert_eq!(r["checks"][0]["result"]["bound"]["meets_bound"], true);
}

#[test]
fn counterexample_factor_bundle() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    let out = ueb(&["construct", "counterexample165", "--factors-only", "--export", "b.json"], p);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let sweep = &r["checks"][1]["result"];
    assert_eq!(sweep["elements_checked"], 27224);
    assert_eq!(sweep["nonzero"], 0);
    let bundle = read(&p.join("b.json"));
    assert_eq!(bundle["generators"].as_array().unwrap().len(), 6);
    assert!(bundle.get("dense_generators").is_none());
}

#[test]
fn pretty_format_is_the_same_report() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    assert!(ueb(&["construct", "pauli:2", "-o", "p.json"], p).status.success());
    let json = report(&ueb(&["verify", "ueb", "p.json"], p));
    let out = ueb(&["--format", "pretty", "verify", "ueb", "p.json"], p);
    let pretty: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(strip(json), strip(pretty));
}
