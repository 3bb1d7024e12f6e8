//! End-to-end runs of the binary against checked-in expected output.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the files under `tests/golden/`.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn fixture(name: &str) -> String {
    dir("fixtures").join(name).display().to_string()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn alexkit(args: &[&str], threads: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_alexkit"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("ALEXKIT_THREADS", t);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Run, compare stdout with `golden/<name>.json`, return the parsed report.
fn golden(name: &str, args: &[&str]) -> Value {
    let r = alexkit(args, None);
    assert_eq!(r.code, 0, "{}: stderr {}", name, r.stderr);
    let path = dir("golden").join(format!("{}.json", name));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &r.stdout).unwrap();
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing {}; rerun with UPDATE_GOLDEN=1", path.display()));
    assert_eq!(r.stdout, want, "{} differs from golden output", name);
    serde_json::from_str(&r.stdout).unwrap()
}

#[test]
fn invariants_pencil3() {
    let v = golden("invariants-pencil3", &["invariants", &fixture("pencil3.grp")]);
    assert_eq!(v["delta"], "t1*t2*t3 - 1");
    assert_eq!(v["b1"], 3);
    assert_eq!(v["qp"]["verdict"], "CONSISTENT");
}

#[test]
fn invariants_commutator_pair() {
    let v = golden("invariants-commutator-g1", &["invariants", "--matrix", &fixture("commutator-g1.json")]);
    assert_eq!(v["delta_factored"], "(x2 - 1)*(x2*x3 + 1)^2*(x1*x2 + 1)^2");
    assert_eq!(v["qp"]["verdict"], "OBSTRUCTED");
    assert_eq!(v["torsion"], Value::Null);
}

#[test]
fn invariants_torus_bundle() {
    let v = golden("invariants-torusbundle", &["invariants", &fixture("torusbundle.grp")]);
    assert_eq!(v["b1"], 1);
    assert_eq!(v["torsion"], serde_json::json!([4]));
    assert_eq!(v["delta_factored"], "(t + 1)^2");
}

#[test]
fn betti_nongeneric_point() {
    let v = golden(
        "betti-commutator-g1",
        &["betti", "--matrix", &fixture("commutator-g1.json"), "--char", "x1=-1,x2=1,x3=-1"],
    );
    assert_eq!(v["b1"], 2);
}

#[test]
fn betti_not_almost_principal() {
    let v = golden(
        "betti-cyclic-triple",
        &["betti", "--matrix", &fixture("cyclic-triple.json"), "--char", "x1=1,x2=-1,x3=1"],
    );
    assert_eq!(v["b1"], 2);
    assert_eq!(v["bounds"]["bound_pointwise"], 1);
    assert_eq!(v["bounds"]["almost_principal"], "Unknown");
}

#[test]
fn betti_trivial_character() {
    let v = golden(
        "betti-trivial",
        &["betti", &fixture("pencil3.grp"), "--char", "x1=1,x2=1,x3=1", "--depth", "3"],
    );
    assert_eq!(v["b1"], 3);
    assert_eq!(v["membership"]["member"], true);
    assert!(v["notes"][0].as_str().unwrap().starts_with("trivial character"));
}

#[test]
fn betti_asserted_almost_principal() {
    let v = golden(
        "betti-binomial-power-k2",
        &[
            "betti",
            "--matrix",
            &fixture("binomial-power-k2.json"),
            "--char",
            "x1=-1,x2=1",
            "--assert-almost-principal",
            "I^2*(delta) in E1",
        ],
    );
    assert_eq!(v["b1"], 1);
    assert_eq!(v["bounds"]["bound_pointwise"], 2);
    assert_eq!(v["bounds"]["almost_principal"], "Yes(user-asserted: I^2*(delta) in E1)");
}

#[test]
fn seifert_torus_link() {
    let v = golden("seifert-2-3", &["seifert", "--weights", "1,1,1,2,3", "--q", "3"]);
    let mults: Vec<(u64, u64)> = v["divisor"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["root_order"].as_u64().unwrap(), c["multiplicity"].as_u64().unwrap()))
        .collect();
    assert_eq!(mults, vec![(1, 1), (2, 2), (3, 2), (3, 2), (6, 3), (6, 3)]);
}

#[test]
fn seifert_pencil() {
    let v = golden("seifert-pencil", &["seifert", "--weights", "1,1,1", "--q", "3"]);
    assert_eq!(v["delta"], "t1*t2*t3 - 1");
    let r = alexkit(&["seifert", "--weights", "1,1,1,2,3", "--q", "3", "--char", "t1=-1,t2=1,t3=1"], None);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["betti"]["b1"], 2);
}

#[test]
fn monodromy_jordan_block() {
    let v = golden("monodromy-jordan", &["monodromy", "--h", "[[-1,1],[0,-1]]"]);
    assert_eq!(v["delta_factored"], "(t + 1)^2");
    assert_eq!(v["semisimple"], false);
}

#[test]
fn exit_codes() {
    let r = alexkit(&["seifert", "--weights", "2,4,5", "--q", "2"], None);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("weights not pairwise coprime"));
    assert!(r.stdout.is_empty());

    let r = alexkit(&["invariants", &fixture("undeclared.grp")], None);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("undeclared name `z`"));

    let r = alexkit(&["invariants", &fixture("no-such-file.grp")], None);
    assert_eq!(r.code, 2);

    let r = alexkit(&["betti", &fixture("pencil3.grp"), "--char", "x1=2,x2=1"], None);
    assert_eq!(r.code, 2);

    let r = alexkit(&["invariants", &fixture("pencil9.grp")], None);
    assert_eq!(r.code, 3, "{}", r.stderr);
    assert!(r.stderr.contains("matrix size"));

    let r = alexkit(
        &["betti", &fixture("pencil3.grp"), "--char", "x1=zeta241,x2=1,x3=1"],
        None,
    );
    assert_eq!(r.code, 3, "{}", r.stderr);

    let r = alexkit(&["monodromy", "--h", "[[1,1],[0,1]]"], None);
    assert_eq!(r.code, 2);
    let r = alexkit(&["frobnicate"], None);
    assert_eq!(r.code, 2);
    assert_eq!(alexkit(&["--help"], None).code, 0);
}

#[test]
fn output_independent_of_thread_count() {
    let args = ["invariants", "--matrix", &fixture("cyclic-triple.json"), "--upto", "2"];
    let one = alexkit(&args, Some("1"));
    let four = alexkit(&args, Some("4"));
    assert_eq!(one.code, 0);
    assert_eq!(one.stdout, four.stdout);
    let pretty = alexkit(&["invariants", "--pretty", &fixture("pencil3.grp")], None);
    let plain = alexkit(&["invariants", &fixture("pencil3.grp")], None);
    let a: Value = serde_json::from_str(&pretty.stdout).unwrap();
    let b: Value = serde_json::from_str(&plain.stdout).unwrap();
    assert_eq!(a, b);
}
