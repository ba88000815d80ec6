//! The binary end to end: outputs and exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hrt_mslq::generators::families;
use hrt_mslq::io::serialize_instance;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hrt-mslq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, bytes: impl AsRef<[u8]>) -> String {
    let p = dir.join(name);
    fs::write(&p, bytes).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn solve_marriage_tight_with_policy_file() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "mt.json",
        serialize_instance(&families::marriage_tight()),
    );
    let pol = write(dir.path(), "pol", "(r1,r2)\n");
    let out = dir.path().join("m.json");
    let o = bin(&[
        "solve",
        &inst,
        "--algo",
        "triple",
        "--policy",
        &format!("file:{pol}"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("score: 2 (≈2.000000)"),
        "{}",
        stdout(&o)
    );
    let v = bin(&["verify", &inst, out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn solve_input_errors_exit_2() {
    let o = bin(&["solve", "/definitely/not/here.json"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let inst = write(
        dir.path(),
        "g.json",
        serialize_instance(&families::marriage_gap()),
    );
    let o = bin(&["solve", &inst, "--algo", "gs"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ties"));

    assert_eq!(
        bin(&["solve", &inst, "--algo", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let gap = write(
        dir.path(),
        "gap.json",
        serialize_instance(&families::marriage_gap()),
    );
    let tight = write(
        dir.path(),
        "tight.json",
        serialize_instance(&families::marriage_tight()),
    );

    let n = write(
        dir.path(),
        "n.json",
        r#"{"pairs":[["r1","h1"],["r2","h2"]]}"#,
    );
    let o = bin(&["verify", &gap, &n]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("stable: yes"));
    assert!(stdout(&o).contains("score: 2 (≈2.000000)"));

    let bad = write(dir.path(), "bad.json", r#"{"pairs":[["r1","h2"]]}"#);
    assert_eq!(bin(&["verify", &gap, &bad]).status.code(), Some(2));

    let unstable = write(
        dir.path(),
        "u.json",
        r#"{"pairs":[["r1","h2"],["r2","h3"]]}"#,
    );
    let o = bin(&["verify", &tight, &unstable]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("stable: no"));
    assert!(stdout(&o).contains("(r1, h1)"));

    let junk = write(dir.path(), "junk.json", "{not json");
    assert_eq!(bin(&["verify", &gap, &junk]).status.code(), Some(2));
}

#[test]
fn bench_zero_trials_is_header_only() {
    let o = bin(&["bench", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), hrt_mslq::bench::CSV_HEADER.join(",") + "\n");
}

#[test]
fn bench_is_reproducible() {
    let args = [
        "bench",
        "--family",
        "random",
        "--family",
        "uniform_tight",
        "--trials",
        "4",
        "--seed",
        "3",
        "--no-elapsed",
    ];
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 1 + 2 * 4 * 3);
}

#[test]
fn gen_is_deterministic() {
    let args = [
        "gen",
        "--family",
        "random",
        "--n",
        "6",
        "--hospitals",
        "4",
        "--seed",
        "42",
        "--model",
        "uniform",
    ];
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    hrt_mslq::io::parse_instance(&a.stdout).unwrap();
    assert_eq!(bin(&["gen", "--family", "nope"]).status.code(), Some(2));
}

#[test]
fn oracle_reports_opt_and_wst() {
    let dir = tempfile::tempdir().unwrap();
    let tight = write(
        dir.path(),
        "tight.json",
        serialize_instance(&families::marriage_tight()),
    );
    let o = bin(&["--format", "json", "oracle", &tight, "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["opt"], "3");
    assert_eq!(v["wst"], "2");
    assert_eq!(v["count"], 2);
    assert_eq!(v["matchings"].as_array().unwrap().len(), 2);

    let o = bin(&["--budget", "1", "oracle", &tight, "--method", "exhaustive"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn gadget_check_on_square() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(
        dir.path(),
        "c4.txt",
        "0 1\n1 2\n2 3\n3 0\nmatching:\n0 1\n2 3\n",
    );
    let o = bin(&["gadget", "check", &g]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("check: ok"));
    let o = bin(&["gadget", "build", &g]);
    assert_eq!(o.status.code(), Some(0));
    let inst = hrt_mslq::io::parse_instance(&o.stdout).unwrap();
    assert_eq!(inst.num_residents(), 20);

    let triangle = write(dir.path(), "k3.txt", "0 1\n1 2\n0 2\n");
    assert_eq!(bin(&["gadget", "build", &triangle]).status.code(), Some(2));
}

#[test]
fn smti_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let tight = write(
        dir.path(),
        "tight.json",
        serialize_instance(&families::marriage_tight()),
    );
    let o = bin(&["smti", &tight]);
    assert_eq!(o.status.code(), Some(0));
    let smti = hrt_mslq::io::parse_instance(&o.stdout).unwrap();
    assert_eq!(smti.resident_name(2), "a_h3");
    let smti_path = write(dir.path(), "smti.json", &o.stdout);

    let m = write(
        dir.path(),
        "m.json",
        r#"{"pairs":[["r1","h2"],["r2","h1"]]}"#,
    );
    let f = bin(&["smti", &tight, "--forward", &m]);
    assert_eq!(f.status.code(), Some(0));
    assert_eq!(
        stdout(&f),
        "{\"pairs\":[[\"r1\",\"h2\"],[\"r2\",\"h1\"],[\"a_h3\",\"h3\"]]}\n"
    );
    let fm = write(dir.path(), "fm.json", &f.stdout);
    assert_eq!(bin(&["verify", &smti_path, &fm]).status.code(), Some(0));
    let b = bin(&["smti", &tight, "--back", &fm]);
    assert_eq!(
        stdout(&b),
        fs::read_to_string(dir.path().join("m.json"))
            .unwrap()
            .replace(' ', "")
            + "\n"
    );

    let gap = write(
        dir.path(),
        "ug.json",
        serialize_instance(&families::uniform_gap(1, 2).unwrap()),
    );
    assert_eq!(bin(&["smti", &gap]).status.code(), Some(2));
}
