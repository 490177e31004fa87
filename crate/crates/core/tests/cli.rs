use std::path::PathBuf;
use std::process::Command;

use statesum::cli::dispatch;

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> statesum::cli::Outcome {
    dispatch(std::iter::once("statesum").chain(args.iter().copied()))
}

#[test]
fn invariant_of_the_sphere() {
    let o = run(&["invariant", &data("s4.tri"), "--group", "cyclic:2", "--engine", "fast"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "1/2 [N=1]\n"));
    for engine in ["generic", "oracle"] {
        let o = run(&["invariant", &data("s4.tri"), "--group", "cyclic:2", "--engine", engine]);
        assert_eq!(o.stdout, "1/2 [N=1]\n", "{engine}");
    }
}

#[test]
fn walk_then_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let out: PathBuf = dir.path().join("out.tri");
    let out = out.to_str().unwrap();
    let w = run(&["moves", "walk", &data("s4.tri"), "--steps", "2", "--seed", "7", "--max-vertices", "8", "-o", out]);
    assert_eq!(w.code, 0, "{}", w.stderr);
    assert!(w.stdout.contains("vertices 7") || w.stdout.contains("vertices 8"), "{}", w.stdout);
    let o = run(&["invariant", out, "--group", "cyclic:2"]);
    assert_eq!(o.stdout, "1/2 [N=1]\n");
}

#[test]
fn bad_cocycle_reports_quintuple() {
    let o = run(&["cocycle", "check", "--group", "cyclic:2", "--cocycle", &data("bad.coc")]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("violation 1 0 0 0 0"), "{}", o.stdout);
}

#[test]
fn coboundary_file_passes_check() {
    let dir = tempfile::tempdir().unwrap();
    let coc = dir.path().join("d.coc");
    let coc = coc.to_str().unwrap();
    let b = run(&["cocycle", "coboundary", "--group", "sym:3", "--modulus", "6", "--seed", "2", "-o", coc]);
    assert_eq!(b.code, 0, "{}", b.stderr);
    let c = run(&["cocycle", "check", "--group", "sym:3", "--cocycle", coc]);
    assert_eq!(c.stdout, "cocycle yes\naveraged 1-5 identity yes\n");
    let i = run(&["invariant", &data("s4.tri"), "--group", "sym:3", "--cocycle", coc]);
    assert_eq!(i.stdout, "1/6 [N=6]\n");
}

#[test]
fn data_build_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("z3.dat");
    let file = file.to_str().unwrap();
    assert_eq!(run(&["data", "build", "--group", "cyclic:3", "-o", file]).code, 0);
    let v = run(&["data", "verify", file]);
    assert_eq!(v.code, 0, "{}", v.stdout);
    assert!(v.stdout.ends_with("verdict pass\n"));
    let i = run(&["invariant", &data("s4.tri"), "--data", file]);
    assert_eq!(i.stdout, "1/3 [N=1]\n");
    let bad = run(&["invariant", &data("s4.tri"), "--data", file, "--engine", "fast"]);
    assert_eq!(bad.code, 2);
}

#[test]
fn homs_cross_check() {
    let o = run(&["homs", &data("s1xs3.tri"), "--group", "cyclic:2"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("homs 2\n") && o.stdout.contains("match yes"), "{}", o.stdout);
    let o = run(&["homs", &data("s1xs3.tri"), "--group", "sym:3"]);
    assert!(o.stdout.contains("homs 6\n") && o.stdout.contains("invariant skipped"), "{}", o.stdout);
}

#[test]
fn validate_and_orient() {
    let v = run(&["validate", &data("s1xs3.tri")]);
    assert_eq!(v.code, 0);
    assert!(v.stdout.contains("closed yes\nconnected yes\n"));
    let o = run(&["orient", &data("s4.tri"), "--reference", "5"]);
    assert!(o.stdout.ends_with("orient 5 +1\n"), "{}", o.stdout);
    assert_eq!(o.stderr, "orientable yes\nsigns -+-+-+\n");
}

#[test]
fn moves_list_and_apply() {
    let l = run(&["moves", "list", &data("s4.tri")]);
    assert_eq!(l.stdout.lines().count(), 6);
    assert!(l.stdout.lines().all(|x| x.starts_with("1-5 ")));
    let a = run(&["moves", "apply", &data("s4.tri"), "--support", "0,1,2,3,4", "--kind", "1-5"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert!(a.stdout.starts_with("vertices 7\n"));
    let wrong = run(&["moves", "apply", &data("s4.tri"), "--support", "0,1,2,3,4", "--kind", "3-3"]);
    assert_eq!(wrong.code, 2);
    let stale = run(&["moves", "apply", &data("s4.tri"), "--support", "0,1,2"]);
    assert_eq!(stale.code, 1);
}

#[test]
fn output_is_independent_of_workers() {
    let a = run(&["invariant", &data("s4.tri"), "--group", "sym:3", "--workers", "1"]);
    let b = run(&["invariant", &data("s4.tri"), "--group", "sym:3", "--workers", "3"]);
    assert_eq!(a, b);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_statesum");
    let ok = Command::new(bin).args(["invariant", &data("s4.tri"), "--group", "cyclic:2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "1/2 [N=1]\n");
    let usage = Command::new(bin).args(["invariant", &data("s4.tri"), "--colour"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let domain = Command::new(bin).args(["cocycle", "check", "--group", "cyclic:2", "--cocycle", &data("bad.coc")]).output().unwrap();
    assert_eq!(domain.status.code(), Some(1));
}
