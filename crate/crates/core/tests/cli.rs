use hyperlat::verify::{self, Status, VerificationReport};
use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperlat")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn bns_prints_five() {
    assert_eq!(run(&["fixed-locus", "bns", "--p", "11", "--a", "2", "--m", "2"]), (0, "5\n".into()));
}

#[test]
fn t11_2_has_no_primitive_square_two() {
    assert_eq!(run(&["enumerate", "represents", "--lattice", "T11_2", "--n", "2", "--primitive"]), (0, "none\n".into()));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["catalog", "no-such-lattice"]).0, 2);
    assert_eq!(run(&["verify-thesis", "--section", "nowhere"]).0, 2);
}

#[test]
fn failed_checks_exit_1() {
    assert_eq!(run(&["verify-thesis", "--section", "t11"]).0, 0);
    assert_eq!(run(&["verify-thesis", "--section", "representation"]).0, 1);
}

#[test]
fn json_output_is_deterministic_and_round_trips() {
    let (code, a) = run(&["--json", "verify-thesis", "--section", "holy"]);
    assert_eq!(code, 0);
    let (_, b) = run(&["--json", "verify-thesis", "--section", "holy"]);
    assert_eq!(a, b);
    let r = VerificationReport::from_json(&a).unwrap();
    assert_eq!(r.checks.len(), 4);
    assert!(r.checks.iter().any(|c| c.id == "holy.N23 indices" && c.status == Status::Pass));
    assert_eq!(VerificationReport::from_json(&r.to_json()).unwrap(), r);
}

#[test]
fn niemeier_section_reports_n23() {
    let r = verify::run(Some("niemeier")).unwrap();
    let c = r.checks.iter().find(|c| c.id == "niemeier.N23 unimodular").unwrap();
    assert_eq!(c.status, Status::Pass);
    let ids: std::collections::HashSet<_> = r.checks.iter().map(|c| &c.id).collect();
    assert_eq!(ids.len(), r.checks.len());
}

#[test]
fn lattice_from_file() {
    let dir = std::env::temp_dir().join(format!("hyperlat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("a2.json");
    std::fs::write(&f, r#"{"name": "A2", "gram": [[2, -1], [-1, 2]]}"#).unwrap();
    let (code, out) = run(&["enumerate", "shorts", "--file", f.to_str().unwrap(), "--bound", "2"]);
    assert_eq!((code, out.as_str()), (0, "2: 6\n"));
}
