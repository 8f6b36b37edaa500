use std::path::Path;
use std::process::{Command, Output};

use grassmann_codes::cli::{CertificateDocument, ReportDocument};

const BIN: &str = env!("CARGO_BIN_EXE_grassmann-codes");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn nine_coordinate_files(dir: &Path) -> (String, String) {
    (
        write(dir, "x.mat", "2 1 2 9\n0 0 0 1 1 1 1 1 1\n1 1 1 0 0 0 1 1 1\n"),
        write(dir, "y.mat", "2 1 2 9\n0 1 1 0 1 1 0 1 1\n1 0 1 1 0 1 1 0 1\n"),
    )
}

#[test]
fn distance_reports() {
    let dir = tempfile::tempdir().unwrap();
    let (x, y) = nine_coordinate_files(dir.path());
    let out = run(&["distance", &x, &y]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("d=2 d_c=3"));

    let out = run(&["distance", &x, &x]);
    assert!(stdout(&out).starts_with("d=0 d_c=0"));

    let out = run(&["distance", "--json", "--oracle", &x, &y]);
    let doc: ReportDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((doc.d, doc.d_c, doc.oracle_d_c), (Some(2), Some(3), Some(3)));
    assert_eq!(doc.path.as_ref().map(Vec::len), Some(4));
    assert_eq!(doc.certificate.as_ref().map(Vec::len), Some(9));
    let again: ReportDocument = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(again, doc);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (x, _) = nine_coordinate_files(dir.path());
    let code = |args: &[&str]| run(args).status.code();

    let bad = write(dir.path(), "bad.mat", "2 1 2 9\n0 0 0 1 1 1 1 1\n");
    assert_eq!(code(&["distance", &bad, &x]), Some(2));
    let out_of_range = write(dir.path(), "range.mat", "2 1 2 9\n0 0 0 1 1 1 1 1 2\n1 1 1 0 0 0 1 1 1\n");
    assert_eq!(code(&["distance", &out_of_range, &x]), Some(2));
    let deficient = write(dir.path(), "rank.mat", "2 1 2 9\n1 1 1 1 1 1 1 1 1\n1 1 1 1 1 1 1 1 1\n");
    assert_eq!(code(&["distance", &deficient, &x]), Some(2));

    let degenerate = write(dir.path(), "deg.mat", "2 1 2 9\n1 0 0 0 0 0 0 0 0\n0 1 1 1 1 1 1 1 0\n");
    assert_eq!(code(&["distance", &degenerate, &x]), Some(3));

    let short = write(dir.path(), "short.mat", "2 1 2 8\n1 0 0 0 1 1 1 1\n0 1 1 1 1 1 1 0\n");
    assert_eq!(code(&["distance", &short, &x]), Some(4));
    let tiny = write(dir.path(), "tiny.mat", "2 1 2 3\n1 0 1\n0 1 1\n");
    assert_eq!(code(&["distance", &tiny, &tiny]), Some(4));
    assert_eq!(code(&["witness", "2", "2", "1", "9", "w"]), Some(4));
    assert_eq!(code(&["witness", "2", "2", "0", "8", "w"]), Some(4));
    assert_eq!(code(&["witness", "6", "2", "0", "40", "w"]), Some(4));

    assert_eq!(code(&["distance", "--oracle", "--cap", "100", &x, &x]), Some(5));
    assert_eq!(code(&["count", "10", "3", "2", "--enumerate"]), Some(5));
    assert_eq!(code(&["scan-theorem1", "9", "2", "2", "--cap", "10"]), Some(5));
}

#[test]
fn witness_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("w");
    let prefix = prefix.to_str().unwrap();
    let out = run(&["witness", "2", "3", "1", "10", prefix]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("d=2 d_c=3"));
    let (x, y, c) = (format!("{prefix}_X.mat"), format!("{prefix}_Y.mat"), format!("{prefix}_cert.json"));
    assert!(stdout(&run(&["distance", &x, &y])).starts_with("d=2 d_c=3"));

    let out = run(&["certify", &x, &y, &c]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let mut doc: CertificateDocument = serde_json::from_str(&std::fs::read_to_string(&c).unwrap()).unwrap();
    assert_eq!((doc.n, doc.k, doc.m, doc.entries.len()), (10, 3, 1, 18));
    doc.entries.pop();
    let cut = write(dir.path(), "cut.json", &serde_json::to_string(&doc).unwrap());
    assert_eq!(run(&["certify", &x, &y, &cut]).status.code(), Some(1));

    // The certificate of one pair does not certify the swapped pair.
    assert_eq!(run(&["certify", &y, &x, &c]).status.code(), Some(1));
}

#[test]
fn counts() {
    let out = stdout(&run(&["count", "4", "2", "2", "--enumerate"]));
    assert!(out.contains("[4 2]_2 = 35"));
    assert!(out.contains("non-degenerate = 13"));
    assert!(out.contains("(match)"));
    let out = stdout(&run(&["count", "7", "7", "3"]));
    assert!(out.contains("= 1\nnon-degenerate = 1"));
    let doc: ReportDocument =
        serde_json::from_slice(&run(&["count", "30", "6", "9", "--json"]).stdout).unwrap();
    assert!(doc.counts["subspaces"].len() > 30);
}

#[test]
fn scan_reports_do_not_depend_on_workers() {
    let a = run(&["scan-theorem1", "6", "2", "2", "--json", "--parallel", "1"]);
    let b = run(&["scan-theorem1", "6", "2", "2", "--json", "--parallel", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: ReportDocument = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc.counts["exceptional"], "0");
    assert!(doc.checks["bound_holds"]);
}
