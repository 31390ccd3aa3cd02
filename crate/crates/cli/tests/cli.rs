use std::path::Path;
use std::process::{Command, Output};

fn pairspan(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pairspan"))
        .current_dir(dir)
        .env("PAIRSPAN_THREADS", "2")
        .args(args)
        .output()
        .expect("binary runs")
}

fn status(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Drops the last CSV column.
fn without_timing(csv: &str) -> Vec<String> {
    csv.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect()
}

fn setup(dir: &Path) {
    let out = pairspan(dir, &["gen", "--model", "gnp", "--n", "120", "--p", "0.08", "--seed", "5", "--out", "g.txt"]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
    let out = pairspan(dir, &["pairs", "--in", "g.txt", "--mode", "random-pairs", "--count", "15", "--seed", "5", "--out", "p.txt"]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
}

#[test]
fn gen_writes_the_requested_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out = pairspan(dir.path(), &["gen", "--model", "grid", "--rows", "3", "--cols", "3"]);
    assert_eq!(status(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("9 12"));
    assert_eq!(text.lines().count(), 13);

    let out = pairspan(dir.path(), &["gen", "--model", "cycle", "--n", "6"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().next(), Some("6 6"));
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["gen", "--n", "100", "--p", "0.1", "--seed", "42"];
    assert_eq!(pairspan(dir.path(), &args).stdout, pairspan(dir.path(), &args).stdout);
}

#[test]
fn every_construction_builds_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    for c in ["subsetwise", "sourcewise", "pairwise-near", "pairwise-pure", "mult", "preserver"] {
        for beta in ["auto", "0.3"] {
            let out = pairspan(
                dir.path(),
                &["build", "--in", "g.txt", "--pairs", "p.txt", "--construction", c, "--beta", beta, "--out", "h.txt"],
            );
            assert_eq!(status(&out), 0, "{c}: {}", stderr(&out));
            let out = pairspan(
                dir.path(),
                &["verify", "--in", "g.txt", "--spanner", "h.txt", "--pairs", "p.txt", "--construction", c],
            );
            assert_eq!(status(&out), 0, "{c}: {}", stderr(&out));
            assert!(String::from_utf8_lossy(&out.stdout).contains("pass"));
        }
    }
}

#[test]
fn mult_with_log_k_needs_no_pairs() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    let out = pairspan(dir.path(), &["build", "--in", "g.txt", "--construction", "mult", "--k", "log"]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
}

#[test]
fn empty_spanner_fails_verification_with_status_2() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    std::fs::write(dir.path().join("empty.txt"), "120 0\n").unwrap();
    let out = pairspan(
        dir.path(),
        &["verify", "--in", "g.txt", "--spanner", "empty.txt", "--pairs", "p.txt", "--construction", "subsetwise"],
    );
    assert_eq!(status(&out), 2);
    assert!(stderr(&out).contains("unreachable"), "{}", stderr(&out));
}

#[test]
fn usage_and_io_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    let cases: [&[&str]; 6] = [
        &["build", "--in", "g.txt", "--pairs", "p.txt", "--construction", "greedy"],
        &["build", "--in", "g.txt", "--pairs", "p.txt", "--construction", "mult", "--beta", "1.5"],
        &["build", "--in", "g.txt", "--pairs", "p.txt", "--construction", "pairwise-pure", "--k", "0"],
        &["build", "--in", "missing.txt", "--construction", "mult"],
        &["build", "--in", "g.txt", "--construction", "subsetwise"],
        &["frobnicate"],
    ];
    for args in cases {
        assert_eq!(status(&pairspan(dir.path(), args)), 1, "{args:?}");
    }
    std::fs::write(dir.path().join("bad.txt"), "3 1\n2 1\n").unwrap();
    let out = pairspan(dir.path(), &["build", "--in", "bad.txt", "--construction", "mult"]);
    assert_eq!(status(&out), 1);
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
    assert_eq!(status(&pairspan(dir.path(), &["--help"])), 0);
}

#[test]
fn bench_is_deterministic_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "bench", "--n", "150", "--p", "0.05", "--seed", "11", "--mode", "subset-cross", "--count", "8",
        "--instances", "3", "--beta", "0.3", "--construction", "subsetwise,sourcewise,pairwise-near,pairwise-pure,preserver",
    ];
    let first = pairspan(dir.path(), &args);
    let second = pairspan(dir.path(), &args);
    assert_eq!(status(&first), 0, "{}", stderr(&first));
    let a = String::from_utf8(first.stdout).unwrap();
    let b = String::from_utf8(second.stdout).unwrap();
    assert_eq!(a.lines().count(), 1 + 3 * 5);
    assert_eq!(without_timing(&a), without_timing(&b));
}

#[test]
fn bench_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = pairspan(dir.path(), &["bench", "--n", "60", "--count", "0", "--csv", "out.csv"]);
    assert_eq!(status(&out), 0, "{}", stderr(&out));
    let text = std::fs::read_to_string(dir.path().join("out.csv")).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("construction,n,m,N_or_S"));
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[7], "0", "edges_bought in {line}");
        assert_eq!(cols[11], "true", "stretch_pass in {line}");
    }
}
