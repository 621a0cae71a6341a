use std::collections::BTreeSet;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_topk-subsets"))
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sums_for_small_input() {
    let o = run_with_stdin(
        &["topk", "--k", "5", "--algo", "compact", "--output", "sums"],
        "1 2 3 4\n",
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1\t1\n2\t2\n3\t3\n4\t3\n5\t4\n");
}

#[test]
fn every_algorithm_gives_the_same_sums() {
    let text = "# weights\n14 3 51 7\n25 12 45\n";
    let sums = |algo: &str| {
        let o = run_with_stdin(&["topk", "--k", "40", "--algo", algo], text);
        assert!(o.status.success(), "{algo}");
        stdout(&o)
            .lines()
            .map(|l| l.split('\t').nth(1).unwrap().to_string())
            .collect::<Vec<_>>()
    };
    let want = sums("baseline");
    assert_eq!(want.len(), 40);
    for algo in ["dedup", "bitvec", "compact"] {
        assert_eq!(sums(algo), want, "{algo}");
    }
}

#[test]
fn compact_subsets_match_bitvec_on_distinct_sums() {
    let text = "1 2 4 8 16 32";
    let lines = |algo: &str| {
        let o = run_with_stdin(
            &["topk", "--k", "63", "--algo", algo, "--output", "subsets"],
            text,
        );
        assert!(o.status.success());
        stdout(&o)
            .lines()
            .map(|l| l.split_once('\t').unwrap().1.to_string())
            .collect::<BTreeSet<_>>()
    };
    let compact = lines("compact");
    assert_eq!(compact.len(), 63);
    assert_eq!(compact, lines("bitvec"));
    assert!(compact.contains("5\t1,3"));
}

#[test]
fn deltas_output() {
    let o = run_with_stdin(&["topk", "--k", "3", "--output", "deltas"], "1 2 3 4");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1\t1\t-\t-\t1\n2\t2\t1\t1\t2\n3\t3\t2\t2\t3\n");
}

#[test]
fn deltas_need_compact() {
    let o = run_with_stdin(
        &["topk", "--k", "3", "--algo", "bitvec", "--output", "deltas"],
        "1 2 3",
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_flags_exit_2() {
    for args in [
        &["topk", "--k", "0"][..],
        &["topk", "--k", "3", "--algo", "heap"],
        &["topk"],
        &["verify", "--n-max", "17"],
        &["dag", "--n", "11"],
    ] {
        let o = run_with_stdin(args, "1 2");
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn input_errors_exit_3() {
    for text in [
        "",
        "# nothing\n",
        "1 x 3",
        "4 -1",
        "9223372036854775807 9223372036854775807",
    ] {
        let o = run_with_stdin(&["topk", "--k", "1"], text);
        assert_eq!(o.status.code(), Some(3), "{text:?}");
    }
    let o = bin()
        .args(["topk", "--k", "1", "--input", "/nonexistent/values.txt"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn truncation_is_a_notice() {
    let o = run_with_stdin(&["topk", "--k", "10", "--algo", "bitvec"], "5 6");
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds"));
}

#[test]
fn float_mode() {
    let o = run_with_stdin(
        &["topk", "--k", "3", "--mode", "float", "--output", "subsets"],
        "0.5 0.25 2.0",
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1\t0.25\t1\n2\t0.5\t2\n3\t0.75\t1,2\n");
}

#[test]
fn input_file_and_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("values.txt");
    let metrics = dir.path().join("metrics.txt");
    fs::write(&input, "3 7 12 14 25 45 51\n").unwrap();
    let o = bin()
        .args(["topk", "--k", "4", "--algo", "baseline", "--input"])
        .arg(&input)
        .arg("--metrics")
        .arg(&metrics)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1\t3\n2\t7\n3\t10\n4\t12\n");
    let m = fs::read_to_string(&metrics).unwrap();
    for line in [
        "variant=baseline",
        "n=7",
        "k=4",
        "reported=4",
        "total_insertions=9",
        "peak_size=5",
        "extractions=4",
    ] {
        assert!(m.lines().any(|l| l == line), "missing {line} in\n{m}");
    }
}

#[test]
fn faithful_dedup_with_ties() {
    let o = run_with_stdin(
        &[
            "topk",
            "--k",
            "8",
            "--algo",
            "dedup",
            "--edge-set",
            "incr",
            "--faithful",
            "--output",
            "subsets",
        ],
        "0 0 0",
    );
    assert!(o.status.success());
    let subsets: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.rsplit('\t').next().unwrap().to_string())
        .collect();
    assert_eq!(subsets.len(), 8);
    assert_eq!(subsets.iter().collect::<BTreeSet<_>>().len(), 7);
    let o = run_with_stdin(&["topk", "--k", "3", "--faithful"], "1 2");
    assert_eq!(o.status.code(), Some(2));
}

/// The first lines arrive while the enumeration is still running.
#[test]
fn output_streams() {
    let values: Vec<String> = (1..=1000).map(|v| v.to_string()).collect();
    let mut child = bin()
        .args(["topk", "--k", "1000000000", "--output", "subsets"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(values.join(" ").as_bytes())
        .unwrap();
    let mut lines = BufReader::new(child.stdout.take().unwrap()).lines();
    assert_eq!(lines.next().unwrap().unwrap(), "1\t1\t1");
    assert_eq!(lines.next().unwrap().unwrap(), "2\t2\t2");
    assert!(
        child.try_wait().unwrap().is_none(),
        "process finished before the reader caught up"
    );
    child.kill().unwrap();
    child.wait().unwrap();
}

#[test]
fn verify_passes_and_catches_fault() {
    let o = bin()
        .args(["verify", "--n-max", "8", "--seeds", "5"])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS  oracle/compact"));

    let o = bin()
        .args([
            "verify",
            "--n-max",
            "8",
            "--seeds",
            "5",
            "--algos",
            "dedup",
            "--edge-set",
            "incr",
        ])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("oracle/dedup-incr"));

    let o = bin()
        .args([
            "verify",
            "--n-max",
            "8",
            "--seeds",
            "5",
            "--inject-fault",
            "type2-cursor",
        ])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let line = text
        .lines()
        .find(|l| l.starts_with("FAIL  oracle/compact"))
        .unwrap();
    assert!(
        line.contains("n=") && line.contains("seed=") && line.contains("k="),
        "{line}"
    );
}

#[test]
fn verify_defaults_pass() {
    let o = bin().arg("verify").output().unwrap();
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn bench_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let o = bin()
        .args([
            "bench",
            "--n-list",
            "100",
            "--k-list",
            "1000",
            "--algos",
            "baseline,compact",
            "--csv",
        ])
        .arg(&csv)
        .output()
        .unwrap();
    assert!(o.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "n,k,variant,seed,elapsed_ns,total_insertions,peak_size,reported_count"
    );
    assert_eq!(lines.len(), 3);
    let baseline: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(baseline[2], "baseline");
    assert_eq!(baseline[5], "2001");
    assert!(lines[2].starts_with("100,1000,compact,"));

    let o = bin()
        .args([
            "bench", "--n-list", "50", "--k-list", "100", "--algos", "compact", "--reps", "5",
        ])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn dag_export() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let o = bin()
        .args(["dag", "--n", "4", "--dot"])
        .arg(&dot)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "nodes=15 edges=14");
    let text = fs::read_to_string(&dot).unwrap();
    let id = |label: &str| {
        let line = text
            .lines()
            .find(|l| l.contains(&format!("[label=\"{label}\"]")) && !l.contains("->"))
            .unwrap();
        line.trim().split(' ').next().unwrap().to_string()
    };
    let edge = format!("{} -> {} [label=\"Type1\"]", id("1010"), id("1001"));
    assert!(text.contains(&edge), "missing {edge}");

    let o = bin()
        .args(["dag", "--n", "1", "--dot", "-"])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("->").count(), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("nodes=1 edges=0"));
}
