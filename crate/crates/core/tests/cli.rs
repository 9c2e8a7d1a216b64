use std::fs;
use std::process::{Command, Output};

fn nutkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nutkit"))
        .args(args)
        .env_remove("NUTKIT_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn check_reports_all_verdicts() {
    let out = nutkit(&["check", "t1", "6", "2", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in [
        "predicate   nut = true",
        "cyclotomic  nut = true",
        "kernel      nut = true",
    ] {
        assert!(text.contains(line), "{text}");
    }
    assert!(text.contains("vector      1 1 1 1 1 1 | 1 1 1 1 1 1 | -2 -2 -2 -2 -2 -2"));
    assert!(text.contains("root orders {1}"));

    let text = stdout(&nutkit(&["check", "t4", "10", "1", "2"]));
    assert!(text.contains("predicate   nut = false"));
    assert!(text.contains("condition (iv)"), "{text}");

    let out = nutkit(&["check", "circulant", "8", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("kernel      nut = false"));
}

#[test]
fn usage_errors_exit_one() {
    let out = nutkit(&["check", "t1", "6", "2", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("usage: nutkit check"));
    assert_eq!(
        nutkit(&["check", "t9", "6", "2", "4"]).status.code(),
        Some(1)
    );
    assert_eq!(nutkit(&["census", "--n-max", "1"]).status.code(), Some(1));
    assert_eq!(nutkit(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(nutkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn census_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t1.csv");
    let json = dir.path().join("t1.json");
    let out = nutkit(&[
        "census",
        "--families",
        "t1",
        "--n-max",
        "6",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("family,n,a,b,predicate,cyclotomic,kernel,nullity,agree")
    );
    let nut: Vec<_> = lines
        .filter(|l| l.split(',').nth(6) == Some("true"))
        .collect();
    assert_eq!(nut, ["t1,6,2,4,true,true,true,1,true"]);

    let out = nutkit(&[
        "census",
        "--families",
        "t2,b3",
        "--n-max",
        "8",
        "--workers",
        "2",
        "--format",
        "json",
        "--out",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let records: Vec<serde_json::Value> =
        serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert!(!records.is_empty());
    assert!(records
        .iter()
        .all(|r| r["kernel"] == false && r["cyclotomic"].is_null()));
}

#[test]
fn appendix_files_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a1.csv");
    let second = dir.path().join("a2.csv");
    for path in [&first, &second] {
        let out = nutkit(&["appendix", "--which", "a", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = fs::read(&first).unwrap();
    assert_eq!(a, fs::read(&second).unwrap());
    let text = String::from_utf8(a).unwrap();
    let f3: Vec<_> = text.lines().filter(|l| l.starts_with("3,")).collect();
    assert_eq!(f3, ["3,0,0"]);

    let b = stdout(&nutkit(&["appendix", "--which", "b"]));
    assert!(!b
        .lines()
        .any(|l| l.starts_with("5,") || l.starts_with("7,")));
    let f42: Vec<_> = b.lines().filter(|l| l.starts_with("42,")).collect();
    assert_eq!(f42, ["42,21,21"]);
}

#[test]
fn kernel_and_graph_outputs() {
    let kernel = stdout(&nutkit(&["kernel", "t1", "6", "2", "4"]));
    let values: Vec<i64> = kernel
        .split_whitespace()
        .map(|x| x.parse().unwrap())
        .collect();
    assert_eq!(values.len(), 18);
    assert_eq!(&values[12..], &[-2; 6]);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let out = nutkit(&[
        "graph",
        "t4",
        "12",
        "1",
        "2",
        "--emit-graph",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let g =
        nutkit::voltage::Graph::from_adjacency_text(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(g.vertex_count(), 36);
    assert!(g.is_cubic());
}
