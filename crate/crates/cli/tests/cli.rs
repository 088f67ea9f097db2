use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pyramids"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&["count", "--a", "2", "--m", "3"]), "10\n");
    assert_eq!(stdout(&["count", "--a", "2", "--m", "1"]), "1\n");
    assert_eq!(
        stdout(&["count", "--a", "3", "--m", "3", "--verify", "enum"]),
        "28 verified\n"
    );
    assert_eq!(stdout(&["count", "--a", "2", "--m", "3", "--class", "right"]), "5\n");
    assert_eq!(
        stdout(&["count", "--a", "2", "--m", "3", "--class", "flat", "--verify", "enum"]),
        "10 verified\n"
    );
}

#[test]
fn count_formats() {
    let v = json(&["count", "--a", "2..3", "--m", "1..4", "--format", "json"]);
    assert_eq!(v["schema_version"], 1);
    let counts = v["counts"].as_array().unwrap();
    assert_eq!(counts.len(), 8);
    assert_eq!(counts[2]["count"], "10");
    assert_eq!(counts[7]["count"], "165");
    assert_eq!(
        stdout(&["count", "--a", "2", "--m", "1..4", "--format", "bfile"]),
        "1 1\n2 3\n3 10\n4 35\n"
    );
    let csv = stdout(&["count", "--a", "4", "--m", "2", "--format", "csv"]);
    assert_eq!(csv, "a,m,count,verified\n4,2,7,\n");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["count", "--a", "1", "--m", "3"]), 2);
    assert_eq!(code(&["count", "--a", "2", "--m", "0"]), 2);
    assert_eq!(code(&["count", "--a", "2", "--m", "3", "--no-such-flag"]), 2);
    assert_eq!(
        code(&["count", "--a", "2", "--m", "12", "--verify", "enum", "--budget", "100"]),
        3
    );
    assert_eq!(
        code(&["convert", "--from", "string", "--to", "walk", "--a", "2", "1x"]),
        2
    );
}

#[test]
fn convert_string_to_pyramid() {
    let v = json(&["convert", "--from", "string", "--to", "pyramid", "--a", "2", "1010"]);
    assert_eq!(v["a"], 2);
    assert_eq!(v["pieces"], serde_json::json!([[0, 1], [0, 2]]));
    let v = json(&["convert", "--from", "string", "--to", "pyramid", "--a", "2", "1100"]);
    assert_eq!(v["pieces"], serde_json::json!([[0, 1], [1, 2]]));
}

#[test]
fn convert_chains() {
    let tree = json(&["convert", "--from", "string", "--to", "tree", "--a", "3", "110000"]);
    assert_eq!(tree, serde_json::json!([[null, null, null], null, null]));
    assert_eq!(
        stdout(&["convert", "--from", "string", "--to", "walk", "--a", "3", "110000"]),
        "RRLLLL\n"
    );
    assert_eq!(
        stdout(&["convert", "--from", "walk", "--to", "path", "--a", "2", "RRLL"]),
        "UUDD\n"
    );
    let c = json(&[
        "convert",
        "--from",
        "string",
        "--to",
        "composition",
        "--a",
        "3",
        "100010",
    ]);
    assert_eq!(c["word"], "PUNT");
    let doc = r#"{"a": 2, "pieces": [[0, 1], [-1, 2], [0, 3]]}"#;
    let s = stdout(&["convert", "--from", "pyramid", "--to", "string", doc]);
    let back = json(&["convert", "--from", "string", "--to", "pyramid", "--a", "2", s.trim()]);
    assert_eq!(back["pieces"], serde_json::json!([[0, 1], [-1, 2], [0, 3]]));
}

#[test]
fn convert_round_trips() {
    for (from, to, a, input) in [
        ("string", "pyramid", "2", "100110"),
        ("string", "tree", "3", "101000"),
        ("string", "composition", "4", "10001000"),
        ("walk", "path", "3", "RLRLLL"),
        ("pyramid", "string", "3", r#"{"a": 3, "pieces": [[0, 1], [1, 2]]}"#),
    ] {
        let out = run(&["convert", "--from", from, "--to", to, "--a", a, "--round-trip", input]);
        assert!(
            out.status.success(),
            "{from} -> {to} {input}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn full_pyramid_codec_is_a2_only() {
    let doc = r#"{"a": 3, "pieces": [[0, 1], [-1, 2]]}"#;
    let out = run(&["convert", "--from", "pyramid", "--to", "string", doc]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("a = 2 only"));
}

#[test]
fn verify_suites() {
    for args in [
        &["verify", "--suite", "theorem1", "--a", "2..5"][..],
        &["verify", "--suite", "transfer", "--a", "3..8", "--r", "12"],
        &["verify", "--suite", "widths", "--a", "2", "--m", "9"],
        &["verify", "--suite", "factorization"],
        &["verify", "--suite", "lego", "--a", "2", "--m", "1..5"],
        &["verify", "--suite", "series", "--a", "2..3", "--m", "60"],
    ] {
        let v = json(args);
        assert_eq!(v["passed"], true, "{args:?}");
        assert!(!v["checks"].as_array().unwrap().is_empty());
    }
    assert_eq!(code(&["verify", "--suite", "transfer", "--a", "2"]), 2);
}

#[test]
fn width_report_approaches_one() {
    let csv = stdout(&["report", "--kind", "widths", "--a", "2", "--m", "2000"]);
    let last = csv.lines().last().unwrap();
    let ratio: f64 = last.rsplit(',').next().unwrap().parse().unwrap();
    assert!((ratio - 1.0).abs() < 0.05, "{last}");
}

#[test]
fn lego_report_has_conjecture_column() {
    let csv = stdout(&["report", "--kind", "lego", "--a", "2..8"]);
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|&c| c == "conjecture").unwrap();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 7);
    for r in rows {
        let a: f64 = r[0].parse().unwrap();
        let want = 5.0 * a.powf(a) / (4.0 * (a - 1.0).powf(a - 1.0));
        let got: f64 = r[col].parse().unwrap();
        assert!((got - want).abs() < 1e-9 * want);
    }
    let v = json(&["report", "--kind", "lego", "--a", "2", "--format", "json"]);
    let context = v["context"].to_string();
    assert!(context.contains("h_2 = 5") && context.contains("5.0012") && context.contains("6.356 a - 4.375"));
}

#[test]
fn empty_range_gives_header_only() {
    assert_eq!(
        stdout(&["report", "--kind", "series", "--a", "2", "--m", "5..1"]),
        "a,m,A,B,C\n"
    );
    let v = json(&["report", "--kind", "lego", "--a", "5..2", "--format", "json"]);
    assert_eq!(v["rows"], serde_json::json!([]));
}

#[test]
fn reports_write_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.txt");
    let plot = dir.path().join("plot.csv");
    stdout(&[
        "report",
        "--kind",
        "series",
        "--a",
        "3",
        "--m",
        "1..4",
        "--format",
        "bfile",
        "--out",
        out.to_str().unwrap(),
        "--plot",
        plot.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "1 1\n2 5\n3 28\n4 165\n");
    assert_eq!(std::fs::read_to_string(&plot).unwrap(), "x,y\n1,1\n2,5\n3,28\n4,165\n");
    let missing = dir.path().join("no/such/dir/x.csv");
    let res = run(&["report", "--kind", "series", "--out", missing.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&res.stderr).contains("no/such/dir"));
}

#[test]
fn runs_are_reproducible() {
    let args = [
        "report",
        "--kind",
        "lego",
        "--a",
        "2..3",
        "--samples",
        "64",
        "--mc-m",
        "5",
        "--seed",
        "9",
        "--format",
        "json",
    ];
    let one = stdout(&args);
    assert_eq!(one, stdout(&args));
    let mut threaded = vec!["--threads", "4"];
    threaded.extend_from_slice(&args);
    assert_eq!(one, stdout(&threaded));
}

#[test]
fn enumerate_lists_pyramids() {
    let v = json(&["enumerate", "--a", "2", "--m", "3"]);
    assert_eq!(v["pyramids"].as_array().unwrap().len(), 10);
    let text = stdout(&[
        "enumerate",
        "--a",
        "2",
        "--m",
        "2",
        "--class",
        "right",
        "--format",
        "text",
    ]);
    assert!(text.contains("[]"));
}

#[test]
fn help_documents_flags() {
    let help = stdout(&["count", "--help"]);
    for flag in ["--a", "--m", "--class", "--verify", "--budget", "--format"] {
        assert!(help.contains(flag), "{flag}");
    }
    let help = stdout(&["report", "--help"]);
    for flag in ["--kind", "--out", "--plot", "--samples", "--seed"] {
        assert!(help.contains(flag), "{flag}");
    }
}
