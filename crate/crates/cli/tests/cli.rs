use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_topmono"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn exit(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(args: &[&str], stdin: Option<&str>) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full, stdin);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    let schema: Value = serde_json::from_str(topmono::report::REPORT_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{v}: {errors:?}");
    (v, exit(&o))
}

fn witness_line(out: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix("witness: "))
        .expect("witness printed")
        .to_string()
}

#[test]
fn example_is_not_top_monotonic() {
    let o = run(&["test", "--profile", &fixture("example.toc")], None);
    assert_eq!(exit(&o), 1);
    assert!(stdout(&o).contains("not top monotonic"));
    let o = run(&["test", "--brute-force", "--profile", &fixture("example.toc")], None);
    assert_eq!(exit(&o), 1);
}

#[test]
fn printed_witness_passes_check() {
    for name in ["single_peaked.toc", "ties.toc", "single_voter.toc", "no_voters.toc"] {
        let f = fixture(name);
        let o = run(&["test", "--profile", &f], None);
        assert_eq!(exit(&o), 0, "{name}");
        let w = witness_line(&stdout(&o));
        let c = run(&["check", "--profile", &f, "--order", &w], None);
        assert_eq!(exit(&c), 0, "{name} {w}");
        assert_eq!(stdout(&c).trim(), "holds");
    }
}

#[test]
fn check_reports_the_violation() {
    let o = run(
        &["check", "--profile", &fixture("example.toc"), "--order", "x>y>z"],
        None,
    );
    assert_eq!(exit(&o), 1);
    assert!(stdout(&o).contains("strict preference"), "{}", stdout(&o));
    let (v, code) = json(
        &["check", "--profile", &fixture("example.toc"), "--order", "x > y > z"],
        None,
    );
    assert_eq!(code, 1);
    assert_eq!(v["violation"]["reason"], "StrictRequired");
    assert_eq!(v["violation"]["witness_set"], serde_json::json!(["x", "y", "z"]));
}

#[test]
fn solve_nb_outputs() {
    let o = run(&["solve-nb", "--constraints", &fixture("unsat_triple.nb")], None);
    assert_eq!((exit(&o), stdout(&o).trim()), (1, "UNSAT"));
    let o = run(&["solve-nb", "--constraints", &fixture("single.nb")], None);
    assert_eq!((exit(&o), stdout(&o).trim()), (0, "a>c>b"));
    let (v, code) = json(&["solve-nb", "--constraints", &fixture("two.nb")], None);
    assert_eq!((v["witness"].as_str(), code), (Some("b>a>c"), 0));
}

#[test]
fn extracted_constraints_feed_the_solver() {
    let ex = run(&["extract-nb", "--profile", &fixture("example.toc")], None);
    assert_eq!(exit(&ex), 0);
    let text = stdout(&ex);
    assert_eq!(text.lines().filter(|l| l.starts_with("nb:")).count(), 3);
    let o = run(&["solve-nb", "--constraints", "-"], Some(&text));
    assert_eq!((exit(&o), stdout(&o).trim()), (1, "UNSAT"));

    let ex = run(&["extract-nb", "--profile", &fixture("single_peaked.toc")], None);
    let solved = run(&["solve-nb", "--constraints", "-"], Some(&stdout(&ex)));
    assert_eq!(exit(&solved), 0);
    let w = stdout(&solved).trim().to_string();
    let c = run(
        &["check", "--profile", &fixture("single_peaked.toc"), "--order", &w],
        None,
    );
    assert_eq!(exit(&c), 0);
}

#[test]
fn reduction_pipeline() {
    let red = run(&["reduce", "--constraints", &fixture("single.nb")], None);
    assert_eq!(exit(&red), 0);
    let gadget = stdout(&red);
    assert_eq!(
        gadget,
        std::fs::read_to_string(fixture("gadget_single.toc"))
            .unwrap()
            .lines()
            .skip(1)
            .map(|l| format!("{l}\n"))
            .collect::<String>()
    );
    let t = run(&["test-partial", "--profile", "-"], Some(&gadget));
    assert_eq!(exit(&t), 0);

    let sp = run(&["sp-extend", "--profile", "-", "--order", "a>c>b"], Some(&gadget));
    assert_eq!(exit(&sp), 0);
    let c = run(&["check", "--profile", "-", "--order", "a>c>b"], Some(&stdout(&sp)));
    assert_eq!(exit(&c), 0);

    let bad = run(&["sp-extend", "--profile", "-", "--order", "a>b>c"], Some(&gadget));
    assert_eq!(exit(&bad), 2);
    assert!(!bad.stderr.is_empty());

    let red = run(&["reduce", "--constraints", &fixture("unsat_triple.nb")], None);
    let t = run(
        &["test-partial", "--max-voters", "9", "--profile", "-"],
        Some(&stdout(&red)),
    );
    assert_eq!(exit(&t), 1);
    let t = run(&["test-partial", "--profile", "-"], Some(&stdout(&red)));
    assert_eq!(exit(&t), 2, "nine voters exceed the default cap");
}

#[test]
fn generated_profiles_are_deterministic_and_parse() {
    let args = [
        "gen",
        "--kind",
        "single-peaked",
        "--alts",
        "6",
        "--voters",
        "5",
        "--seed",
        "7",
    ];
    let a = run(&args, None);
    let b = run(&args, None);
    assert_eq!(exit(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("# axis: "));
    let t = run(&["test", "--profile", "-"], Some(&stdout(&a)));
    assert_eq!(exit(&t), 0);
    let (v, _) = json(&["gen", "--kind", "dichotomous", "--alts", "3", "--voters", "2"], None);
    assert_eq!(v["command"], "gen");
    assert_eq!(
        exit(&run(&["gen", "--kind", "zigzag", "--alts", "3", "--voters", "2"], None)),
        2
    );
}

#[test]
fn json_reports_validate() {
    let (v, code) = json(&["test", "--profile", &fixture("example.toc")], None);
    assert_eq!((v["status"].as_str(), code), (Some("NotTopMonotonic"), 1));
    let (v, _) = json(
        &["test", "--brute-force", "--profile", &fixture("single_peaked.toc")],
        None,
    );
    assert_eq!(v["method"], "brute-force");
    let (v, code) = json(&["test-partial", "--profile", &fixture("gadget_single.toc")], None);
    assert_eq!(code, 0);
    assert!(v["extension"].is_string());
    let (v, _) = json(&["extract-nb", "--profile", &fixture("example.toc")], None);
    assert_eq!(v["command"], "extract-nb");
    let (v, _) = json(&["reduce", "--constraints", &fixture("two.nb")], None);
    assert_eq!(v["command"], "reduce");
    let (v, _) = json(
        &[
            "sp-extend",
            "--profile",
            &fixture("gadget_single.toc"),
            "--order",
            "a>c>b",
        ],
        None,
    );
    assert_eq!(v["command"], "sp-extend");
}

#[test]
fn analyze_example() {
    let (v, code) = json(&["analyze", "--profile", &fixture("example.toc")], None);
    assert_eq!(code, 0);
    assert_eq!(v["dichotomous"], true);
    assert_eq!(v["tm"]["status"], "NotTopMonotonic");
    assert_eq!(v["constraint_count"], 3);
    assert_eq!(v["condorcet_winners"], serde_json::json!(["x", "y", "z"]));
    // analyze always prints JSON
    let o = run(&["analyze", "--profile", &fixture("single_peaked.toc")], None);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["sp_axis"].is_string());
}

#[test]
fn errors_and_exit_codes() {
    let o = run(&["test", "--profile", "/nonexistent/profile.toc"], None);
    assert_eq!(exit(&o), 2);
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1);

    let o = run(
        &["test", "--profile", "-"],
        Some("alternatives: x, y, z\nvoter 1: {x} > {y}\n"),
    );
    assert_eq!(exit(&o), 2);
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("line 2"),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );

    let o = run(&["test", "--profile", &fixture("gadget_single.toc")], None);
    assert_eq!(exit(&o), 2);

    let o = run(&["check", "--profile", &fixture("example.toc"), "--order", "x>y"], None);
    assert_eq!(exit(&o), 2);

    let o = run(&["test", "--budget", "1", "--profile", &fixture("example.toc")], None);
    assert_eq!(exit(&o), 3);
    let (v, code) = json(
        &[
            "solve-nb",
            "--budget",
            "1",
            "--constraints",
            &fixture("unsat_triple.nb"),
        ],
        None,
    );
    assert_eq!((v["kind"].as_str(), code), (Some("budget"), 3));
    let (v, code) = json(&["test", "--profile", "/nonexistent"], None);
    assert_eq!((v["kind"].as_str(), code), (Some("io"), 2));
}
