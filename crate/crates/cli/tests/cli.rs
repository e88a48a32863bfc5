use std::io::Write;
use std::process::{Command, Output, Stdio};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agroupoid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_agroupoid"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn data(name: &str) -> String {
    format!("{DATA}/{name}")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_f1() {
    let o = run(&["analyze", &data("f1.mag")]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "mu: a e | b f\nsigma: a b | e f\ntau: a b | e f\npi: a | b | e | f\n"
    );
}

#[test]
fn check_f2() {
    let o = run(&["check", &data("f2.mag")]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("is_ag_group: true\n"));
    assert!(text.contains("is_associative: false\n"));
}

#[test]
fn decompose_then_compose() {
    let d = run(&["decompose", &data("f1.mag")]);
    assert!(d.status.success());
    let c = run_stdin(&["compose", "-"], &d.stdout);
    assert!(c.status.success(), "{}", String::from_utf8_lossy(&c.stderr));
    let g = agroupoid::parse_mag(&stdout(&c)).unwrap();
    assert!(agroupoid::enumerate::is_isomorphic(&g, &agroupoid::fixtures::f1()));
}

#[test]
fn derive_needs_a_semigroup() {
    let ok = run(&["derive", &data("f1.mag")]);
    assert!(ok.status.success());
    let bad = run(&["derive", &data("f2.mag")]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn parse_errors_name_line_and_token() {
    let o = run_stdin(&["check", "-"], b"2\na b\na b\na x\n");
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
    assert!(err.contains("`x`"), "{err}");
}

#[test]
fn analyze_rejects_non_inverse() {
    let o = run_stdin(&["analyze", "-"], b"2\n0 1\n0 0\n0 0\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_blocks_and_census() {
    let o = run(&["enumerate", "--order", "2", "--class", "completely-inverse"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).split("\n\n").count(), 2);
    let c = run(&["enumerate", "--order", "3", "--class", "completely-inverse", "--census-only"]);
    assert_eq!(stdout(&c), "6\n");
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "--order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().last().unwrap().contains("0 failed"));
    assert_eq!(run(&["verify", "--order", "2", "--only", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--order", "9"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_across_runs_and_threads() {
    let f1 = data("f1.mag");
    let commands: Vec<Vec<&str>> = vec![
        vec!["lattice", &f1],
        vec!["congruences", &f1],
        vec!["enumerate", "--order", "3", "--class", "ag"],
        vec!["verify", "--order", "3"],
    ];
    for args in commands {
        let base = run(&args).stdout;
        assert_eq!(run(&args).stdout, base, "{args:?}");
        for t in ["1", "3"] {
            let mut threaded = vec!["--threads", t];
            threaded.extend(&args);
            assert_eq!(run(&threaded).stdout, base, "{args:?} with {t} threads");
        }
    }
}
