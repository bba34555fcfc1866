//! End-to-end tests of the `gtl` binary: exit-status contract, output
//! determinism, and the compute/render/enumerate surfaces.

use std::process::{Command, Output};

fn gtl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_suite_passes_with_exit_zero() {
    let out = gtl(&[
        "verify",
        "--suite",
        "xy-inverse",
        "--param",
        "N=2",
        "--param",
        "k=1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("\"suite\": \"xy-inverse\""));
    assert!(text.contains("\"failures\": []"));
    assert!(!text.contains("wall_ms"));
}

#[test]
fn verify_output_is_byte_identical_across_runs() {
    let args = [
        "verify",
        "--suite",
        "moments",
        "--param",
        "mmax=4",
        "--param",
        "kmax=1",
    ];
    let first = gtl(&args);
    let second = gtl(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = gtl(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_param_is_a_usage_error() {
    let out = gtl(&["verify", "--suite", "xy-inverse", "--param", "N=two"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn genuine_verification_failure_exits_one() {
    // At δ = 1/2 the Markov form has genuinely negative eigenvalues, so
    // the positivity suite must report failure.
    let out = gtl(&[
        "verify",
        "--suite",
        "gram",
        "--param",
        "s0=0.70710678",
        "--param",
        "nk=2",
        "--param",
        "jux_grade=2",
        "--param",
        "jux_k=0",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("min eig"));
}

#[test]
fn compute_star_of_cups() {
    let out = gtl(&["compute", "star(cup(0), cup(0))"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // u ⋆ u = uu + u + δ·1: three graded parts, δ = s^2 on the unit.
    assert!(text.contains("\"context\": 0"));
    assert!(text.contains("\"grade\": 0"));
    assert!(text.contains("\"grade\": 1"));
    assert!(text.contains("\"grade\": 2"));
    assert!(text.contains("s^2"));
}

#[test]
fn compute_x_matches_expansion() {
    let via_x = gtl(&["compute", "X(cup(0))"]);
    assert_eq!(via_x.status.code(), Some(0));
    // X(u) = u + δ·1.
    let text = stdout(&via_x);
    assert!(text.contains("\"grade\": 0") && text.contains("\"grade\": 1"));
    assert!(text.contains("s^2"));
    // Capital and lowercase names agree, and Y inverts X.
    let lower = gtl(&["compute", "x(cup(0))"]);
    assert_eq!(via_x.stdout, lower.stdout);
    let roundtrip = gtl(&["compute", "Y(X(cup(0)))"]);
    let plain = gtl(&["compute", "cup(0)"]);
    assert_eq!(roundtrip.stdout, plain.stdout);
    // E undoes the inclusion.
    let expected = gtl(&["compute", "E(include(cup(1)))"]);
    let cup1 = gtl(&["compute", "cup(1)"]);
    assert_eq!(expected.stdout, cup1.stdout);
}

#[test]
fn compute_bullet_is_plain_juxtaposition() {
    let out = gtl(&["compute", "bullet(cup(0), cup(0))"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"grade\": 2"));
    assert!(!text.contains("\"grade\": 0"));
}

#[test]
fn compute_rejects_malformed_input() {
    assert_eq!(gtl(&["compute", "star(cup(0)"]).status.code(), Some(2));
    assert_eq!(gtl(&["compute", "frobnicate(1)"]).status.code(), Some(2));
    assert_eq!(gtl(&["compute", "jones(5, 2)"]).status.code(), Some(2));
}

#[test]
fn render_ascii_and_svg() {
    let out = gtl(&["render", "--pairing", "2->0:{(B1,B2)}"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("B1"));

    let out = gtl(&[
        "render",
        "--pairing",
        "2->2:{(B1,B2),(T1,T2)}",
        "--format",
        "svg",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = stdout(&out);
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<path").count(), 2);

    let out = gtl(&["render", "--element", "P(1,1):{(T1,T2),(L1,R1)}"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("L1"));
}

#[test]
fn render_rejects_crossings_and_oversize() {
    let out = gtl(&["render", "--pairing", "2->2:{(B1,T2),(B2,T1)}"]);
    assert_eq!(out.status.code(), Some(2));
    let big = format!(
        "42→42:{{{}}}",
        (1..=42)
            .map(|i| format!("(B{i},T{i})"))
            .collect::<Vec<_>>()
            .join(",")
    );
    let out = gtl(&["render", "--pairing", &big]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_counts() {
    let out = gtl(&["enumerate", "--bottom", "4", "--top", "0", "--count"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "2");

    let out = gtl(&[
        "enumerate",
        "--bottom",
        "4",
        "--top",
        "2",
        "--filter",
        "epi",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("count: 3"));
    assert!(text.contains("4→2:{(B1,B2),(B3,T1),(B4,T2)}"));

    let out = gtl(&["enumerate", "--bottom", "3", "--top", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gram_single_cell_params() {
    let out = gtl(&[
        "verify",
        "--suite",
        "gram",
        "--param",
        "n=2",
        "--param",
        "k=1",
        "--param",
        "s0=1.4142135",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("\"n\": \"2\""));
    assert!(text.contains("\"cases\": 1"));
    assert!(text.contains("\"failures\": []"));
}

#[test]
fn verify_writes_report_to_file() {
    let dir = std::env::temp_dir().join("gtl-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = gtl(&[
        "verify",
        "--suite",
        "commutator",
        "--param",
        "nmax=2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("commutator: PASS"));
    let data = std::fs::read_to_string(&path).unwrap();
    assert!(data.contains("\"suite\": \"commutator\""));
    std::fs::remove_file(&path).ok();
}

#[test]
fn norm_probe_is_monotone_for_the_cup() {
    let out = gtl(&["norm-probe", "cup(0)", "--nmax", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("\"norms\""));
    let values: Vec<f64> = text
        .split('[')
        .nth(1)
        .unwrap()
        .split(']')
        .next()
        .unwrap()
        .split(',')
        .map(|v| v.trim().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 4);
    for w in values.windows(2) {
        assert!(w[1] >= w[0] - 1e-9);
    }
}

#[test]
fn timing_flag_adds_wall_ms() {
    let out = gtl(&[
        "verify",
        "--suite",
        "commutator",
        "--param",
        "nmax=1",
        "--timing",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("wall_ms"));
}
