use std::process::{Command, Output};

use ictn::characters::CharRecord;
use ictn::cotangent::SinCosExpr;
use ictn::golden::{table_fixture, to_fixture_json, GoldenFixture};
use ictn::series::SeriesRecord;
use ictn::verify::Report;
use ictn::CycElem;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ictn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_threads(threads: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ictn"))
        .env("ICTN_THREADS", threads)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

/// Parses `text` and checks that serializing it again gives the same bytes.
fn round_trip<T: Serialize + DeserializeOwned>(text: &str) -> T {
    let v: T = serde_json::from_str(text).unwrap();
    assert_eq!(to_fixture_json(&v), text);
    v
}

#[test]
fn table_rows() {
    assert_eq!(
        ok(&["table", "--n", "11", "--r", "1", "--basis", "half-angle"]),
        "-1/11*sa_1 - 1/11*sa_2 - 1/11*sa_4 - 1/11*sa_5\n"
    );
    let want = table_fixture(15, 4).unwrap().to_expr().unwrap().render();
    assert_eq!(
        ok(&["table", "--n", "15", "--r", "4", "--basis", "half-angle"]),
        format!("{want}\n")
    );
    assert_eq!(
        ok(&["table", "--n", "3", "--r", "2", "--basis", "sc", "--which", "ct"]),
        "-4/3*c_1\n"
    );
}

#[test]
fn table_rejects_half_angle_for_non_squarefree() {
    let o = run(&["table", "--n", "9", "--r", "2", "--basis", "half-angle"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("square-free"));
    ok(&["table", "--n", "9", "--r", "2", "--basis", "zeta"]);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--n", "11"]).status.code(), Some(2));
    assert_eq!(
        run(&["table", "--n", "2", "--r", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["table", "--n", "11", "--r", "1", "--basis", "polar"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--n", "9", "--r", "2", "--methods", "theorem1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--n", "9", "--r", "2", "--methods", "guess"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["series", "--n", "11", "--r", "2", "--series-limit", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_examples() {
    let out = ok(&[
        "verify",
        "--n",
        "15",
        "--r",
        "3",
        "--methods",
        "theorem1,theorem2,matrix",
    ]);
    assert!(out.contains("PASS theorem1 = theorem2"));
    assert!(out.contains("PASS theorem2 = matrix"));
    assert!(!out.contains("FAIL"));
    ok(&[
        "verify",
        "--n",
        "9",
        "--r",
        "2",
        "--methods",
        "theorem2,matrix",
    ]);
    let out = ok(&[
        "verify",
        "--n",
        "35",
        "--r",
        "3",
        "--methods",
        "series",
        "--series-limit",
        "10000",
    ]);
    assert!(out.contains("-0.0001183138672025"), "{out}");
    assert!(out.contains("-0.0001183138671904"), "{out}");
}

#[test]
fn golden_passes() {
    let out = ok(&["golden"]);
    assert_eq!(out.lines().count(), 20);
    assert!(out.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn json_outputs_round_trip() {
    let text = ok(&[
        "table",
        "--n",
        "14",
        "--r",
        "3",
        "--basis",
        "half-angle",
        "--format",
        "json",
    ]);
    let f: GoldenFixture = round_trip(&text);
    let want = table_fixture(14, 3).unwrap();
    assert_eq!(f.coeffs, want.coeffs);
    assert_eq!(f.basis, want.basis);

    let text = ok(&[
        "table", "--n", "15", "--r", "2", "--basis", "sc", "--format", "json",
    ]);
    let e: SinCosExpr = round_trip(&text);
    let text = ok(&["table", "--n", "15", "--r", "2", "--format", "json"]);
    let z: CycElem = round_trip(&text);
    assert_eq!(e.to_cyc(), z);

    let text = ok(&[
        "verify",
        "--n",
        "11",
        "--r",
        "2",
        "--methods",
        "theorem1,series",
        "--format",
        "json",
    ]);
    let report: Report = round_trip(&text);
    assert!(report.passed());

    let text = ok(&["chars", "--n", "15", "--format", "json"]);
    let chars: Vec<CharRecord> = round_trip(&text);
    assert_eq!(chars.len(), 8);

    let text = ok(&[
        "series", "--n", "13", "--r", "3", "--j", "2", "--format", "json",
    ]);
    let s: SeriesRecord = round_trip(&text);
    assert_eq!((s.n, s.r, s.j), (13, 3, 2));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    for args in [
        &["golden"][..],
        &["chars", "--n", "24"],
        &["verify", "--n", "21", "--r", "2"],
    ] {
        let one = run_with_threads("1", args);
        let four = run_with_threads("4", args);
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(stdout(&one), stdout(&four), "{args:?}");
        assert_eq!(stdout(&run(args)), stdout(&one), "{args:?}");
    }
}

#[test]
fn chars_lists_conductors() {
    let out = ok(&["chars", "--n", "15"]);
    let conductors: Vec<&str> = out
        .lines()
        .map(|l| {
            l.split(" conductor ")
                .nth(1)
                .unwrap()
                .split(' ')
                .next()
                .unwrap()
        })
        .collect();
    assert_eq!(conductors, ["1", "5", "5", "5", "3", "15", "15", "15"]);
}
