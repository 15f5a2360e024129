use std::process::Command;

use symeuclid::cli::{OutputRecord, Payload, Status};

fn symeuclid(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_symeuclid"))
        .args(args)
        .env_remove("SYMEUCLID_MAX_SWEEP")
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn record(args: &[&str]) -> (OutputRecord, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (stdout, _, code) = symeuclid(&full);
    assert_eq!(stdout.lines().count(), 1, "one record per invocation: {stdout}");
    (serde_json::from_str(&stdout).unwrap(), code)
}

#[test]
fn trace_text_layout() {
    let (stdout, _, code) = symeuclid(&["trace", "829", "246"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "quotients:  3 2 1 2 2 1 2 3\n\
         remainders: 829 246 91 64 27 10 7 3 1 0\n\
         convention_applied: false\n\
         symmetric: true\n\
         s: 4\n"
    );
}

#[test]
fn trace_applies_convention() {
    let (rec, code) = record(&["trace", "10", "7"]);
    assert_eq!(code, 0);
    let Some(Payload::Trace(t)) = rec.payload else { panic!() };
    assert!(t.convention_applied());
    assert_eq!(t.quotients(), &[1, 2, 2, 1]);
    assert_eq!(t.remainders(), &[10, 7, 3, 1, 1, 0]);
}

#[test]
fn trace_of_non_root_still_prints() {
    let (stdout, _, code) = symeuclid(&["trace", "7", "3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("quotients:  2 3\n"));
    assert!(stdout.contains("symmetric: false\n"));
}

#[test]
fn two_squares_commands() {
    let (stdout, _, code) = symeuclid(&["two-squares", "829", "--a", "246"]);
    assert_eq!((stdout.as_str(), code), ("27 10\n", 0));

    let (rec, code) = record(&["two-squares", "65", "--all"]);
    assert_eq!(code, 0);
    let Some(Payload::TwoSquares { representations }) = rec.payload else { panic!() };
    let pairs: Vec<(u128, u128)> = representations.iter().map(|r| (r.x, r.y)).collect();
    assert_eq!(pairs, vec![(8, 1), (7, 4)]);

    let (rec, code) = record(&["two-squares", "7", "--all"]);
    assert_eq!(code, 0);
    assert_eq!(rec.payload, Some(Payload::TwoSquares { representations: vec![] }));

    let (_, stderr, code) = symeuclid(&["two-squares", "829", "--a", "245"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("not_sqrt_minus_one"));
}

#[test]
fn identities_include_degenerate_entries_by_default() {
    let (stdout, _, code) = symeuclid(&["identities", "829", "246"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 30);
    assert_eq!(stdout.lines().filter(|l| l.ends_with("(degenerate)")).count(), 14);
    assert!(stdout.starts_with("829^2 + 0^2 = 829 · 829  (degenerate)\n"));
}

#[test]
fn nest_commands() {
    let (stdout, _, code) = symeuclid(&["nest", "829", "246"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "829/246 73/27 10/7 5/2\nmultipliers: 73 10 5\n");
    let (stdout, _, _) = symeuclid(&["nest", "5", "2"]);
    assert_eq!(stdout.lines().next(), Some("5/2"));
    let (stdout, _, _) = symeuclid(&["nest", "2", "1"]);
    assert_eq!(stdout.lines().next(), Some("2/1"));
}

#[test]
fn error_records_carry_codes() {
    let (rec, code) = record(&["identities", "7", "3"]);
    assert_eq!(code, 3);
    assert_eq!(rec.payload, None);
    let Status::Error { code, .. } = rec.status else { panic!() };
    assert_eq!(code, "not_symmetric");

    let (_, _, code) = symeuclid(&["trace", "12", "8"]);
    assert_eq!(code, 3);
    let (_, _, code) = symeuclid(&["trace", "-1", "8"]);
    assert_eq!(code, 2);
}

#[test]
fn sweep_bound_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_symeuclid"))
        .args(["two-squares", "65", "--all"])
        .env("SYMEUCLID_MAX_SWEEP", "64")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_symeuclid"))
        .args(["nest", "829", "246"])
        .env("SYMEUCLID_MAX_SWEEP", "64")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_small_bounds() {
    let (stdout, _, code) = symeuclid(&["verify", "--max-n", "2"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.lines().skip(1).all(|l| l.starts_with("ok")));

    let (rec, code) = record(&["verify", "--max-n", "300", "--seed", "42", "--cases", "500"]);
    assert_eq!(code, 0);
    assert_eq!(rec.status, Status::Ok);
    let Some(Payload::Verify(report)) = rec.payload else { panic!() };
    assert!(report.passed());
    assert_eq!(report.properties.iter().find(|p| p.name == "Euler identity").unwrap().checked, 500);
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "verify", "--max-n", "100", "--seed", "42", "--cases", "200"];
    assert_eq!(symeuclid(&args), symeuclid(&args));
    let args = ["identities", "829", "246"];
    assert_eq!(symeuclid(&args), symeuclid(&args));
}

#[test]
fn json_round_trips() {
    for args in [
        &["trace", "829", "246"][..],
        &["trace", "7", "3"],
        &["two-squares", "65"],
        &["identities", "10", "7"],
        &["nest", "829", "246"],
        &["nest", "7", "3"],
        &["verify", "--max-n", "20", "--cases", "10"],
    ] {
        let (rec, _) = record(args);
        let again: OutputRecord = serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap();
        assert_eq!(rec, again);
    }
}

#[test]
fn large_numbers_print_in_full() {
    // n = a^2 + 1 with a = 10^18
    let (stdout, _, code) = symeuclid(&["--format", "json", "two-squares", "1000000000000000000000000000000000001", "--a", "1000000000000000000"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("1000000000000000000000000000000000001"));
    assert!(stdout.contains("\"x\":1000000000000000000"));
}
