use std::process::{Command, Output};

use sundet::report::{parse_record, record_header, Format};

fn sundet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sundet"))
        .args(args)
        .output()
        .expect("run sundet")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_grid_exits_zero() {
    let out = sundet(&["--mode", "verify", "--n", "4..8", "--c", "-1..1", "--d", "-1..1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 45);
    for line in text.lines() {
        let rec = parse_record(line, Format::JsonLines).unwrap();
        assert!(!rec.hypothesis_met || rec.d_mod_n2 == 0);
        assert_eq!(rec.elapsed_ms, None);
    }
}

#[test]
fn explore_reports_without_asserting() {
    let out = sundet(&["--mode", "explore", "--n", "5", "--c", "0", "--d", "0..4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 5);
}

#[test]
fn defaults_are_verify_json_lines() {
    let out = sundet(&[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out).trim_end(),
        r#"{"n":4,"c":0,"d":0,"n_class":"composite","symbol_d":null,"hypothesis_met":true,"d_mod_n2":"0","theorem_holds":true,"rank":null,"ms":null}"#
    );
}

#[test]
fn csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let out = sundet(&[
        "--mode", "decompose", "--n", "4..7", "--c", "0..1", "--d", "2", "--format", "csv",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], record_header());
    // n = 5 and 7, two values of c each
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[1], "5,0,2,prime,-1,true,0,true,2,");
}

#[test]
fn composite_audit_to_500() {
    let out = sundet(&["--mode", "composite-audit", "--n", "4..500", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("n,p,alpha,valuation,bound,holds"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn timing_fills_ms() {
    let out = sundet(&["--n", "6", "--timing"]);
    assert_eq!(out.status.code(), Some(0));
    let rec = parse_record(stdout(&out).trim_end(), Format::JsonLines).unwrap();
    assert!(rec.elapsed_ms.is_some());
}

#[test]
fn jobs_do_not_change_output() {
    let args = ["--mode", "explore", "--n", "4..9", "--c", "-2..2", "--d", "-2..2"];
    let serial = sundet(&[&args[..], &["--jobs", "1"]].concat());
    let parallel = sundet(&[&args[..], &["--jobs", "8"]].concat());
    assert_eq!(serial.status.code(), Some(0));
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["--n", "3..5"][..],
        &["--c", "2..1"][..],
        &["--mode", "prove"][..],
        &["--format", "xml"][..],
        &["--jobs", "0"][..],
        &["--n", "x"][..],
        &["--out", "/nonexistent-dir/report.jsonl"][..],
    ] {
        let out = sundet(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}
