use std::process::{Command, Output};

use chernwork_cli::OutputRecord;

fn chernwork(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chernwork")).args(args).output().unwrap()
}

fn record(args: &[&str]) -> (i32, OutputRecord) {
    let out = chernwork(args);
    let rec = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    });
    (out.status.code().unwrap(), rec)
}

#[test]
fn coeff_b_example() {
    let (code, rec) = record(&["coeff-b", "--partition", "3", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(rec.command, "coeff-b");
    assert_eq!(rec.result.unwrap()["value"], "-3/2");
}

#[test]
fn coeff_h_example() {
    let (code, rec) = record(&["coeff-h", "--genus", "signature", "--partition", "2,2"]);
    assert_eq!(code, 0);
    assert_eq!(rec.result.unwrap()["value"], "1/15");
    let (_, rec) = record(&["coeff-h", "--genus", "todd", "--partition", "2,2"]);
    assert_eq!(rec.result.unwrap()["value"], "1/240");
}

#[test]
fn check_example() {
    let (code, rec) = record(&["check", "--dim", "2", "--chern", "(1,1)=9,(2)=3"]);
    assert_eq!(code, 0);
    let r = rec.result.unwrap();
    assert_eq!(r["realizable"], true);
    assert_eq!(r["signature_mod4"]["holds"], true);

    let (code, rec) = record(&["check", "--dim", "2", "--chern", "(1,1)=0,(2)=1"]);
    assert_eq!(code, 0);
    let r = rec.result.unwrap();
    assert_eq!(r["realizable"], false);
    assert_eq!(r["violations"][0]["monomial"], "{}");
    assert_eq!(r["violations"][0]["value"], "1/12");
}

#[test]
fn general_q_and_genus_eval() {
    let (code, rec) = record(&["coeff-b-general", "--q-coeffs", "1,2,1", "--partition", "2", "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(rec.result.unwrap()["value"], "-2/1");
    let (code, rec) = record(&["coeff-b-general", "--q-coeffs", "3,1", "--partition", "1"]);
    assert_eq!(code, 1);
    assert_eq!(rec.error.unwrap().kind, "not-monic");
    let (code, rec) = record(&["genus-eval", "--genus", "signature", "--dim", "4", "--chern", "(4)=5,(2,2)=100,(3,1)=50,(2,1,1)=250,(1,1,1,1)=625"]);
    assert_eq!(code, 0);
    assert_eq!(rec.result.unwrap()["value"], "1/1");
}

#[test]
fn parity_fixture_and_reports() {
    let (_, rec) = record(&["parity", "--dim", "6", "--chern", "(6)=3,(4,2)=7"]);
    assert_eq!(rec.result.unwrap()["verdict"], "even-certified");
    let (_, rec) = record(&["parity", "--dim", "2", "--chern", "(1,1)=9"]);
    let r = rec.result.unwrap();
    assert_eq!(r["verdict"], "not-applicable");
    assert_eq!(r["signature"], "3/1");

    let (code, rec) = record(&["fixture", "--factors", "1,1"]);
    assert_eq!(code, 0);
    let r = rec.result.unwrap();
    assert_eq!(r["chern"], "(1,1)=8,(2)=4");
    assert_eq!(r["genera"]["signature"], "0/1");
    assert_eq!(r["realizable"], true);

    let (code, rec) = record(&["rpp-report", "--dim", "8", "--bound", "200"]);
    assert_eq!(code, 0);
    assert_eq!(rec.result.unwrap()["obstructed"], true);
    let (code, rec) = record(&["rpp-report", "--dim", "4"]);
    assert_eq!(code, 1);
    assert_eq!(rec.error.unwrap().kind, "invalid-argument");
}

#[test]
fn dimension_limit_and_override() {
    let (code, rec) = record(&["rpp-report", "--dim", "12", "--bound", "50"]);
    assert_eq!(code, 0, "{rec:?}");
    let (code, rec) = record(&["fixture", "--factors", "5,4"]);
    assert_eq!(code, 1);
    assert_eq!(rec.error.unwrap().kind, "limit-exceeded");
    let out = Command::new(env!("CARGO_BIN_EXE_chernwork"))
        .args(["search-thm3", "--k", "2", "--i", "1", "--bound", "5"])
        .env("CHERNWORK_DIM_LIMIT", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(chernwork(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(chernwork(&["coeff-b", "--partition", "3,x"]).status.code(), Some(2));
    let (code, rec) = record(&["check", "--dim", "2", "--chern", "(1,1)9"]);
    assert_eq!(code, 2);
    assert_eq!(rec.error.unwrap().kind, "parse");
    let (code, rec) = record(&["check", "--dim", "2", "--chern", "(3)=1"]);
    assert_eq!(code, 1);
    assert_eq!(rec.error.unwrap().kind, "wrong-weight");
}

#[test]
fn records_round_trip() {
    for args in [
        &["coeff-b", "--partition", "4,2"][..],
        &["search-thm3", "--k", "2", "--i", "1", "--bound", "40"],
        &["check", "--dim", "1", "--chern", "(1)=1"],
        &["fixture", "--factors", "3,1"],
    ] {
        let out = chernwork(args);
        let rec: OutputRecord = serde_json::from_slice(&out.stdout).unwrap();
        let again = serde_json::to_string_pretty(&rec).unwrap() + "\n";
        assert_eq!(again.as_bytes(), &out.stdout[..], "{args:?}");
        assert!(!String::from_utf8_lossy(&out.stdout).contains('.'), "decimal rendering in {args:?}");
    }
}
