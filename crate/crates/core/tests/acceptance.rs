//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;

use chernwork::acceptance::run_all;

fn main() -> ExitCode {
    let results = run_all();
    for r in &results {
        println!(
            "[{}] criterion {:>2}: {} ({} ms) {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.title,
            r.millis,
            r.detail
        );
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("{} of {} criteria passed", results.len() - failed.len(), results.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed: {failed:?}");
        ExitCode::FAILURE
    }
}
