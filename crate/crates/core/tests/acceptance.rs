//! Acceptance suite: every criterion at its stated tolerance, one line each.
//!
//! Runs without the libtest harness so the per-criterion lines always print.
//! Exits non-zero when any criterion fails.

use std::process::ExitCode;

use cliquewalk::verify::{VerifyConfig, CRITERIA};

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut failed = Vec::new();
    println!("\nrunning {} acceptance criteria", CRITERIA.len());
    for (i, criterion) in CRITERIA.iter().enumerate() {
        match criterion(&cfg) {
            Ok(outcome) => {
                println!("{outcome}");
                for check in &outcome.checks {
                    println!("      {check}");
                }
                if !outcome.passed() {
                    failed.push(outcome.id);
                }
            }
            Err(e) => {
                println!("criterion {:>2} ERROR: {e}", i + 1);
                failed.push(i as u8 + 1);
            }
        }
    }
    println!(
        "\nacceptance result: {} passed; {} failed {:?}\n",
        CRITERIA.len() - failed.len(),
        failed.len(),
        failed
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
