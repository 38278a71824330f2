//! Runs the acceptance criteria for one family, or all of them.
//!
//! `cargo run --release --example verify_suite -- star1`

use std::str::FromStr;

use cliquewalk::verify::{run_all, VerifyConfig};
use cliquewalk::Family;

fn main() -> cliquewalk::Result<()> {
    let scope = std::env::args().nth(1).map(|s| Family::from_str(&s)).transpose();
    let scope = match scope {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(64);
        }
    };
    let cfg = VerifyConfig {
        scope,
        ..VerifyConfig::default()
    };
    for outcome in run_all(&cfg)? {
        println!("{outcome}");
        for c in outcome.failed_checks() {
            println!("    {c}");
        }
    }
    Ok(())
}
