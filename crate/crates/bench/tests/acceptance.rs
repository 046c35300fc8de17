//! Acceptance criteria A1 to A7, one PASS / FAIL line each.
//!
//! Runs without the libtest harness so the lines are always printed; the
//! process exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use sphconv_bench::{run_check, SuiteOptions, CHECK_IDS};

fn main() -> ExitCode {
    // `cargo test -- --list` and filters come through as arguments
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        for id in CHECK_IDS {
            println!("{id}: test");
        }
        return ExitCode::SUCCESS;
    }
    let filters: Vec<&String> = args.iter().filter(|a| !a.starts_with('-')).collect();
    let opts = SuiteOptions::default();
    let mut failed = 0;
    for id in CHECK_IDS {
        if !filters.is_empty() && !filters.iter().any(|f| id.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = run_check(id, &opts).expect("known check id");
        println!("{outcome} [{:.1} s]", start.elapsed().as_secs_f64());
        if !outcome.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
