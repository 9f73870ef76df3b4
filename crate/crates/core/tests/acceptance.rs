//! One line per acceptance criterion; exits nonzero if any fails.

use quniv::suite::run_checks;
use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let start = Instant::now();
    let results = run_checks(None);
    for r in &results {
        println!(
            "criterion {:>2}: {} | {} | tolerance: {} | {}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.tolerance,
            r.detail
        );
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!(
        "acceptance: {}/{} passed in {:.1}s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 && results.len() == 11 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
