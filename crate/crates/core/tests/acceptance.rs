//! Runs every acceptance criterion and prints one PASS/FAIL line each.
//!
//! `BUNIFORM_LEVEL=full` selects the larger `P_4` search; the default is `quick`.

use std::process::ExitCode;

use buniform::verification::{run_verification, Level};

fn main() -> ExitCode {
    let level = match std::env::var("BUNIFORM_LEVEL") {
        Ok(text) => match text.parse::<Level>() {
            Ok(level) => level,
            Err(e) => {
                eprintln!("{e}");
                return ExitCode::from(2);
            }
        },
        Err(_) => Level::Quick,
    };
    println!("acceptance suite, level {level}");
    let report = run_verification(level, &[], |_| {});
    for result in &report.results {
        println!("{result}");
    }
    let failed = report.results.iter().filter(|r| !r.passed).count();
    println!("{} passed, {failed} failed", report.results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
