//! The eight acceptance criteria, one report line each.

use std::process::ExitCode;

use railknot::acceptance::run_all;

fn main() -> ExitCode {
    let reports = run_all();
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", reports.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
