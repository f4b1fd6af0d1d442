use std::process::ExitCode;

use zmackey_cli::suites::{format_outcome, run_one, SUITES};

fn main() -> ExitCode {
    let mut failed = 0;
    for i in 0..SUITES.len() {
        let o = run_one(i);
        if !o.passed {
            failed += 1;
        }
        println!("{}", format_outcome(&o));
    }
    println!("{}/{} criteria passed", SUITES.len() - failed, SUITES.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
