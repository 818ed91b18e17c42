//! External-solver protocol front end for the embedded branch and bound:
//! `mpp-lp-solve <lp-file> <solution-file> <seconds>`.

use std::process::ExitCode;
use std::time::Duration;

use mpp_core::ilp::parse_lp;
use mpp_core::solver::{embedded_branch_and_bound, write_solution, Hooks, SolveOptions};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    if args.len() != 4 {
        eprintln!("usage: mpp-lp-solve <lp-file> <solution-file> <seconds>");
        return ExitCode::from(1);
    }
    match run(&args[1], &args[2], &args[3]) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(lp: &str, sol: &str, secs: &str) -> Result<(), Box<dyn std::error::Error>> {
    let model = parse_lp(&std::fs::read_to_string(lp)?)?;
    let secs: f64 = secs.parse()?;
    let opts = SolveOptions {
        time_limit: (secs > 0.0).then(|| Duration::from_secs_f64(secs)),
        ..SolveOptions::default()
    };
    let out = embedded_branch_and_bound(&model, &opts, Hooks::default());
    std::fs::write(sol, write_solution(&model, out.status, out.objective, &out.assignment))?;
    Ok(())
}
