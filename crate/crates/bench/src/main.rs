use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = kemeny_bench::cli::Cli::parse();
    match kemeny_bench::cli::run(&cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(failures) => {
            eprintln!("error: {failures} computation(s) failed");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
