use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fractal_bound::{exit, parallel, run, RunConfig};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::SUCCESS });
        }
    };
    let result = parallel::threads_from_env().and_then(|threads| run(&config, threads));
    match result {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(exit::USAGE);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("fractal-bound: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
