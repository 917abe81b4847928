use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use commutant_cli::{exit, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.output.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(if outcome.success { exit::SUCCESS } else { exit::CHECK_FAILED })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
