use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hopfcyc_cli::{cli::Cli, run, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, format) = run(&cli);
    match result.render(format) {
        Ok(text) if result.status == Status::Usage => eprintln!("error: {text}"),
        // a closed pipe (e.g. `| head`) is not an error of ours
        Ok(text) => {
            let _ = writeln!(std::io::stdout(), "{text}");
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(result.status.exit_code() as u8)
}
