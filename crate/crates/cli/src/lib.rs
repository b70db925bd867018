//! Library side of the `hopfcyc` command: every command produces a [`CommandResult`]
//! that the binary prints and turns into an exit code.

pub mod cli;
pub mod compute;
pub mod config;
pub mod encode;
pub mod verify;

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    Violation,
    Usage,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Violation => 1,
            Status::Usage => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub summary: String,
    pub latex: Option<String>,
}

impl CommandResult {
    pub fn usage(msg: impl Into<String>) -> Self {
        let msg = msg.into();
        let payload = serde_json::json!({"schema": encode::SCHEMA, "status": "usage-error", "message": msg});
        CommandResult { status: Status::Usage, payload, summary: msg, latex: None }
    }

    /// The text to print for the requested format.
    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Text => Ok(self.summary.clone()),
            Format::Json => Ok(serde_json::to_string_pretty(&self.payload).expect("serializable")),
            Format::Latex => self.latex.clone().ok_or_else(|| "no LaTeX rendering for this output".to_string()),
        }
    }
}

/// Execute a parsed command line; the second value is the requested output format.
pub fn run(cli: &cli::Cli) -> (CommandResult, Format) {
    match &cli.command {
        cli::Command::Compute(args) => (compute::compute(args), args.format),
        cli::Command::Verify(args) => {
            let flags = config::Params {
                max_weight: args.max_weight,
                trials: args.trials,
                seed: args.seed,
                n: args.n,
                order: args.order,
                fixture: args.fixture.clone(),
            };
            let params = match &args.config {
                Some(path) => match config::load_config(path) {
                    Ok(file) => flags.or(file),
                    Err(e) => return (CommandResult::usage(e), args.format),
                },
                None => flags,
            };
            (verify::verify(args.suite, &params), args.format)
        }
    }
}
