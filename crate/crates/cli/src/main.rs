use std::path::PathBuf;
use std::process::ExitCode;

use alternant_cli::{
    parse_jobspec, render_records, render_table, run, CliError, Command, DeltaRange, Format,
    RunOptions,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "alternant", version, about = "Subfield subcodes of GRS codes")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Describe the GRS code itself.
    Construct(Opts),
    /// Extract the subfield subcode and its design distance.
    Extract(Opts),
    /// Enumerate nested subcodes of the full-dimension code.
    Nested(Opts),
    /// Cross-check extraction against brute-force enumeration.
    Verify(Opts),
    /// Extract for every delta in a range (cyclic form only).
    Sweep(Opts),
    /// Run the command named by the job file's `command` key.
    Run(Opts),
}

#[derive(Args)]
struct Opts {
    /// Job specification file (TOML).
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Maximum number of messages a brute-force enumeration may visit.
    #[arg(long)]
    limit: Option<u64>,
    /// Inclusive delta range for `sweep`, e.g. 0..6.
    #[arg(long)]
    delta_range: Option<DeltaRange>,
    /// Also print the matrices behind the result.
    #[arg(long)]
    dump_matrices: bool,
    /// `nested`: list every contiguous row selection.
    #[arg(long)]
    all: bool,
}

fn execute(sub: Sub) -> Result<bool, CliError> {
    let (fixed, opts) = match sub {
        Sub::Construct(o) => (Some(Command::Construct), o),
        Sub::Extract(o) => (Some(Command::Extract), o),
        Sub::Nested(o) => (Some(Command::Nested), o),
        Sub::Verify(o) => (Some(Command::Verify), o),
        Sub::Sweep(o) => (Some(Command::Sweep), o),
        Sub::Run(o) => (None, o),
    };
    let text = std::fs::read_to_string(&opts.spec).map_err(|source| CliError::Io {
        path: opts.spec.display().to_string(),
        source,
    })?;
    let job = parse_jobspec(&text)?;
    let command = fixed
        .or(job.command)
        .ok_or_else(|| CliError::Validation("command: not set in the job file".into()))?;
    if opts.limit == Some(0) {
        return Err(CliError::Validation("--limit: must be positive".into()));
    }
    let run_opts = RunOptions {
        limit: opts.limit.or(job.limit),
        delta_range: opts.delta_range,
        dump_matrices: opts.dump_matrices,
        all: opts.all,
    };
    let outcome = run(&job, command, &run_opts)?;
    let text = match opts.format.or(job.format).unwrap_or_default() {
        Format::Table => render_table(&outcome.records),
        Format::Records => render_records(&outcome.records),
    };
    print!("{text}");
    Ok(!outcome.verification_failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: verification failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
