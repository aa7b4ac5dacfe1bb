//! Command-line front end for the `alternant` library: job specification
//! parsing, command execution and report rendering.

pub mod error;
pub mod jobspec;
pub mod report;
pub mod run;

pub use error::CliError;
pub use jobspec::{parse_jobspec, Command, DeltaRange, Format, JobSpec};
pub use report::{parse_records, render_records, render_table, Record};
pub use run::{run, Outcome, RunOptions};
