//! File formats, reports and command dispatch for the `koszul` binary.

mod commands;
pub mod format;

pub use commands::{describe, execute, run, Cli, CliError, Command, GrKind, Output, OutputFormat};
