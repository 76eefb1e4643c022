//! Library half of the `pied` binary: experiment records, CSV exports, and
//! the command implementations, kept out of main.rs so integration tests can
//! reach them without spawning a process.

pub mod commands;
pub mod error;
pub mod record;

pub use error::{CliError, CliResult};
