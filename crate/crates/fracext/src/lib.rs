//! Std companion of `fracext-core`: graph files, parallel scans and the
//! `fracext` command line.

pub mod app;
pub mod driver;
pub mod error;
pub mod io;
pub mod source;

pub use app::{run, run_args, Cli, Outcome, RunConfig};
pub use error::CliError;
