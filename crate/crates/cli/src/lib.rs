//! Command-line front end for `kndeg-core`: argument parsing, report
//! rendering and the verification suites.

pub mod args;
pub mod commands;
pub mod render;
pub mod sampling;
pub mod suites;

pub use args::Cli;
pub use commands::{run, Output, Status, UsageError};
