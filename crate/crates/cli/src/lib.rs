//! Command-line front end for `lowwalsh-core`, plus the JSON, CSV and binary
//! file formats it writes.

pub mod args;
pub mod commands;
pub mod error;
pub mod formats;
pub mod tables;

pub use commands::{run, Output};
pub use error::CliError;
