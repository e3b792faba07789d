//! Figure curves and verification reports for the Jaynes–Cummings model.

pub mod analysis;
pub mod config;
pub mod curves;
pub mod error;
pub mod verify;

pub use config::{AtomInit, RunConfig};
pub use error::{CliError, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
