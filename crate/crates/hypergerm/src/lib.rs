//! File formats, JSON output and the command-line front end for
//! [`hypergerm_core`].
//!
//! The binary is a thin wrapper around [`run`], which takes an argument
//! vector and returns the exit code together with what would have been
//! written to stdout and stderr.

mod cli;
pub mod json;
pub mod search;
pub mod specs;

pub use cli::{run, Output, EXIT_ENGINE, EXIT_OK, EXIT_USAGE};
pub use hypergerm_core as core;
