//! Command-line front end for `commutant-core`: loads operations, theories,
//! rigs, rings, groups and modules from JSON documents or `kind:name`
//! builtins, runs one computation, and prints a text table or JSON.

pub mod app;
pub mod doc;
pub mod error;
pub mod registry;
pub mod render;
pub mod verify;

pub use app::{run, Cli, Outcome};
pub use error::{exit, CliError, CliResult};
