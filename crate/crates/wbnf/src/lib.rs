//! Scenario files, CSV sweep tables, figure commands and the verification
//! suite built on [`wbnf_core`].

pub mod commands;
pub mod error;
pub mod oracle;
pub mod scenario;
pub mod svg;
pub mod table;
pub mod verify;

pub use error::CliError;
