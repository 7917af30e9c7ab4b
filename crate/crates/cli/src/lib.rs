//! Command-line front end for `sejoin-core`: a parser for join expressions
//! and the report formats the `sejoin` binary prints.

pub mod commands;
pub mod parse;
pub mod render;
pub mod report;
mod verify;

pub use commands::{run, Cli};
pub use parse::{parse_expr, ParseError};
