#![allow(clippy::needless_range_loop)]

//! Expression language and command-line driver for the `starprod` engine.

pub mod eval;
pub mod json;
pub mod parse;
pub mod repl;
pub mod suites;
pub mod syntax;

pub use eval::{eval_str, CliError, Format, SessionConfig, Value};
pub use parse::{parse, ParseError};
pub use repl::Session;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
