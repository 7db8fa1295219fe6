//! Command-line front end: text grammar and subcommands.

pub mod commands;
pub mod parse;
