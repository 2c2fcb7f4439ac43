//! Command-line front end for `dynlin-core`: problem-file parsing and the
//! `dynlin` subcommands. See `docs/cli.md` for the input and output formats.

pub mod commands;
pub mod expr;
pub mod problem;

pub use commands::{run, Cli, Output};
pub use problem::{parse_problem, render_problem, ParseError, ProblemFile};
