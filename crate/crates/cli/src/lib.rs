//! Command-line front end for the fatpoints library: notation parsing,
//! report assembly and the subcommand implementations, kept in a library
//! so integration tests can call them directly.

pub mod commands;
pub mod notation;
pub mod report;

pub use commands::{
    bs_report, cmd_bs, cmd_dim, cmd_fixed, cmd_reduce, cmd_verify, reduction_diagram,
    run_fixtures, CliError, CmdOk,
};
pub use notation::{parse_system, render_system, ParseError};
pub use report::Report;
