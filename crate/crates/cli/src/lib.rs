//! Command-line front end for the layered harmonic solvers: JSON run
//! configurations, grid evaluation, method comparison, verification reports
//! and regime advice.

pub mod commands;
pub mod config;
pub mod error;
pub mod problem;

pub use commands::{compare, loglog_slope, regimes, solve, verify};
pub use config::{Method, ProblemKind, RunConfig};
pub use error::{CliError, CliResult, ExitKind};
