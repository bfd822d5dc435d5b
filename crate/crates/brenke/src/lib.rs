//! Command-line front end, γ-table cache and report formats for `brenke-core`.

pub mod cache;
pub mod cli;
pub mod error;
pub mod expr;
pub mod gamma;
pub mod output;
pub mod sweep;

pub use error::{AppError, ExitCode};
