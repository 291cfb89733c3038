//! Spec-file parsing, the `analyze`, `dfs` and `verify` pipelines, and their
//! JSON and table reports.

pub mod commands;
pub mod error;
pub mod report;
pub mod spec;

pub use commands::{Settings, Theorem};
pub use error::CliError;
