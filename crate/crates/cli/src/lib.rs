//! Command-line front end: load a case, pick a regime and an algorithm, and
//! emit a JSON or text report.

pub mod args;
pub mod config;
pub mod report;
pub mod run;

pub use args::Cli;
pub use report::Report;
pub use run::{execute, run, ExitStatus};
