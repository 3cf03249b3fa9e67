//! Instance files, suite orchestration and reports for the `tambara` tool.

pub mod commands;
pub mod error;
pub mod export;
pub mod format;
pub mod report;
pub mod resolve;

pub use error::{CliError, Result};
pub use format::InstanceFile;
pub use report::Report;
pub use resolve::Resolved;
