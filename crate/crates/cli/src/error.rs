use tambara_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unresolved {kind} `{name}`")]
    Unresolved { kind: &'static str, name: String },
    #[error("invalid declaration `{name}`: {message}")]
    Invalid { name: String, message: String },
    #[error("declaration `{name}` fails its checker: {witness}")]
    CheckFailed { name: String, witness: String },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// 1 check failure, 2 parse or resolution error, 3 resource limit.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed { .. } => 1,
            CliError::Core(CoreError::Budget { .. } | CoreError::TooLarge { .. }) => 3,
            _ => 2,
        }
    }

    pub(crate) fn invalid(name: &str, e: impl std::fmt::Display) -> Self {
        CliError::Invalid { name: name.to_string(), message: e.to_string() }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
