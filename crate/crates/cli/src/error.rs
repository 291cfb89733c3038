use clifford_dfs::error::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input.
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Math(#[from] CoreError),
    /// A verification battery ran and did not pass.
    #[error("{0}")]
    Check(String),
    #[error("matrix oracle residual {residual:e} exceeds tolerance {tolerance:e}")]
    Oracle { residual: f64, tolerance: f64 },
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    /// 1 parse, 2 mathematical failure, 3 oracle mismatch.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Output(_) => 1,
            CliError::Math(_) | CliError::Check(_) => 2,
            CliError::Oracle { .. } => 3,
        }
    }
}
