use std::path::PathBuf;

use thiserror::Error;

use crate::expected::CellDiff;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] exrays_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("malformed {what}: {detail}")]
    Format { what: &'static str, detail: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{} table cell(s) differ from the expected values", .0.len())]
    Mismatch(Vec<CellDiff>),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 2 for inputs outside a class's domain, 3 for a
    /// reproduction mismatch, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use exrays_core::Error as E;
        match self {
            CliError::Mismatch(_) => 3,
            CliError::Input(_) => 2,
            CliError::Core(
                E::InfeasibleMoment { .. }
                | E::InvalidDimension { .. }
                | E::InvalidProbability { .. }
                | E::InvalidCorrelation { .. }
                | E::InvalidAlpha { .. }
                | E::InadmissibleCorrelation { .. },
            ) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
