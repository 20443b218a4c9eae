use std::path::PathBuf;

use contraction_core::LabError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid {field}: {reason}")]
    Invalid { field: String, reason: String },
    #[error(transparent)]
    Core(#[from] LabError),
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },
    #[error("cannot read {}: {reason}", path.display())]
    Read { path: PathBuf, reason: String },
    #[error("report has no {kind} data")]
    PlotMismatch { kind: String },
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn invalid(field: &str, reason: impl Into<String>) -> CliError {
    CliError::Invalid {
        field: field.to_string(),
        reason: reason.into(),
    }
}
