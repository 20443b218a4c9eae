use thiserror::Error;

/// Errors raised by the verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("function is singular at z = {re} + {im}i")]
    SingularPoint { re: f64, im: f64 },

    #[error("polytorus dimension {0} exceeds the supported maximum of 3")]
    DimensionTooLarge(usize),

    #[error("optimizer did not reach the first-order tolerance in any restart")]
    NotConverged,
}

pub type Result<T> = std::result::Result<T, LabError>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> LabError {
    LabError::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

pub(crate) fn ensure(cond: bool, name: &'static str, reason: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(invalid(name, reason))
    }
}
