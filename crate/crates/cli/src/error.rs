use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error in `{field}`: {reason}")]
    Config { field: String, reason: String },

    /// An oracle disagreed with the closed form beyond its budget.
    #[error("numerical tolerance failure: {0}")]
    Tolerance(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Model(#[from] atomscatter::Error),
}

impl CliError {
    pub fn config(field: &str, reason: impl Into<String>) -> Self {
        CliError::Config {
            field: field.to_string(),
            reason: reason.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => 2,
            CliError::Tolerance(_) => 3,
            CliError::Model(atomscatter::Error::QuadratureNonConvergence { .. }) => 3,
            CliError::Model(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}
