use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, bad files, inputs outside a domain. Exit code 2.
    #[error("{0}")]
    Usage(String),
    /// A check ran and found a violation. Exit code 1.
    #[error("{0}")]
    Violation(String),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Violation(_) => 1,
            Self::Usage(_) | Self::Output(_) => 2,
        }
    }
}

impl From<liouville_core::Error> for CliError {
    fn from(e: liouville_core::Error) -> Self {
        match e {
            liouville_core::Error::Verification(_) => Self::Violation(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}
