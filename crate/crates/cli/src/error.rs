use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: parse error at byte {offset}: {message}")]
    Parse { path: String, offset: usize, message: String },

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("`{0}` names both a builtin and an existing file; pass the file as ./{0}")]
    Ambiguous(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Library(#[from] wavicle::Error),

    #[error("property sweep failed: {0}")]
    SweepFailed(String),
}

impl CliError {
    /// 2 for unusable input, 3 for input that fails validation, 4 for a
    /// failed property sweep.
    pub fn exit_code(&self) -> u8 {
        use wavicle::Error as E;
        match self {
            CliError::Parse { .. } | CliError::Io { .. } | CliError::Ambiguous(_) | CliError::Usage(_) => 2,
            CliError::Library(
                E::BadParameter(_) | E::NotDistribution(_) | E::UnknownElement(_) | E::UnsupportedGroup(_),
            ) => 2,
            CliError::Library(_) => 3,
            CliError::SweepFailed(_) => 4,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
