use boltzmann::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for bad or singular input, 3 for numeric failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                Error::SingularParameters { .. }
                | Error::OutsideRegion
                | Error::InvalidInput(_)
                | Error::UnboundedMotion { .. }
                | Error::UnsupportedPeriod(_)
                | Error::UnsupportedEnergy(_)
                | Error::NegativeRadicand(_)
                | Error::NegativeAngularMomentum(_)
                | Error::PreconditionViolated(_)
                | Error::NotSingular
                | Error::DegenerateTangency => 2,
                _ => 3,
            },
            CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
