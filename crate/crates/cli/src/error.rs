use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] matroot::Error),
    #[error("verification failed: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    Verification { residual: f64, tol: f64 },
    #[error("series outside its domain: {0}")]
    SeriesDomain(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use matroot::Error as E;
        match self {
            CliError::Parse(_) => 2,
            CliError::Core(E::InvalidMatrix(_) | E::InvalidPolynomial(_) | E::DimensionMismatch { .. }) => 2,
            CliError::Core(E::InvalidArgument(_) | E::NotAnnihilator { .. }) => 2,
            CliError::Core(E::Singular) => 3,
            CliError::Core(E::Convergence { .. }) | CliError::SeriesDomain(_) => 4,
            CliError::Verification { .. } => 5,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "parse",
            3 => "singular",
            4 => "convergence",
            5 => "verification",
            _ => "other",
        }
    }
}
