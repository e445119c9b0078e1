use krein_core::Error as CoreError;

/// Failures mapped onto the process exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unreadable or malformed input, or a scenario the model rejects.
    #[error("{0}")]
    Input(String),
    /// At least one prediction disagreed with the brute-force oracle.
    #[error("{0}")]
    Oracle(String),
    #[error("{0}")]
    Numerical(String),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Oracle(_) => 2,
            CliError::Numerical(_) | CliError::Output(_) => 3,
        }
    }

    /// Sorts core errors into bad input and numerical breakdowns.
    pub fn from_core(context: &str, e: CoreError) -> Self {
        let msg = format!("{context}: {e}");
        match e {
            CoreError::EmptyMatrix
            | CoreError::DimensionMismatch { .. }
            | CoreError::NonFiniteEntry { .. }
            | CoreError::NonFiniteComponent { .. }
            | CoreError::Asymmetric { .. }
            | CoreError::InvalidArgument(_)
            | CoreError::OutOfDomain { .. }
            | CoreError::AmbiguousCluster { .. }
            | CoreError::NotAnEigenvalue { .. }
            | CoreError::NotDirichletWavenumber { .. } => CliError::Input(msg),
            CoreError::ResolventAtSpectrum { .. }
            | CoreError::PoleEvaluation { .. }
            | CoreError::EigenvalueOfPerturbed { .. }
            | CoreError::CauchySchwarz(_)
            | CoreError::Singular(_)
            | CoreError::NoConvergence
            | CoreError::KernelPole { .. } => CliError::Numerical(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
