use rubikai_core::cube::CubeError;
use rubikai_core::metrics::MetricsError;
use rubikai_core::solver::SolverError;
use rubikai_motion::MotionError;
use rubikai_sim::SimError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("search budget exhausted: {0}")]
    Timeout(String),
    #[error("planning failed: {0}")]
    Planning(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// Process exit code. 2 is shared with clap's usage errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Timeout(_) => 4,
            CliError::Planning(_) => 5,
            CliError::Io(_) => 6,
        }
    }
}

impl From<CubeError> for CliError {
    fn from(e: CubeError) -> Self {
        match e {
            CubeError::WrongLength(_)
            | CubeError::InvalidCharacter { .. }
            | CubeError::CountViolation { .. }
            | CubeError::CenterViolation { .. }
            | CubeError::BadToken(_) => CliError::Parse(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::TimeBudgetExhausted => CliError::Timeout(e.to_string()),
            SolverError::Unsolvable(c) => CliError::from(c),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<MotionError> for CliError {
    fn from(e: MotionError) -> Self {
        match e {
            MotionError::Io(_) => CliError::Io(e.to_string()),
            _ => CliError::Planning(e.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::ConfigParse(_) => CliError::Parse(e.to_string()),
            SimError::InvalidConfig(_) | SimError::InvalidStageModel(_) => CliError::Validation(e.to_string()),
            SimError::Motion(m) => CliError::from(m),
            SimError::LayerUnreachable(_) => CliError::Planning(e.to_string()),
            SimError::Csv(_) | SimError::Io(_) => CliError::Io(e.to_string()),
        }
    }
}

impl From<MetricsError> for CliError {
    fn from(e: MetricsError) -> Self {
        match e {
            MetricsError::Io(_) | MetricsError::Csv(_) => CliError::Io(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
