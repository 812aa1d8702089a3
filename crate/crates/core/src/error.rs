use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WbqError {
    #[error("DenominatorVanishes: {0}")]
    DenominatorVanishes(String),
    #[error("IndexOutOfRange: {0}")]
    IndexOutOfRange(String),
    #[error("RankTooSmall: n = {n} < r + s = {need}")]
    RankTooSmall { n: usize, need: usize },
    #[error("IntegralityViolation: {0}")]
    IntegralityViolation(String),
    #[error("NotInSpan: {0}")]
    NotInSpan(String),
    #[error("RankCertificationFailed: rank {got} < {want} after {seeds} seeds")]
    RankCertificationFailed { got: usize, want: usize, seeds: usize },
    #[error("InterpolationUnstable: {0}")]
    InterpolationUnstable(String),
    #[error("TraceSystemSingular: {0}")]
    TraceSystemSingular(String),
    #[error("OracleMismatch: {0}")]
    OracleMismatch(String),
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
    #[error("Parse: {0}")]
    Parse(String),
    #[error("Cache: {0}")]
    Cache(String),
}

impl WbqError {
    /// Short variant name, used by the CLI when reporting failures.
    pub fn name(&self) -> &'static str {
        match self {
            WbqError::DenominatorVanishes(_) => "DenominatorVanishes",
            WbqError::IndexOutOfRange(_) => "IndexOutOfRange",
            WbqError::RankTooSmall { .. } => "RankTooSmall",
            WbqError::IntegralityViolation(_) => "IntegralityViolation",
            WbqError::NotInSpan(_) => "NotInSpan",
            WbqError::RankCertificationFailed { .. } => "RankCertificationFailed",
            WbqError::InterpolationUnstable(_) => "InterpolationUnstable",
            WbqError::TraceSystemSingular(_) => "TraceSystemSingular",
            WbqError::OracleMismatch(_) => "OracleMismatch",
            WbqError::InvalidInput(_) => "InvalidInput",
            WbqError::Parse(_) => "Parse",
            WbqError::Cache(_) => "Cache",
        }
    }
}

pub type Result<T> = std::result::Result<T, WbqError>;
