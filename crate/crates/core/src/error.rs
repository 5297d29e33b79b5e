use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NumericalFailure: {0}")]
    NumericalFailure(String),
    #[error("DomainError: {0}")]
    Domain(String),
    #[error("InvalidConjugation: {0}")]
    InvalidConjugation(String),
    #[error("RangeError: {0}")]
    Range(String),
    #[error("ModulusMismatch: {0}")]
    ModulusMismatch(String),
    #[error("NotCNormal: {0}")]
    NotCNormal(String),
}

impl Error {
    /// Stable name of the error kind, used by the CLI.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Error::NumericalFailure(_) => "NumericalFailure",
            Error::Domain(_) => "DomainError",
            Error::InvalidConjugation(_) => "InvalidConjugation",
            Error::Range(_) => "RangeError",
            Error::ModulusMismatch(_) => "ModulusMismatch",
            Error::NotCNormal(_) => "NotCNormal",
        }
    }

    pub(crate) fn dims(what: &str, left: (usize, usize), right: (usize, usize)) -> Self {
        Error::Domain(format!(
            "{what}: dimension mismatch {}x{} vs {}x{}",
            left.0, left.1, right.0, right.1
        ))
    }
}
