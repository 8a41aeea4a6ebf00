use thiserror::Error;

/// Failures raised by the exact engine. Absence of a guess is never an
/// error; operations that search return `Option` instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("divisor series has zero constant term")]
    DivisorNotUnit,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("series is not reversible: needs s(0) = 0 and s'(0) = 1")]
    NotReversible,
    #[error("last stored term is not below 10^-p; more terms are needed")]
    TailTooLarge,
    #[error("Pade system has no solution with nonzero denominator")]
    NoSolution,
    #[error("expansion undefined: {0}")]
    ExpansionUndefined(String),
    #[error("leading recurrence coefficient vanishes at n = {0}")]
    SingularLeadingCoefficient(i64),
    #[error("recurrence produced a non-integer term at n = {0}")]
    NonIntegerTerm(i64),
    #[error("lattice rows are linearly dependent")]
    DependentRows,
    #[error("sequence must start with 1 for the Euler transform")]
    LeadingTermNotOne,
    #[error("not enough terms: {0}")]
    InsufficientTerms(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
