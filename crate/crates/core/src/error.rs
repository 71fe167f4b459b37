use thiserror::Error;

/// Errors surfaced by the library. The CLI maps these onto exit codes:
/// scope errors -> 3, budget errors -> 4, mismatches and bad data -> 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus [{poly}] is reducible over F_{p}")]
    ReducibleModulus { p: u32, poly: String },

    #[error("unsupported characteristic {0}; expected 2 or 3")]
    UnsupportedPrime(u32),

    #[error("no built-in modulus for p = {p}, degree {deg}; supply one via a modulus file")]
    NoDefaultModulus { p: u32, deg: u32 },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("budget exceeded: {what} needs {need}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        need: u64,
        budget: u64,
    },

    #[error("non-exact division in {context}: {num} / {den} leaves a remainder")]
    NonExactDivision {
        context: &'static str,
        num: String,
        den: String,
    },

    #[error("crosscheck mismatch: {0}")]
    CrosscheckMismatch(String),

    #[error("tau series bound exceeded: need n = {need}, bound is {bound}")]
    TauBound { need: u64, bound: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI should use for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::OutOfScope(_) | Error::UnsupportedPrime(_) => 3,
            Error::BudgetExceeded { .. } | Error::TauBound { .. } => 4,
            _ => 2,
        }
    }
}
