use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse error classes; the CLI maps these onto exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or unsupported input.
    Input,
    /// An enumeration guard, an oracle, or the lattice search gave up.
    Guard,
    /// A result failed a post-condition that the theory guarantees.
    Invariant,
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("enumeration guard exceeded: {0}")]
    Guard(String),

    #[error("oracle failure: {0}")]
    Oracle(String),

    #[error("lattice search with N = {n} found {survivors} quasistable candidates (expected exactly one)")]
    DenominatorEscape { n: u64, survivors: u64 },

    #[error("intersection-closure violated: {0}")]
    ClosureViolation(String),

    #[error("conversion post-condition failed: {0}")]
    Convention(String),

    #[error("hemisphere intersection matches neither case: {0}")]
    LemmaViolation(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Input(_) | Error::Unsupported(_) => ErrorClass::Input,
            Error::Guard(_) | Error::Oracle(_) | Error::DenominatorEscape { .. } => ErrorClass::Guard,
            Error::ClosureViolation(_)
            | Error::Convention(_)
            | Error::LemmaViolation(_)
            | Error::Internal(_) => ErrorClass::Invariant,
        }
    }

    /// Short machine-readable tag used in structured error output.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Unsupported(_) => "unsupported",
            Error::Guard(_) => "guard",
            Error::Oracle(_) => "oracle",
            Error::DenominatorEscape { .. } => "denominator_escape",
            Error::ClosureViolation(_) => "closure_violation",
            Error::Convention(_) => "convention",
            Error::LemmaViolation(_) => "lemma_violation",
            Error::Internal(_) => "internal",
        }
    }
}

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
