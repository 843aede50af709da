use thiserror::Error;

/// Failures surfaced by the library. Precondition violations map to exit code 2 in the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {p} is too small for degree {d} (need char 0 or p > {d})")]
    CharTooSmall { p: u64, d: usize },
    #[error("polynomial is not separable in Y (res(F, F_Y) vanishes identically)")]
    NotSeparable,
    #[error("polynomial is not primitive in Y or has degree 0 in Y")]
    NotPrimitive,
    #[error("precision too low: {0}")]
    PrecisionTooLow(String),
    #[error("precision exhausted: requested truncation below zero")]
    PrecisionExhausted,
    #[error("input is divisible by X")]
    DivisibleByX,
    #[error("lifting order exceeds the cap {cap}")]
    KappaExceedsCap { cap: usize },
    #[error("no primitive element found after {tries} random draws")]
    RandomnessExhausted { tries: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("negative genus {0}: the curve is not geometrically irreducible")]
    NegativeGenus(i64),
    #[error("syntax error at byte {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// True for violated input assumptions (as opposed to internal failures).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::CharTooSmall { .. } | Error::NotSeparable | Error::NotPrimitive | Error::DivisibleByX | Error::NegativeGenus(_)
        )
    }

    /// The input assumption a precondition error stands for.
    pub fn assumption(&self) -> Option<&'static str> {
        Some(match self {
            Error::CharTooSmall { .. } => "the characteristic must be zero or exceed the degree in Y (the total degree for the genus)",
            Error::NotSeparable => "F must be separable in Y",
            Error::NotPrimitive => "F must be primitive in Y with positive Y-degree",
            Error::DivisibleByX => "F must not vanish identically at the centre",
            Error::NegativeGenus(_) => "F must be geometrically irreducible",
            _ => return None,
        })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
