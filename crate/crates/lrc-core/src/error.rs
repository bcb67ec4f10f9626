use alloc::string::String;
use core::fmt;

/// Everything that can go wrong inside the exact pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    VariableMismatch { left: String, right: String },
    /// An operation that cannot carry the logarithmic slot was handed a series with one.
    LogUnsupported(&'static str),
    NotUnit(&'static str),
    DivisionByZero,
    InvalidComposition(&'static str),
    NotInvertible(&'static str),
    /// A linear system that should have a unique solution did not.
    Singular(&'static str),
    /// Fitting a series against a finite basis left a residual.
    RecognitionFailed { context: String, residual_at: i64 },
    /// Not enough known coefficients to reach the requested order.
    InsufficientPrecision { needed: i64, available: i64 },
    /// A pole that should have cancelled survived.
    UncancelledPole(String),
    /// A ring element left the ring it is supposed to live in.
    NotInRing(String),
    /// A closed-form degree bound was violated.
    DegreeBound(String),
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VariableMismatch { left, right } => {
                write!(f, "series variables differ: {left} vs {right}")
            }
            Error::LogUnsupported(op) => write!(f, "{op}: logarithmic term not supported here"),
            Error::NotUnit(op) => write!(f, "{op}: input is not a unit of the required form"),
            Error::DivisionByZero => write!(f, "division by a series with no known nonzero coefficient"),
            Error::InvalidComposition(why) => write!(f, "invalid composition: {why}"),
            Error::NotInvertible(why) => write!(f, "not invertible: {why}"),
            Error::Singular(why) => write!(f, "singular linear system: {why}"),
            Error::RecognitionFailed { context, residual_at } => {
                write!(f, "recognition failed for {context}: residual at exponent {residual_at}")
            }
            Error::InsufficientPrecision { needed, available } => {
                write!(f, "insufficient precision: need order {needed}, have {available}")
            }
            Error::UncancelledPole(s) => write!(f, "uncancelled pole: {s}"),
            Error::NotInRing(s) => write!(f, "element outside the ring: {s}"),
            Error::DegreeBound(s) => write!(f, "degree bound violated: {s}"),
            Error::InvalidInput(s) => write!(f, "invalid input: {s}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
