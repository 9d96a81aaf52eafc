use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A parameter is outside the range an operation accepts.
    InvalidParameter(String),
    /// The argument lies outside the supported domain of a special function.
    Domain(String),
    /// A pole of a special function (or of a hypergeometric lower parameter) was hit.
    Pole(String),
    /// An iteration or truncation could not reach its tolerance.
    ToleranceNotMet { what: String, achieved: f64 },
    /// Two independent evaluation paths disagree.
    NumericalInconsistency { what: String, discrepancy: f64 },
    /// The requested evaluation mode is not registered for the case.
    UnsupportedMode(String),
    /// No closed form is registered for the requested quantity.
    Unsupported(String),
    UnknownCase(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(m) => write!(f, "invalid parameter: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Pole(m) => write!(f, "pole: {m}"),
            Error::ToleranceNotMet { what, achieved } => {
                write!(f, "tolerance not met in {what} (achieved {achieved:e})")
            }
            Error::NumericalInconsistency { what, discrepancy } => {
                write!(f, "numerical inconsistency in {what} (|Δ| = {discrepancy:e})")
            }
            Error::UnsupportedMode(m) => write!(f, "unsupported mode: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::UnknownCase(id) => write!(f, "unknown case `{id}`"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
