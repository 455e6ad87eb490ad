use core::fmt;

use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Reciprocal of a series whose constant term is zero.
    NonInvertibleSeries,
    /// Logarithm of a series whose constant term is not one.
    LogDomain,
    /// A generator was placed in degree zero.
    UngradedGenerator,
    /// An argument is outside the range where the formula applies.
    Domain(String),
    /// A closed form produced a value it should never produce (non-integral
    /// rank, failed anchor). Signals a bug, not bad input.
    InternalInconsistency(String),
    /// The oracle matrix for some degree would exceed the column budget.
    ResourceLimit {
        degree: usize,
        columns: u64,
        budget: u64,
    },
    /// A stem index needed by the stable homotopy formula is not tabulated.
    InsufficientStemsData { missing: i64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonInvertibleSeries => {
                f.write_str("series has zero constant term and is not invertible")
            }
            Error::LogDomain => f.write_str("logarithm requires constant term 1"),
            Error::UngradedGenerator => {
                f.write_str("generators must live in positive degrees (dims[0] must be 0)")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::InternalInconsistency(msg) => write!(f, "internal inconsistency: {msg}"),
            Error::ResourceLimit {
                degree,
                columns,
                budget,
            } if *columns == u64::MAX => write!(
                f,
                "resource limit: degree {degree} needs at least 2^64 columns, budget is {budget}"
            ),
            Error::ResourceLimit {
                degree,
                columns,
                budget,
            } => write!(
                f,
                "resource limit: degree {degree} needs {columns} columns, budget is {budget}"
            ),
            Error::InsufficientStemsData { missing } => {
                write!(f, "stems table does not cover stem index {missing}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
