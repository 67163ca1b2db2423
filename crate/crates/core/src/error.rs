use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("illegal digit system: base {m}, balance {b} (need m >= 2 and b = 0, or m > 2 and 1 <= b <= m/2)")]
    InvalidSystem { m: i64, b: i64 },

    #[error("digit {digit} is outside the alphabet [{lo}, {hi}]")]
    DigitOutOfRange { digit: i64, lo: i64, hi: i64 },

    #[error("negative value {0} has no standard base representation")]
    NegativeStandard(String),

    #[error("digit systems differ: {left} vs {right}")]
    SystemMismatch { left: String, right: String },

    #[error("{value} lies outside the value interval [{lo}, {hi}]")]
    OutsideInterval {
        value: String,
        lo: String,
        hi: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource limit exceeded: {needed} squares requested, limit is {limit}")]
    ResourceLimit { needed: u128, limit: u128 },

    #[error("membership search visited more than {0} states")]
    StateCap(usize),

    #[error("cannot render an empty prefractal")]
    EmptyPrefractal,

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
