use thiserror::Error;

use crate::bmtree::AxisViolation;

/// Errors raised by the library. Parse failures are kept separate from
/// precondition failures so front ends can map them to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("group order {order} exceeds enumeration bound {bound}")]
    EnumerationBound { order: u128, bound: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid axis: {}", render_violations(.0))]
    InvalidAxis(Vec<AxisViolation>),

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

fn render_violations(v: &[AxisViolation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
