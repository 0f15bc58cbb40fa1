use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {label:?} has zero weight")]
    ZeroWeight { label: String },
    #[error("point {label:?} has negative weight {weight}")]
    NegativeWeight { label: String, weight: Rational },
    #[error("weights sum to {sum}, expected 1")]
    WeightSum { sum: Rational },
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("{labels} labels but {weights} weights")]
    LengthMismatch { labels: usize, weights: usize },
    #[error("the space has no points")]
    EmptySpace,
    #[error("unknown point label {0:?}")]
    UnknownLabel(String),
    #[error("point index {index} out of range for a space of {len} points")]
    PointOutOfRange { index: usize, len: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("function defined on {found} points, space has {expected}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("measures are defined on different fields")]
    FieldMismatch,
    #[error("set is not measurable with respect to the field")]
    NotMeasurable,
    #[error("{what} = {} lies outside [{}, {}]", .bounds.value, .bounds.lower, .bounds.upper)]
    OutOfBounds { what: &'static str, bounds: Box<Bounds> },
    #[error("{what} = {value} must be positive")]
    NotPositive { what: &'static str, value: Rational },
    #[error("|f| exceeds {bound} at point {index}")]
    ApproximationDomain { bound: u64, index: usize },
    #[error("invalid horizon: {0}")]
    InvalidHorizon(String),
    #[error("enumeration needs {required} product points, budget is {budget}")]
    BudgetExceeded { required: String, budget: u64 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    pub value: Rational,
    pub lower: Rational,
    pub upper: Rational,
}

impl Error {
    pub fn out_of_bounds(what: &'static str, value: Rational, lower: Rational, upper: Rational) -> Self {
        Error::OutOfBounds {
            what,
            bounds: Box::new(Bounds { value, lower, upper }),
        }
    }
}
