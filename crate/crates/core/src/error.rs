use thiserror::Error;

use crate::modular::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input arrays have inconsistent sizes.
    #[error("shape error: {0}")]
    Shape(String),

    /// Data violates a structural requirement (positivity, permutation, ...).
    #[error("invalid modular data: {0}")]
    DataInvalid(String),

    /// A Verlinde sum is not within tolerance of a non-negative integer.
    #[error("not modular: Verlinde coefficient N[{a}][{b}][{c}] = {value} is not a non-negative integer")]
    NotModular {
        a: usize,
        b: usize,
        c: usize,
        value: f64,
    },

    #[error("degenerate Gauss sum: |a| = {0}")]
    DegenerateGaussSum(f64),

    #[error("validation failed: {0}")]
    ValidationFailed(Box<ValidationReport>),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("schema error in field `{field}`: {message}")]
    Schema { field: String, message: String },

    #[error("group error: {0}")]
    Group(String),

    #[error("invalid group action: {0}")]
    InvalidAction(String),

    #[error("character table construction failed: {0}")]
    CharacterTable(String),

    /// A derived quantity that must be integral or consistent is not.
    #[error("inconsistency: {0}")]
    Inconsistent(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}
