use thiserror::Error;

/// Failures raised while ingesting or transforming binomials.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent vectors have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("the binomial is identically zero (equal monomials with coefficient 1)")]
    DegenerateZero,

    #[error("chart variable {chart} is not part of the center {center:?}")]
    InvalidChart { chart: usize, center: Vec<usize> },

    #[error("center {0:?} is not a valid blowup center")]
    InvalidCenter(Vec<usize>),

    #[error("binomial {index} has {found} variables, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("no binomials given")]
    EmptyInput,

    #[error("at least one variable is required")]
    NoVariables,

    #[error("state has a variable with positive exponent in both monomials")]
    NotCoprime,
}

pub type Result<T> = std::result::Result<T, Error>;
