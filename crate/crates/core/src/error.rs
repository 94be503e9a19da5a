use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument outside the domain of an operation (e.g. `t <= 0`).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid step function: {0}")]
    InvalidFunction(String),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    /// `L_{∞,q}` with `q < ∞` only contains the zero function.
    #[error("degenerate Lorentz space L_{{{p},{q}}} = {{0}}: need p < inf, or p = q = inf")]
    Degenerate { p: f64, q: f64 },

    #[error("inadmissible functor parameters: {0}")]
    Inadmissible(String),

    /// Parameters that are individually valid but inconsistent with each other.
    #[error("parameter mismatch: {0}")]
    Parameter(String),

    #[error("empty corpus: {0}")]
    EmptyCorpus(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Parse(String),
}
