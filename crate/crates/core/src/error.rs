use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Index variance or dottedness does not allow the requested contraction.
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("(p, q) = ({p}, {q}) are not coprime positive integers")]
    NotCoprime { p: u32, q: u32 },
    /// The inverse Hopf chart is singular on the fiber over k + kz = 0.
    #[error("degenerate Hopf fiber: k + kz = {0:e}")]
    DegenerateFiber(f64),
    #[error("quadrature did not converge (estimate {value}, error {error:e})")]
    Convergence { value: String, error: f64 },
    #[error("unknown name `{name}`; valid names: {valid}")]
    UnknownName { name: String, valid: String },
}
