use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid quantum numbers (m={m}, n={n}, sym={sym}): {reason}")]
    QuantumNumbers {
        m: i64,
        n: i64,
        sym: &'static str,
        reason: &'static str,
    },
    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },
    #[error("orbit indices ({i_bar},{j_bar}) must be both even or both odd and not both zero")]
    OrbitParity { i_bar: i64, j_bar: i64 },
    #[error("length grid spacing {spacing} exceeds the resolvable maximum {max}")]
    GridTooCoarse { spacing: f64, max: f64 },
    #[error("quadrature of order {order} is not converged: self-norm deviates by {deviation:e}")]
    QuadratureNotConverged { order: usize, deviation: f64 },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Parameter {
            name,
            reason: reason.into(),
        }
    }
}
