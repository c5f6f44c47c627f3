use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unphysical moments: v = {v}, n = {n} (need n >= 0 and v^2 <= n(n+1))")]
    Unphysical { v: f64, n: f64 },

    #[error("invalid beam splitter: t = {t}, r = {r} (need t, r >= 0 and t^2 + r^2 = 1)")]
    InvalidBeamSplitter { t: f64, r: f64 },

    #[error("negative symplectic discriminant {0:e}")]
    NegativeDiscriminant(f64),

    #[error("negative covariance determinant {0:e}")]
    NegativeDeterminant(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { residual: f64, iterations: usize },
}
