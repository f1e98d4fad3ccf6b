use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("points do not span the ambient space (affine rank {rank} < {dim})")]
    NotFullDimensional { rank: usize, dim: usize },

    #[error("{what} needs {required} units of work, budget is {cap}")]
    BudgetExceeded {
        what: &'static str,
        required: f64,
        cap: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("origin is not an interior point (inradius at origin = {inradius})")]
    OriginNotInterior { inradius: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("radius {0} is degenerate: the bound is undefined for r >= 1")]
    DegenerateRadius(f64),

    #[error("covering certificate is not certified (status: {0})")]
    CertificateNotCertified(String),

    #[error("rejection sampling acceptance rate {rate:e} is below {floor:e} after {draws} draws")]
    AcceptanceTooLow { rate: f64, floor: f64, draws: u64 },

    #[error("continued fraction did not converge for a={a}, b={b}, x={x}")]
    NoConvergence { a: f64, b: f64, x: f64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
