use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("generators {0} and {1} are not linearly independent over R")]
    DegenerateLattice(String, String),
    #[error("lattice {sub} is not contained in {sup}")]
    NotSublattice { sub: String, sup: String },
    #[error("objects live on different ambient tori")]
    AmbientMismatch,
    #[error("slope {slope} does not map {from} into {to}")]
    IllDefinedCurve { slope: String, from: String, to: String },
    #[error("{0} does not preserve its lattice")]
    NotAutomorphism(String),
    #[error("automorphism order exceeds {0}")]
    OrderExceedsMax(u32),
    #[error("point set is not stable under the automorphism")]
    NotStable,
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("curve `{0}` is singular; blow up its singular points first")]
    SingularCurve(String),
    #[error("invalid quotient data: {0}")]
    Quotient(String),
    #[error("invalid log pair: {0}")]
    LogPair(String),
    #[error("Euler number must be nonnegative, got {0}")]
    NegativeChi(i64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}
