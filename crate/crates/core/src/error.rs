use thiserror::Error;

use crate::cluster::PointId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid cluster: {0}")]
    InvalidCluster(String),
    #[error("point {0} is not in the cluster")]
    UnknownPoint(PointId),
    #[error("multiplicity sequence admits no proximity structure: {0}")]
    BadMultiplicities(String),
    #[error("divisor has {got} coefficients, cluster has {expected} points")]
    LengthMismatch { expected: usize, got: usize },
    #[error("divisors live on different clusters")]
    ClusterMismatch,
    #[error("cluster is not a prefix extension")]
    NotAnExtension,
    #[error("not a complete ideal: {0}")]
    NotCanonical(String),
    #[error("the unit ideal is not allowed here")]
    UnitIdeal,
    #[error("ideal is not simple")]
    NotSimple,
    #[error("exponent must be a positive rational")]
    NonPositiveExponent,
    #[error("chain plan does not match the ideal: {0}")]
    PlanMismatch(String),
    #[error("not an m-primary monomial ideal")]
    NotMPrimary,
    #[error("oracle bound exceeded: {0}")]
    OracleBound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
