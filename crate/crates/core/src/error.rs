use thiserror::Error;

/// Errors raised by the exact algebra kernels and the certification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(u32),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("forms share a common projective zero")]
    CommonZero,
    #[error("base point is a zero of the form")]
    InvalidBasePoint,
    #[error("zero point")]
    ZeroPoint,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("spanning set is rank deficient")]
    RankDeficient,
    #[error("matrices {0} and {1} do not commute (entry ({2}, {3}))")]
    NonCommuting(usize, usize, usize, usize),
    #[error("entry of degree greater than one")]
    NonLinearEntry,
    #[error("entry has a constant term; a homogeneous linear form is required")]
    NonHomogeneousEntry,
    #[error("curves share a common component")]
    CommonComponent,
    #[error("center meets the surface")]
    CenterMeetsSurface,
    #[error("form is not self-adjoint for action {0}")]
    NotSelfAdjoint(usize),
    #[error("component {0} contains no member point at the sampled parameters")]
    NotOnVariety(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
