//! Crate-wide error type.

use num::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("classes belong to different varieties")]
    VarietyMismatch,
    #[error("invalid variety: {0}")]
    InvalidVariety(String),
    #[error("monomial {0} does not lie in the variety's basis")]
    InvalidMonomial(String),
    #[error("truncated inverse requires the degree-0 coefficient to be 1")]
    NotAUnit,
    #[error("expected a homogeneous degree-1 class with integer coefficients")]
    InvalidDivisor,
    #[error("bundle rank would become negative")]
    RankUnderflow,
    #[error("slope requires rank >= 1")]
    ZeroRank,
    #[error("polarization is not ample here: {0}")]
    NotAmple(String),
    #[error("coefficient vectors have mismatched lengths")]
    LengthMismatch,
    #[error("vanishing assumption violated: chi = {0} > 0")]
    VanishingViolated(BigInt),
    #[error("{0}")]
    HypothesisViolated(String),
    #[error("search bound {bound} below the minimum {min}")]
    BoundTooSmall { bound: u32, min: u32 },
    #[error("inconsistent Chern data: {0}")]
    InvalidChernData(String),
}
