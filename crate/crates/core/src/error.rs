use num_rational::Ratio;
use thiserror::Error;

/// Errors raised by the series engine, the parameter system and the verifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-invertible series: leading coefficient {0} is not a unit")]
    NonInvertible(String),

    #[error("non-convergent product: base exponent must be positive")]
    NonConvergentProduct,

    #[error("divergent quintuple parameters: surviving term at exponent {0}")]
    DivergentQuintuple(i64),

    #[error("divergent triple parameters: surviving term at exponent {0}")]
    DivergentTriple(i64),

    #[error("non-integral series: nonzero coefficient at exponent {0}")]
    NonIntegral(Ratio<i64>),

    #[error("invalid label (r, s) = ({r}, {s}) for minimal model ({p}, {p_prime})")]
    InvalidLabel { p: i64, p_prime: i64, r: i64, s: i64 },

    #[error("invalid minimal model ({p}, {p_prime}): {reason}")]
    InvalidModel { p: i64, p_prime: i64, reason: &'static str },

    #[error("invalid parameters ({constraint}): {detail}")]
    InvalidParams { constraint: &'static str, detail: String },

    #[error("lemma violation: {0}")]
    LemmaViolation(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("non-integral identity side: {0}")]
    NonIntegralIdentitySide(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn params(constraint: &'static str, detail: impl Into<String>) -> Self {
        Error::InvalidParams {
            constraint,
            detail: detail.into(),
        }
    }
}
