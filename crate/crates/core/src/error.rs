use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("polynomial depends on tau; expected a polynomial in the energy only")]
    NotUnivariate,

    #[error("the lambda_0 numerator is identically zero")]
    LambdaZero,

    #[error("quantization polynomial vanishes identically at iteration {k}")]
    DegenerateDelta { k: usize },

    #[error("no root of the quantization condition persisted up to k_max = {k_max}")]
    NoStableRoots { k_max: usize },

    #[error("lambda_k vanishes at the evaluation point")]
    DivisionByZero,

    #[error("alpha has a non-nodal pole at tau = {tau} on the integration path")]
    PoleOnGrid { tau: f64 },

    #[error("frequency must be positive")]
    NonpositiveFrequency,

    #[error("mass parameter lambda must be non-negative")]
    NegativeLambda,

    #[error("lambda_tilde = 1 makes the lambda_0 seed vanish")]
    LambdaZeroSeed,

    #[error("lambda_tilde = {0} is outside the supported window [0, 1)")]
    LambdaTildeOutOfRange(String),

    #[error("lambda_tilde = 0: no continuum threshold, every level is bound")]
    NoThreshold,

    #[error("state n = {n} is not normalizable ({})", match max_n {
        Some(m) => format!("normalizable states: n ≤ {m}"),
        None => "no normalizable states".to_string(),
    })]
    NotNormalizable { n: u32, max_n: Option<u32> },

    #[error("series truncates below degree {n}; no polynomial of exact degree n exists")]
    DegenerateSeries { n: u32 },

    #[error("grid-convergence ratios are inconsistent: {0}")]
    NonmonotoneConvergence(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
