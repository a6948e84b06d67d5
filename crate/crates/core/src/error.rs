use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what}: argument {value} is outside the domain")]
    Domain { what: &'static str, value: f64 },

    #[error("{what}: series did not converge after {terms} terms (last relative term {last_rel:e})")]
    NonConvergence {
        what: &'static str,
        terms: usize,
        last_rel: f64,
    },

    #[error("{what}: result overflows f64 (ln magnitude {ln_value})")]
    Overflow { what: &'static str, ln_value: f64 },

    #[error("2F1 series diverges at argument {x} (|x| >= 1)")]
    DivergentArgument { x: f64 },

    #[error("{what}: quadrature reached error estimate {achieved:e}, target {target:e}")]
    Quadrature {
        what: &'static str,
        achieved: f64,
        target: f64,
    },

    #[error("{what}: integrand tail does not decay")]
    DivergentTail { what: &'static str },

    #[error("truncation: tail weight {tail:e} at index {index} exceeds the allowed bound")]
    Truncation { tail: f64, index: usize },

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("operands live on different Fock spaces")]
    SpaceMismatch,

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
