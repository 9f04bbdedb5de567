use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
    #[error("weights of {s} and {t} must agree (m({s},{t}) = {m} is odd)")]
    WeightInconsistent { s: String, t: String, m: usize },
    #[error("weight of {generator} is negative ({weight})")]
    NegativeWeight { generator: String, weight: i64 },
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("group of order {0} exceeds the supported size")]
    GroupTooLarge(usize),
    #[error("{0} is not a minimal coset representative for the chosen J")]
    NotInDJ(String),
    #[error("{x} is not below {y} in the Bruhat order")]
    NotComparable { x: String, y: String },
    #[error("generator {0} has weight zero; KL polynomials require positive weights")]
    ZeroWeight(String),
    #[error("weak ascent outside the ideal at {0}; the module is only defined for E_J = D_J")]
    WAUnreachable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
