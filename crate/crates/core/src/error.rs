use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("outside domain: {0}")]
    Domain(String),
    #[error("not a quadratic surd: {0}")]
    NotASurd(String),
    #[error("mixed quadratic fields: sqrt({0}) and sqrt({1})")]
    MixedField(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("index {index} beyond expansion length {len}")]
    Index { index: usize, len: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("tag mismatch: {0}")]
    Tag(String),
    #[error("word violates digit grammar: {0}")]
    Grammar(String),
    #[error("orbit terminated at step {0}")]
    TerminatedOrbit(usize),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("integral diverges: {0}")]
    DivergentIntegral(String),
    #[error("infinite residual")]
    InfiniteResidual,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
