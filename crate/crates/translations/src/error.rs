use ineq_calculus::IneqError;
use thiserror::Error;
use two_layered::{Tag, TwoLayerError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("formula is not in negation normal form")]
    NotNnf,
    #[error("connective `{0}` has no functional counterpart")]
    Unsupported(&'static str),
    #[error("normal form exceeds {0} clauses")]
    TooLarge(usize),
    #[error("atom has a `{0}-` term; normalize the input first")]
    NotNormalized(char),
    #[error("no translation for {0} formulas")]
    Tag(Tag),
    #[error("direction {dir} expects {expected} input")]
    Direction { dir: crate::Direction, expected: &'static str },
    #[error(transparent)]
    Ineq(#[from] IneqError),
    #[error(transparent)]
    TwoLayer(#[from] TwoLayerError),
}
