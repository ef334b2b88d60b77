use bd_core::BdError;
use models::ModelError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IneqError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("in formula at {pos}: {source}")]
    Formula { pos: usize, source: BdError },
    #[error("weight and belief atoms are mixed")]
    MixedKinds,
    #[error("{got} variables exceed the cap of {cap} for this procedure")]
    CapExceeded { got: usize, cap: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}
