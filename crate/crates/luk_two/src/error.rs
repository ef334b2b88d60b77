use thiserror::Error;

use crate::Logic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LukError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("`{connective}` is not a connective of {logic}")]
    Connective { connective: &'static str, logic: Logic },
    #[error("atom `{0}` has no value")]
    MissingAtom(String),
    #[error("coordinate {0} lies outside [0,1]")]
    OutOfRange(String),
}
