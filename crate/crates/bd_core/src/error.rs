use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BdError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("constant at {pos} is only allowed with constants enabled")]
    ConstantNotAllowed { pos: usize },
    #[error("invalid signature: {0}")]
    Signature(String),
    #[error("literal set is not closed under negation (missing `{0}`)")]
    NotNegationClosed(String),
    #[error("literal `{0}` of the formula is missing from the literal set")]
    MissingLiteral(String),
    #[error("signature has {got} variables, cap is {cap}")]
    CapExceeded { got: usize, cap: usize },
}
