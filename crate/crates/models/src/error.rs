use lattice_measures::MeasureError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("a model needs at least one state")]
    NoStates,
    #[error("{0} states exceed the limit of 64")]
    TooManyStates(usize),
    #[error("valuation lists {got} variables, expected {expected}")]
    Arity { expected: usize, got: usize },
    #[error("signature has {got} variables, cap is {cap}")]
    CapExceeded { got: usize, cap: usize },
    #[error("measure has {got} values, the algebra has {expected} classes")]
    NotTotal { expected: usize, got: usize },
    #[error("invalid mass: {0}")]
    InvalidMass(String),
    #[error("axiom check failed: {0}")]
    Axiom(String),
    #[error("not a belief function: Möbius mass of `{class}` is {mass}")]
    NotBelief { class: String, mass: String },
    #[error("the model carries no {0} measure")]
    MissingMeasure(&'static str),
    #[error("bel exceeds pl on {0}")]
    BelAbovePl(String),
    #[error("operation needs a canonical model")]
    NotCanonical,
    #[error(transparent)]
    Measure(#[from] MeasureError),
}
