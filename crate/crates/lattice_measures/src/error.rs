use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("invalid negation: {0}")]
    BadNegation(String),
    #[error("the lattice has no negation")]
    NoNegation,
    #[error("the lattice has no bottom element")]
    NoBottom,
    #[error("mass of `{0}` is negative")]
    NegativeMass(String),
    #[error("total mass {0} exceeds 1")]
    TotalExceedsOne(String),
    #[error("total mass is {0}, expected 1")]
    NotNormalized(String),
    #[error("all product mass falls on conflict")]
    TotalConflict,
    #[error("measure has {got} values, lattice has {expected} elements")]
    Arity { expected: usize, got: usize },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("not a belief function: Möbius mass of `{element}` is {mass}")]
    NotBelief { element: String, mass: String },
}
