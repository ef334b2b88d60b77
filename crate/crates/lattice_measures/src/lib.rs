//! Finite lattices, Möbius inversion, general mass, belief and plausibility
//! functions, and Dempster-style combination rules.

mod combine;
mod error;
mod lattice;
mod mass;
mod measure;

pub use combine::{combine, Algebra, Rule};
pub use error::MeasureError;
pub use lattice::{FiniteLattice, FreeDeMorgan, Lattice};
pub use mass::MassFunction;
pub use measure::{
    belief_from_mass, check_measure, dual_measure, extend_to_powerset, mobius_by_function, mobius_function,
    mobius_transform, plausibility_from_mass, zeta, Measure, Report, Role, Violation,
};
pub use ratlp::Q;
