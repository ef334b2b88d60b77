//! Belnap-Dunn frames with uncertainty: probabilistic models, DS models with
//! one belief mass, DS_pl models with separate belief and plausibility
//! masses, and the completeness constructions that rebuild a model from a
//! measure given on formula classes.

mod construct;
mod error;
mod frame;
pub mod sample;
mod uncertain;

pub use construct::{
    check_nsprob_axioms, induced_belief, induced_plausibility, induced_probability, model_from_bel_pl,
    model_from_belief, model_from_nsprob, model_from_plausibility, AxiomReport, PlModel,
};
pub use error::ModelError;
pub use frame::{BDModel, StateSet, CANONICAL_CAP};
pub use uncertain::{measure_of, DSModel, DSplModel, Kind, ProbBDModel, Sign, Uncertain};
