//! Two-layered logics: BD inside, a measure modality in the middle, and a
//! two-dimensional Łukasiewicz logic outside.
//!
//! `PrL2` reads `Pr φ` as `(p(|φ|+), p(|φ|-))` over probabilistic models.
//! `BelL2` reads `B φ` as `(bel(|φ|+), bel(|φ|-))` over DS models. `BelNL`
//! reads `B φ` as `(bel(|φ|+), pl(|φ|-))` and `Pl φ` as
//! `(pl(|φ|+), bel(|φ|-))` over DS_pl models, with NŁ as outer logic.

mod error;
mod formula;
pub mod generate;
pub mod suite;

pub use error::TwoLayerError;
pub use formula::{
    b, defined_pl, eval_two_layer, holds_in, infer_signature, parse_two_layer, parse_two_layer_auto, pl, pr, ModalAtom,
    Modality, Tag, TwoLayerFormula,
};
pub use generate::{gamma, inequality_terms, monotonicity_axiom, sigma, LinTerm, Sequence, TermKind};
pub use suite::{
    check_instances, find_counterexample, modal_axiom_suite, sample_model, soundness_suite, AnyModel, AxiomInstance,
    SoundnessReport, SuiteOptions,
};
