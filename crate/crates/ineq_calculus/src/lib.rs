//! Weight formulas and belief formulas over Belnap-Dunn events: parsing,
//! evaluation on models, and decision procedures by exact linear
//! feasibility.
//!
//! A weight atom `sum a_i * w±(phi_i) REL c` is read on a probabilistic
//! model, a belief atom `sum a_i * b±(phi_i) REL c` on a DS model.
//! Boolean combinations use classical `not`, `and`, `or`, `->`.

mod ast;
pub mod axioms;
mod error;
mod eval;
mod normal;
mod parse;
mod sat;

pub use ast::{Atom, AtomKind, Combo, Polarity, Term};
pub use error::IneqError;
pub use eval::{eval, eval_belief, eval_weight};
pub use normal::{canonicalize, dnf_branches, negate_atom, normalize_atom, normalize_atoms};
pub use parse::{infer_signature, parse_combo, parse_combo_auto};
pub use sat::{entails, entails_witness, sat, sat_belief, sat_weight, SatOptions, SatResult, Witness};
