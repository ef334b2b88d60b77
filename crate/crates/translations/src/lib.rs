//! Translations between the inequality calculi and the two-layered
//! Łukasiewicz logics, with the piecewise-linear machinery they rest on.

mod affine;
mod error;
pub mod harness;
mod pwl;
mod translate;

pub use affine::{clamp01, mcnaughton_clamped, Affine, ClampedAffine};
pub use error::TranslateError;
pub use pwl::{functional_counterpart, Clause, Guard, Literal, PwlForm, MAX_CLAUSES};
pub use translate::{tag_of, to_inequality, to_two_layer, translate, Direction, Expr};
