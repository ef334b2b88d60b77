//! Two-dimensional Łukasiewicz logics over the twist product of `[0,1]`.
//!
//! A value `(a1, a2)` carries a degree of support for truth and one for
//! falsity. `L2` designates `(1,0)` only and negates implication with the
//! Łukasiewicz co-implication; `NL` designates every value with `a1 = 1`
//! and negates its weak implication Nelson-style.

pub mod axioms;
mod error;
mod falsify;
mod outer;
mod parse;
mod value;

pub use error::LukError;
pub use falsify::{falsify, FalsifyOptions, Valuation};
pub use outer::{Logic, Outer};
pub use parse::{parse_outer, parse_outer_with};
pub use value::{classify, luk, Classification, TwoPoint};
