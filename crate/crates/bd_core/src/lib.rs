//! Belnap-Dunn logic: formulas, four-valued frame semantics, entailment,
//! normal forms, and the finite Lindenbaum algebras used by the canonical
//! model constructions.
//!
//! A literal is encoded as `2 * var + neg`, so literals are ordered
//! `p < -p < q < -q < ...`. Sets of literals (clauses and states alike) are
//! `u64` bitmasks over that encoding.

mod error;
mod formula;
pub mod lindenbaum;
pub mod lit4;
pub mod normal;
mod parse;
pub mod semantics;
mod signature;

pub use error::BdError;
pub use formula::Formula;
pub use lindenbaum::{canonical_states, enumerate_lindenbaum, sigma, Lindenbaum};
pub use lit4::{lit4_of_state, neg_states, support_set, FourLiteralClause, Lit4};
pub use normal::{fdnf, normalize, ConjClause, Fdnf, Idnf, NormalForm};
pub use parse::parse_bd;
pub use semantics::{entails, equivalent, supports_neg, supports_pos};
pub use signature::Signature;

/// A set of literals as a bitmask; bit `2v` is `v`, bit `2v + 1` is `-v`.
pub type LitSet = u64;

/// Largest signature whose literal sets fit in a [`LitSet`].
pub const MAX_VARS: usize = 32;

#[inline]
pub fn lit(var: usize, negated: bool) -> usize {
    2 * var + usize::from(negated)
}

#[inline]
pub fn lit_var(l: usize) -> usize {
    l / 2
}

#[inline]
pub fn lit_negated(l: usize) -> bool {
    l % 2 == 1
}

/// Iterates the literal indices of a set in increasing order.
pub fn lits(set: LitSet) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| set >> i & 1 == 1)
}

/// Every literal of an `n`-variable signature.
pub fn all_lits(n: usize) -> LitSet {
    if 2 * n >= 64 {
        u64::MAX
    } else {
        (1u64 << (2 * n)) - 1
    }
}

/// Exchanges each literal `v` with `-v`.
pub fn swap_polarity(set: LitSet) -> LitSet {
    const EVEN: u64 = 0x5555_5555_5555_5555;
    ((set & EVEN) << 1) | ((set >> 1) & EVEN)
}

/// Orders literal sets by size, then lexicographically by their sorted
/// literal lists. Used for clauses and states alike.
pub fn canonical_cmp(a: LitSet, b: LitSet) -> std::cmp::Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| lits(a).cmp(lits(b)))
}
