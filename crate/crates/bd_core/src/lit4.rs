//! Four-valued literals and De Morgan negation on sets of states.

use std::collections::BTreeSet;
use std::fmt;

use crate::lindenbaum::sigma;
use crate::{lit, semantics, Formula, LitSet, Signature};

/// Per-variable status of a state: true, both, neither, false.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lit4 {
    T,
    B,
    N,
    F,
}

impl Lit4 {
    pub fn of(pos: bool, neg: bool) -> Self {
        match (pos, neg) {
            (true, false) => Lit4::T,
            (true, true) => Lit4::B,
            (false, false) => Lit4::N,
            (false, true) => Lit4::F,
        }
    }

    /// Four-valued negation: exchanges T and F, fixes B and N.
    pub fn neg(self) -> Self {
        match self {
            Lit4::T => Lit4::F,
            Lit4::F => Lit4::T,
            x => x,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Lit4::T => 'T',
            Lit4::B => 'B',
            Lit4::N => 'N',
            Lit4::F => 'F',
        }
    }
}

/// Total map from the variables of a signature to [`Lit4`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FourLiteralClause(pub Vec<Lit4>);

impl FourLiteralClause {
    pub fn get(&self, var: usize) -> Lit4 {
        self.0[var]
    }

    /// The unique state with this description.
    pub fn to_state(&self) -> LitSet {
        self.0.iter().enumerate().fold(0, |s, (v, x)| {
            let (p, n) = match x {
                Lit4::T => (true, false),
                Lit4::B => (true, true),
                Lit4::N => (false, false),
                Lit4::F => (false, true),
            };
            s | (u64::from(p) << lit(v, false)) | (u64::from(n) << lit(v, true))
        })
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        struct D<'a>(&'a FourLiteralClause, &'a Signature);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> =
                    self.0 .0.iter().enumerate().map(|(v, x)| format!("{}({})", x.letter(), self.1.name(v))).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
        }
        D(self, sig)
    }
}

pub fn lit4_of_state(state: LitSet, n: usize) -> FourLiteralClause {
    FourLiteralClause(
        (0..n).map(|v| Lit4::of(state >> lit(v, false) & 1 == 1, state >> lit(v, true) & 1 == 1)).collect(),
    )
}

/// States positively supporting `f`, over variables `0..n`.
pub fn support_set(f: &Formula, n: usize) -> BTreeSet<LitSet> {
    (0..1u64 << (2 * n)).filter(|&s| semantics::supports_pos(s, f)).collect()
}

/// De Morgan negation on `P(P(Lit))`.
///
/// Under the four-literal reading a state `u` belongs to `¬A` iff the state
/// obtained from `u` by exchanging B and N on every variable is not in `A`.
/// This is an involution that reverses inclusion and maps the support set of
/// `φ` onto that of `¬φ`.
pub fn neg_states(a: &BTreeSet<LitSet>, n: usize) -> BTreeSet<LitSet> {
    (0..1u64 << (2 * n)).filter(|&u| !a.contains(&sigma(u, n))).collect()
}
