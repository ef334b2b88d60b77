//! Frame semantics. A state is the set of literals it supports: `p` in the
//! state means positive support of `p`, `-p` means negative support. All
//! four combinations per variable are allowed.

use crate::{lit, Formula, LitSet};

/// Largest number of distinct variables for exhaustive entailment.
pub const ENTAILS_CAP: usize = 8;

pub fn supports_pos(state: LitSet, f: &Formula) -> bool {
    match f {
        Formula::Var(v) => state >> lit(*v, false) & 1 == 1,
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Not(a) => supports_neg(state, a),
        Formula::And(a, b) => supports_pos(state, a) && supports_pos(state, b),
        Formula::Or(a, b) => supports_pos(state, a) || supports_pos(state, b),
    }
}

pub fn supports_neg(state: LitSet, f: &Formula) -> bool {
    match f {
        Formula::Var(v) => state >> lit(*v, true) & 1 == 1,
        Formula::Top => false,
        Formula::Bot => true,
        Formula::Not(a) => supports_pos(state, a),
        Formula::And(a, b) => supports_neg(state, a) || supports_neg(state, b),
        Formula::Or(a, b) => supports_neg(state, a) && supports_neg(state, b),
    }
}

/// Truth table over all `4^n` states of an `n`-variable signature, one bit
/// per state, the state being the bit index read as a literal set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub pos: Vec<u64>,
    pub neg: Vec<u64>,
}

fn words(n: usize) -> usize {
    (1usize << (2 * n)).div_ceil(64)
}

fn lit_column(n: usize, l: usize) -> Vec<u64> {
    let total = 1usize << (2 * n);
    let mut out = vec![0u64; words(n)];
    for s in 0..total {
        if s >> l & 1 == 1 {
            out[s / 64] |= 1 << (s % 64);
        }
    }
    out
}

fn full(n: usize) -> Vec<u64> {
    let total = 1usize << (2 * n);
    let mut out = vec![u64::MAX; words(n)];
    if !total.is_multiple_of(64) {
        *out.last_mut().unwrap() = (1u64 << (total % 64)) - 1;
    }
    out
}

fn zip(a: &[u64], b: &[u64], op: impl Fn(u64, u64) -> u64) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| op(*x, *y)).collect()
}

/// Builds the truth table of `f` over variables `0..n`.
pub fn table(f: &Formula, n: usize) -> Table {
    assert!(f.var_bound() <= n, "formula uses variables outside 0..{n}");
    assert!(n <= 13, "truth tables are limited to 13 variables");
    let cols: Vec<(Vec<u64>, Vec<u64>)> =
        (0..n).map(|v| (lit_column(n, lit(v, false)), lit_column(n, lit(v, true)))).collect();
    fn go(f: &Formula, n: usize, cols: &[(Vec<u64>, Vec<u64>)]) -> Table {
        match f {
            Formula::Var(v) => Table { pos: cols[*v].0.clone(), neg: cols[*v].1.clone() },
            Formula::Top => Table { pos: full(n), neg: vec![0; words(n)] },
            Formula::Bot => Table { pos: vec![0; words(n)], neg: full(n) },
            Formula::Not(a) => {
                let t = go(a, n, cols);
                Table { pos: t.neg, neg: t.pos }
            }
            Formula::And(a, b) => {
                let (x, y) = (go(a, n, cols), go(b, n, cols));
                Table { pos: zip(&x.pos, &y.pos, |p, q| p & q), neg: zip(&x.neg, &y.neg, |p, q| p | q) }
            }
            Formula::Or(a, b) => {
                let (x, y) = (go(a, n, cols), go(b, n, cols));
                Table { pos: zip(&x.pos, &y.pos, |p, q| p | q), neg: zip(&x.neg, &y.neg, |p, q| p & q) }
            }
        }
    }
    go(f, n, &cols)
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Compacts the variables used by either formula onto `0..k`.
fn compact(a: &Formula, b: &Formula) -> (Formula, Formula, usize) {
    let used = a.vars() | b.vars();
    let map = |v: usize| (used & ((1u64 << v) - 1)).count_ones() as usize;
    (a.map_vars(&map), b.map_vars(&map), used.count_ones() as usize)
}

/// `phi |- psi` in BD: every state that positively supports `phi` supports
/// `psi`, and every state that negatively supports `psi` negatively supports
/// `phi`.
///
/// Decided by exhaustive valuation over the `4^k` states of the `k` variables
/// that occur. Beyond [`ENTAILS_CAP`] variables the order of irredundant
/// normal forms is used instead.
pub fn entails(phi: &Formula, psi: &Formula) -> bool {
    let (a, b, k) = compact(phi, psi);
    if k > ENTAILS_CAP {
        return crate::Idnf::of(phi).leq(&crate::Idnf::of(psi));
    }
    let (ta, tb) = (table(&a, k), table(&b, k));
    subset(&ta.pos, &tb.pos) && subset(&tb.neg, &ta.neg)
}

pub fn equivalent(phi: &Formula, psi: &Formula) -> bool {
    entails(phi, psi) && entails(psi, phi)
}

/// First state witnessing `phi |/- psi`, if any, over the variables `0..n`.
pub fn counter_state(phi: &Formula, psi: &Formula, n: usize) -> Option<LitSet> {
    (0..1u64 << (2 * n))
        .find(|&s| (supports_pos(s, phi) && !supports_pos(s, psi)) || (supports_neg(s, psi) && !supports_neg(s, phi)))
}
