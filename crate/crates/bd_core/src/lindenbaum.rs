//! Finite Lindenbaum algebras of BD and BD*.
//!
//! A class is identified by the set of states positively supporting its
//! members. These sets are exactly the upsets of `(P(Lit), ⊆)`; without
//! constants the empty upset and the full one are excluded. Classes are
//! stored as `u64` bitmasks over the canonical state order, which caps the
//! signature at three variables.

use std::collections::HashMap;

use crate::{all_lits, canonical_cmp, lit, semantics, swap_polarity, BdError, Formula, Idnf, LitSet};

/// Default cap; three variables already give 7,828,352 classes.
pub const DEFAULT_CAP: usize = 2;
/// Hard cap imposed by the `u64` class keys.
pub const HARD_CAP: usize = 3;

/// Every state over `n` variables, ordered by size then literal order.
pub fn canonical_states(n: usize) -> Vec<LitSet> {
    let mut v: Vec<LitSet> = (0..1u64 << (2 * n)).collect();
    v.sort_by(|a, b| canonical_cmp(*a, *b));
    v
}

/// The state involution behind De Morgan negation: `s ⊨⁻ φ` iff
/// `sigma(s) ⊭⁺ φ`.
pub fn sigma(state: LitSet, n: usize) -> LitSet {
    swap_polarity(all_lits(n) & !state)
}

#[derive(Debug, Clone)]
pub struct Lindenbaum {
    n: usize,
    with_constants: bool,
    states: Vec<LitSet>,
    state_index: HashMap<LitSet, usize>,
    sigma: Vec<usize>,
    keys: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl Lindenbaum {
    pub fn new(n: usize, with_constants: bool) -> Result<Self, BdError> {
        Self::with_cap(n, with_constants, DEFAULT_CAP)
    }

    pub fn with_cap(n: usize, with_constants: bool, cap: usize) -> Result<Self, BdError> {
        let cap = cap.min(HARD_CAP);
        if n > cap {
            return Err(BdError::CapExceeded { got: n, cap });
        }
        let states = canonical_states(n);
        let state_index: HashMap<LitSet, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let sigma = states.iter().map(|&s| state_index[&self::sigma(s, n)]).collect();
        // For each state, the canonical indices of its one-literal extensions.
        let ups: Vec<u64> = states
            .iter()
            .map(|&s| (0..2 * n).filter(|l| s >> l & 1 == 0).fold(0u64, |m, l| m | 1 << state_index[&(s | 1 << l)]))
            .collect();
        let mut keys = Vec::new();
        upsets(&ups, states.len(), &mut keys);
        let full = if states.len() == 64 { u64::MAX } else { (1u64 << states.len()) - 1 };
        if !with_constants {
            keys.retain(|&k| k != 0 && k != full);
        }
        keys.sort_unstable();
        let index = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        Ok(Lindenbaum { n, with_constants, states, state_index, sigma, keys, index })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn with_constants(&self) -> bool {
        self.with_constants
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Canonical state order shared with the canonical model.
    pub fn states(&self) -> &[LitSet] {
        &self.states
    }

    pub fn state_index(&self, s: LitSet) -> usize {
        self.state_index[&s]
    }

    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    pub fn key(&self, class: usize) -> u64 {
        self.keys[class]
    }

    pub fn class_of_key(&self, key: u64) -> Option<usize> {
        self.index.get(&key).copied()
    }

    /// Positive support set of `f` as a class key.
    pub fn key_of(&self, f: &Formula) -> u64 {
        assert!(f.var_bound() <= self.n, "formula outside the signature");
        self.states.iter().enumerate().filter(|(_, &s)| semantics::supports_pos(s, f)).fold(0, |k, (i, _)| k | 1 << i)
    }

    /// The class of `f`, or `None` when `f` uses constants the algebra lacks.
    pub fn class_of(&self, f: &Formula) -> Option<usize> {
        self.class_of_key(self.key_of(f))
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.index[&(self.keys[a] & self.keys[b])]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.index[&(self.keys[a] | self.keys[b])]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.index[&self.neg_key(self.keys[a])]
    }

    pub fn neg_key(&self, key: u64) -> u64 {
        self.sigma.iter().enumerate().filter(|(_, &j)| key >> j & 1 == 0).fold(0, |k, (i, _)| k | 1 << i)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.keys[a] & !self.keys[b] == 0
    }

    pub fn top(&self) -> Option<usize> {
        let full = if self.states.len() == 64 { u64::MAX } else { (1u64 << self.states.len()) - 1 };
        self.class_of_key(full)
    }

    pub fn bottom(&self) -> Option<usize> {
        self.class_of_key(0)
    }

    /// Irredundant DNF of a class: its minimal supporting states.
    pub fn idnf(&self, class: usize) -> Idnf {
        let key = self.keys[class];
        let mins = self.states.iter().enumerate().filter_map(|(i, &s)| {
            if key >> i & 1 == 0 {
                return None;
            }
            let minimal =
                (0..2 * self.n).filter(|l| s >> l & 1 == 1).all(|l| key >> self.state_index[&(s & !(1 << l))] & 1 == 0);
            minimal.then_some(s)
        });
        Idnf::from_clauses(mins)
    }

    pub fn representative(&self, class: usize) -> Formula {
        self.idnf(class).to_formula()
    }

    /// Class of a single literal.
    pub fn literal_class(&self, var: usize, negated: bool) -> usize {
        self.class_of(&Formula::literal(lit(var, negated))).expect("literals are always classes")
    }
}

/// Enumerates upsets over states sorted by size, deciding from the largest
/// state down. A state may join only once all its one-literal extensions
/// have.
fn upsets(ups: &[u64], total: usize, out: &mut Vec<u64>) {
    fn go(ups: &[u64], i: usize, acc: u64, out: &mut Vec<u64>) {
        if i == 0 {
            out.push(acc);
            return;
        }
        let s = i - 1;
        go(ups, s, acc, out);
        if acc & ups[s] == ups[s] {
            go(ups, s, acc | 1 << s, out);
        }
    }
    go(ups, total, 0, out);
}

/// One representative per class of the Lindenbaum algebra, under the
/// default cap.
pub fn enumerate_lindenbaum(n: usize, with_constants: bool) -> Result<Vec<Formula>, BdError> {
    let lb = Lindenbaum::new(n, with_constants)?;
    Ok((0..lb.len()).map(|i| lb.representative(i)).collect())
}
