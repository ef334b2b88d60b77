use bd_core::{canonical_states, lit, semantics, Formula, LitSet};

use crate::ModelError;

/// A set of states as a bitmask over state indices.
pub type StateSet = u64;

/// Largest signature for a canonical model (`4^3 = 64` states).
pub const CANONICAL_CAP: usize = 3;

/// A frame `(W, v+, v-)`. `vplus[p]` and `vminus[p]` are the states that
/// positively and negatively support variable `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BDModel {
    states: Vec<String>,
    vplus: Vec<StateSet>,
    vminus: Vec<StateSet>,
    /// Literal set of each state, cached.
    lits: Vec<LitSet>,
    canonical: bool,
}

impl BDModel {
    pub fn new(states: Vec<String>, vplus: Vec<StateSet>, vminus: Vec<StateSet>) -> Result<Self, ModelError> {
        if states.is_empty() {
            return Err(ModelError::NoStates);
        }
        if states.len() > 64 {
            return Err(ModelError::TooManyStates(states.len()));
        }
        if vplus.len() != vminus.len() {
            return Err(ModelError::Arity { expected: vplus.len(), got: vminus.len() });
        }
        let full = full_set(states.len());
        let vplus: Vec<StateSet> = vplus.into_iter().map(|s| s & full).collect();
        let vminus: Vec<StateSet> = vminus.into_iter().map(|s| s & full).collect();
        let lits = (0..states.len())
            .map(|w| {
                (0..vplus.len()).fold(0, |acc, v| {
                    acc | ((vplus[v] >> w & 1) << lit(v, false)) | ((vminus[v] >> w & 1) << lit(v, true))
                })
            })
            .collect();
        Ok(BDModel { states, vplus, vminus, lits, canonical: false })
    }

    /// States are all literal sets in canonical order; `p` is positively
    /// supported at `s` iff `p ∈ s`, negatively iff `-p ∈ s`.
    pub fn canonical(n: usize) -> Result<Self, ModelError> {
        if n > CANONICAL_CAP {
            return Err(ModelError::CapExceeded { got: n, cap: CANONICAL_CAP });
        }
        let states = canonical_states(n);
        let names = (0..states.len()).map(|i| format!("s{i}")).collect();
        let pick =
            |l: usize| states.iter().enumerate().filter(|(_, &s)| s >> l & 1 == 1).fold(0, |a, (i, _)| a | 1 << i);
        let vplus = (0..n).map(|v| pick(lit(v, false))).collect();
        let vminus = (0..n).map(|v| pick(lit(v, true))).collect();
        let mut m = BDModel::new(names, vplus, vminus)?;
        m.canonical = true;
        Ok(m)
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_vars(&self) -> usize {
        self.vplus.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn vplus(&self) -> &[StateSet] {
        &self.vplus
    }

    pub fn vminus(&self) -> &[StateSet] {
        &self.vminus
    }

    /// Literals supported at state `w`.
    pub fn state_lits(&self, w: usize) -> LitSet {
        self.lits[w]
    }

    pub fn all_states(&self) -> StateSet {
        full_set(self.states.len())
    }

    fn check_vars(&self, f: &Formula) {
        assert!(f.var_bound() <= self.num_vars(), "formula uses variables outside the model's signature");
    }

    /// `|f|+`, the states positively supporting `f`.
    pub fn ext_pos(&self, f: &Formula) -> StateSet {
        self.check_vars(f);
        self.lits.iter().enumerate().filter(|(_, &s)| semantics::supports_pos(s, f)).fold(0, |a, (i, _)| a | 1 << i)
    }

    /// `|f|-`, the states negatively supporting `f`.
    pub fn ext_neg(&self, f: &Formula) -> StateSet {
        self.check_vars(f);
        self.lits.iter().enumerate().filter(|(_, &s)| semantics::supports_neg(s, f)).fold(0, |a, (i, _)| a | 1 << i)
    }

    /// Image of a state set under the canonical involution behind De Morgan
    /// negation. Only defined on canonical models.
    pub fn sigma_image(&self, set: StateSet) -> Result<StateSet, ModelError> {
        if !self.canonical {
            return Err(ModelError::NotCanonical);
        }
        let n = self.num_vars();
        let index: std::collections::HashMap<LitSet, usize> =
            self.lits.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        Ok((0..self.num_states())
            .filter(|w| set >> w & 1 == 1)
            .fold(0, |a, w| a | 1 << index[&bd_core::sigma(self.lits[w], n)]))
    }

    pub fn fmt_set(&self, set: StateSet) -> String {
        let names: Vec<&str> =
            (0..self.num_states()).filter(|w| set >> w & 1 == 1).map(|w| self.states[w].as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }
}

pub(crate) fn full_set(n: usize) -> StateSet {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bd_core::{parse_bd, Signature};

    #[test]
    fn canonical_model_over_one_variable() {
        let m = BDModel::canonical(1).unwrap();
        assert_eq!(m.num_states(), 4);
        let lits: Vec<LitSet> = (0..4).map(|w| m.state_lits(w)).collect();
        assert_eq!(lits, vec![0b00, 0b01, 0b10, 0b11]);
        let sig = Signature::new(["p"]).unwrap();
        let p = parse_bd("p", &sig, false).unwrap();
        assert_eq!(m.fmt_set(m.ext_pos(&p)), "{s1, s3}");
        assert_eq!(m.fmt_set(m.ext_neg(&p)), "{s2, s3}");
    }

    #[test]
    fn cap_and_shape_errors() {
        assert!(matches!(BDModel::canonical(4), Err(ModelError::CapExceeded { .. })));
        assert_eq!(BDModel::new(vec![], vec![], vec![]), Err(ModelError::NoStates));
        assert!(matches!(BDModel::new(vec!["w".into()], vec![1], vec![]), Err(ModelError::Arity { .. })));
    }

    #[test]
    fn sigma_image_is_an_involution() {
        let m = BDModel::canonical(2).unwrap();
        for set in [0u64, 1, 0b1011_0000_1111, u64::from(u16::MAX)] {
            assert_eq!(m.sigma_image(m.sigma_image(set).unwrap()).unwrap(), set);
        }
    }
}
