use std::collections::BTreeMap;

use crate::{lit_negated, lit_var, BdError, LitSet, MAX_VARS};

/// An ordered, finite list of propositional variable names.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, BdError> {
        let mut sig = Signature::default();
        for n in names {
            let n = n.into();
            let ok_start = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
            if !ok_start || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(BdError::Signature(format!("`{n}` is not an identifier")));
            }
            if n == "T" || n == "F" {
                return Err(BdError::Signature(format!("`{n}` is reserved for a constant")));
            }
            if sig.index.contains_key(&n) {
                return Err(BdError::Signature(format!("duplicate variable `{n}`")));
            }
            sig.index.insert(n.clone(), sig.names.len());
            sig.names.push(n);
        }
        if sig.names.len() > MAX_VARS {
            return Err(BdError::CapExceeded { got: sig.names.len(), cap: MAX_VARS });
        }
        Ok(sig)
    }

    /// `p0, p1, ...`; handy for generated tests.
    pub fn numbered(n: usize) -> Self {
        Self::new((0..n).map(|i| format!("p{i}"))).expect("numbered names are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn lit_name(&self, l: usize) -> String {
        let v = &self.names[lit_var(l)];
        if lit_negated(l) {
            format!("-{v}")
        } else {
            v.clone()
        }
    }

    /// Parses a comma or whitespace separated list like `p, -p, q`.
    pub fn parse_lits(&self, text: &str) -> Result<LitSet, BdError> {
        let mut set = 0;
        for tok in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let (neg, name) = match tok.strip_prefix('-').or_else(|| tok.strip_prefix('¬')) {
                Some(rest) => (true, rest),
                None => (false, tok),
            };
            let v = self.index(name).ok_or_else(|| BdError::UnknownVariable { name: name.to_string(), pos: 0 })?;
            set |= 1 << crate::lit(v, neg);
        }
        Ok(set)
    }

    pub fn fmt_lits(&self, set: LitSet) -> String {
        let parts: Vec<String> = crate::lits(set).map(|l| self.lit_name(l)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}
