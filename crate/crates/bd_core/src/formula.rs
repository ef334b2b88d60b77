use std::fmt;

use crate::{lit, lits, LitSet, Signature};

/// Inner-language formula. Variables are indices into a [`Signature`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(usize),
    Top,
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(v: usize) -> Self {
        Formula::Var(v)
    }

    pub fn literal(l: usize) -> Self {
        let v = Formula::Var(crate::lit_var(l));
        if crate::lit_negated(l) {
            v.not()
        } else {
            v
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }

    /// Left-nested conjunction; `Top` when empty.
    pub fn and_all(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; `Bot` when empty.
    pub fn or_all(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::Bot)
    }

    /// Conjunction of the literals of a set, in literal order.
    pub fn clause(set: LitSet) -> Self {
        Formula::and_all(lits(set).map(Formula::literal))
    }

    pub fn has_constants(&self) -> bool {
        match self {
            Formula::Var(_) => false,
            Formula::Top | Formula::Bot => true,
            Formula::Not(a) => a.has_constants(),
            Formula::And(a, b) | Formula::Or(a, b) => a.has_constants() || b.has_constants(),
        }
    }

    /// One past the largest variable index that occurs.
    pub fn var_bound(&self) -> usize {
        match self {
            Formula::Var(v) => v + 1,
            Formula::Top | Formula::Bot => 0,
            Formula::Not(a) => a.var_bound(),
            Formula::And(a, b) | Formula::Or(a, b) => a.var_bound().max(b.var_bound()),
        }
    }

    /// Variables occurring in the formula, as a bitmask over variable indices.
    pub fn vars(&self) -> u64 {
        match self {
            Formula::Var(v) => 1 << v,
            Formula::Top | Formula::Bot => 0,
            Formula::Not(a) => a.vars(),
            Formula::And(a, b) | Formula::Or(a, b) => a.vars() | b.vars(),
        }
    }

    /// Literals occurring in the negation normal form of the formula.
    pub fn nnf_lits(&self) -> LitSet {
        fn go(f: &Formula, neg: bool) -> LitSet {
            match f {
                Formula::Var(v) => 1 << lit(*v, neg),
                Formula::Top | Formula::Bot => 0,
                Formula::Not(a) => go(a, !neg),
                Formula::And(a, b) | Formula::Or(a, b) => go(a, neg) | go(b, neg),
            }
        }
        go(self, false)
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Top | Formula::Bot => 1,
            Formula::Not(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Renames variables through `map`.
    pub fn map_vars(&self, map: &impl Fn(usize) -> usize) -> Formula {
        match self {
            Formula::Var(v) => Formula::Var(map(*v)),
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::Not(a) => a.map_vars(map).not(),
            Formula::And(a, b) => a.map_vars(map).and(b.map_vars(map)),
            Formula::Or(a, b) => a.map_vars(map).or(b.map_vars(map)),
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> Display<'a> {
        Display { f: self, sig: Some(sig) }
    }

    /// ASCII rendering with minimal parentheses.
    pub fn to_string_with(&self, sig: &Signature) -> String {
        self.display(sig).to_string()
    }
}

pub struct Display<'a> {
    f: &'a Formula,
    sig: Option<&'a Signature>,
}

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        _ => 3,
    }
}

impl Display<'_> {
    fn write(&self, f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |c: &Formula, min: u8, out: &mut fmt::Formatter<'_>| {
            if prec(c) < min {
                out.write_str("(")?;
                self.write(c, out)?;
                out.write_str(")")
            } else {
                self.write(c, out)
            }
        };
        match f {
            Formula::Var(v) => match self.sig {
                Some(s) if *v < s.len() => out.write_str(s.name(*v)),
                _ => write!(out, "p{v}"),
            },
            Formula::Top => out.write_str("T"),
            Formula::Bot => out.write_str("F"),
            Formula::Not(a) => {
                out.write_str("-")?;
                child(a, 3, out)
            }
            // Operators parse left-associatively, so a right operand of the
            // same operator keeps its parentheses.
            Formula::And(a, b) => {
                child(a, 2, out)?;
                out.write_str(" & ")?;
                child(b, 3, out)
            }
            Formula::Or(a, b) => {
                child(a, 1, out)?;
                out.write_str(" | ")?;
                child(b, 2, out)
            }
        }
    }
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.f, out)
    }
}

impl fmt::Display for Formula {
    /// Renders variables as `p0, p1, ...`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display { f: self, sig: None }.write(self, out)
    }
}
