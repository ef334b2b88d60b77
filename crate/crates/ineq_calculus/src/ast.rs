use std::fmt;

use bd_core::{Formula, Signature};
use ratlp::Rel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKind {
    /// `w±`, read on probabilistic models.
    Weight,
    /// `b±`, read on DS models.
    Belief,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: i64,
    pub polarity: Polarity,
    pub formula: Formula,
}

/// `sum terms REL bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub kind: AtomKind,
    pub terms: Vec<Term>,
    pub rel: Rel,
    pub bound: i64,
}

impl Atom {
    pub fn new(kind: AtomKind, terms: Vec<Term>, rel: Rel, bound: i64) -> Self {
        Atom { kind, terms, rel, bound }
    }

    /// `coeff * m+(f) REL bound` with a single term.
    pub fn single(kind: AtomKind, coeff: i64, f: Formula, rel: Rel, bound: i64) -> Self {
        Atom::new(kind, vec![Term { coeff, polarity: Polarity::Plus, formula: f }], rel, bound)
    }
}

/// Classical Boolean combination of atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Combo {
    Atom(Atom),
    Not(Box<Combo>),
    And(Box<Combo>, Box<Combo>),
    Or(Box<Combo>, Box<Combo>),
    Implies(Box<Combo>, Box<Combo>),
}

impl Combo {
    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Combo {
        Combo::Not(Box::new(self))
    }

    pub fn and(self, other: Combo) -> Combo {
        Combo::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Combo) -> Combo {
        Combo::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Combo) -> Combo {
        Combo::Implies(Box::new(self), Box::new(other))
    }

    pub fn and_all(items: impl IntoIterator<Item = Combo>) -> Option<Combo> {
        items.into_iter().reduce(Combo::and)
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        fn go<'a>(c: &'a Combo, out: &mut Vec<&'a Atom>) {
            match c {
                Combo::Atom(a) => out.push(a),
                Combo::Not(x) => go(x, out),
                Combo::And(x, y) | Combo::Or(x, y) | Combo::Implies(x, y) => {
                    go(x, out);
                    go(y, out);
                }
            }
        }
        go(self, &mut out);
        out
    }

    /// The common atom kind, `None` for mixed combinations.
    pub fn kind(&self) -> Option<AtomKind> {
        let atoms = self.atoms();
        let k = atoms.first()?.kind;
        atoms.iter().all(|a| a.kind == k).then_some(k)
    }

    /// One past the largest variable index in any argument.
    pub fn var_bound(&self) -> usize {
        self.atoms().iter().flat_map(|a| a.terms.iter()).map(|t| t.formula.var_bound()).max().unwrap_or(0)
    }

    pub fn has_constants(&self) -> bool {
        self.atoms().iter().flat_map(|a| a.terms.iter()).any(|t| t.formula.has_constants())
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> ComboDisplay<'a> {
        ComboDisplay { c: self, sig }
    }
}

pub fn fmt_atom(a: &Atom, sig: &Signature) -> String {
    let mut s = String::new();
    for (i, t) in a.terms.iter().enumerate() {
        let (neg, mag) = (t.coeff < 0, t.coeff.unsigned_abs());
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mag != 1 {
            s.push_str(&format!("{mag}*"));
        }
        let letter = match a.kind {
            AtomKind::Weight => 'w',
            AtomKind::Belief => 'b',
        };
        let pol = match t.polarity {
            Polarity::Plus => '+',
            Polarity::Minus => '-',
        };
        s.push_str(&format!("{letter}{pol}[{}]", t.formula.display(sig)));
    }
    if a.terms.is_empty() {
        s.push('0');
    }
    format!("{s} {} {}", a.rel.symbol(), a.bound)
}

pub struct ComboDisplay<'a> {
    c: &'a Combo,
    sig: &'a Signature,
}

fn prec(c: &Combo) -> u8 {
    match c {
        Combo::Implies(..) => 1,
        Combo::Or(..) => 2,
        Combo::And(..) => 3,
        _ => 4,
    }
}

impl ComboDisplay<'_> {
    fn write(&self, c: &Combo, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |x: &Combo, min: u8, f: &mut fmt::Formatter<'_>| {
            if prec(x) < min {
                f.write_str("(")?;
                self.write(x, f)?;
                f.write_str(")")
            } else {
                self.write(x, f)
            }
        };
        match c {
            Combo::Atom(a) => f.write_str(&fmt_atom(a, self.sig)),
            Combo::Not(x) => {
                f.write_str("not ")?;
                child(x, 4, f)
            }
            Combo::And(x, y) => {
                child(x, 3, f)?;
                f.write_str(" and ")?;
                child(y, 4, f)
            }
            Combo::Or(x, y) => {
                child(x, 2, f)?;
                f.write_str(" or ")?;
                child(y, 3, f)
            }
            // Right-associative.
            Combo::Implies(x, y) => {
                child(x, 2, f)?;
                f.write_str(" -> ")?;
                child(y, 1, f)
            }
        }
    }
}

impl fmt::Display for ComboDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.c, f)
    }
}
