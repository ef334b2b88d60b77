//! Inequality formulas to two-layered formulas and back.

use std::fmt;
use std::str::FromStr;

use bd_core::Formula;
use ineq_calculus::{Atom, AtomKind, Combo, Polarity, Term};
use luk_two::{Logic, Outer};
use ratlp::Rel;
use two_layered::{ModalAtom, Modality, Tag, TwoLayerFormula};

use crate::{functional_counterpart, mcnaughton_clamped, ClampedAffine, Literal, TranslateError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Weight formulas to `Pr` formulas.
    W2L,
    /// `Pr` formulas to weight formulas.
    L2W,
    /// Belief formulas to `B` formulas.
    B2L,
    /// `B` formulas to belief formulas.
    L2B,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::W2L, Direction::L2W, Direction::B2L, Direction::L2B];

    pub fn kind(self) -> AtomKind {
        match self {
            Direction::W2L | Direction::L2W => AtomKind::Weight,
            Direction::B2L | Direction::L2B => AtomKind::Belief,
        }
    }

    pub fn tag(self) -> Tag {
        tag_of(self.kind())
    }

    /// Whether the input is an inequality formula.
    pub fn from_inequalities(self) -> bool {
        matches!(self, Direction::W2L | Direction::B2L)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::W2L => "w2l",
            Direction::L2W => "l2w",
            Direction::B2L => "b2l",
            Direction::L2B => "l2b",
        })
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Direction::ALL
            .into_iter()
            .find(|d| d.to_string() == s)
            .ok_or_else(|| format!("unknown direction `{s}` (expected w2l, l2w, b2l or l2b)"))
    }
}

/// Input or output of [`translate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Ineq(Combo),
    Luk(TwoLayerFormula),
}

pub fn translate(input: &Expr, dir: Direction) -> Result<Expr, TranslateError> {
    match (input, dir.from_inequalities()) {
        (Expr::Ineq(c), true) => {
            if c.kind() != Some(dir.kind()) {
                return Err(TranslateError::Direction { dir, expected: expected(dir) });
            }
            Ok(Expr::Luk(to_two_layer(c)?))
        }
        (Expr::Luk(f), false) => {
            if f.tag() != dir.tag() {
                return Err(TranslateError::Direction { dir, expected: expected(dir) });
            }
            Ok(Expr::Ineq(to_inequality(f)?))
        }
        _ => Err(TranslateError::Direction { dir, expected: expected(dir) }),
    }
}

fn expected(dir: Direction) -> &'static str {
    match dir {
        Direction::W2L => "a weight formula",
        Direction::B2L => "a belief formula",
        Direction::L2W => "a Pr formula",
        Direction::L2B => "a B formula",
    }
}

pub fn tag_of(kind: AtomKind) -> Tag {
    match kind {
        AtomKind::Weight => Tag::PrL2,
        AtomKind::Belief => Tag::BelL2,
    }
}

fn modality_of(kind: AtomKind) -> Modality {
    match kind {
        AtomKind::Weight => Modality::Pr,
        AtomKind::Belief => Modality::B,
    }
}

fn merge_terms(terms: impl IntoIterator<Item = (Formula, i64)>) -> Vec<(Formula, i64)> {
    let mut out: Vec<(Formula, i64)> = Vec::new();
    for (f, a) in terms {
        match out.iter_mut().find(|(g, _)| *g == f) {
            Some((_, b)) => *b += a,
            None => out.push((f, a)),
        }
    }
    out.retain(|(_, a)| *a != 0);
    out
}

/// `Dt β(M φ_1, …, M φ_n)` with `f_β = (sum a_i x_i - c + 1)#`.
fn at_least(m: Modality, terms: &[(Formula, i64)], c: i64) -> Outer<ModalAtom> {
    let atoms: Vec<ModalAtom> = terms.iter().map(|(f, _)| ModalAtom::new(m, f.clone())).collect();
    let f = ClampedAffine::new(terms.iter().map(|(_, a)| *a).collect(), 1 - c);
    mcnaughton_clamped(&f, &atoms).delta_top()
}

fn atom_to_luk(a: &Atom) -> Result<Outer<ModalAtom>, TranslateError> {
    if a.terms.iter().any(|t| t.polarity == Polarity::Minus) {
        return Err(TranslateError::NotNormalized(match a.kind {
            AtomKind::Weight => 'w',
            AtomKind::Belief => 'b',
        }));
    }
    let m = modality_of(a.kind);
    let t = merge_terms(a.terms.iter().map(|t| (t.formula.clone(), t.coeff)));
    let neg: Vec<(Formula, i64)> = t.iter().map(|(f, a)| (f.clone(), -a)).collect();
    let (c, nc) = (a.bound, -a.bound);
    Ok(match a.rel {
        Rel::Ge => at_least(m, &t, c),
        Rel::Le => at_least(m, &neg, nc),
        Rel::Gt => at_least(m, &neg, nc).sim(),
        Rel::Lt => at_least(m, &t, c).sim(),
        Rel::Eq => at_least(m, &t, c).and(at_least(m, &neg, nc)),
    })
}

fn combo_to_luk(c: &Combo) -> Result<Outer<ModalAtom>, TranslateError> {
    Ok(match c {
        Combo::Atom(a) => atom_to_luk(a)?,
        Combo::Not(x) => combo_to_luk(x)?.sim(),
        Combo::And(x, y) => combo_to_luk(x)?.and(combo_to_luk(y)?),
        Combo::Or(x, y) => combo_to_luk(x)?.or(combo_to_luk(y)?),
        Combo::Implies(x, y) => combo_to_luk(x)?.imp(combo_to_luk(y)?),
    })
}

/// The `•` translation. Every atom `t >= c` becomes a `Dt`-guarded
/// formula, the other relations reduce to it classically, and the Boolean
/// connectives become `~`, `&`, `|`, `->`, which act classically on the
/// values `(1,0)` and `(0,1)`.
pub fn to_two_layer(c: &Combo) -> Result<TwoLayerFormula, TranslateError> {
    let kind = c.kind().ok_or(ineq_calculus::IneqError::MixedKinds)?;
    Ok(TwoLayerFormula::new(tag_of(kind), combo_to_luk(c)?)?)
}

fn constant_atom(kind: AtomKind, truth: bool) -> Combo {
    Combo::Atom(Atom::new(kind, vec![], Rel::Ge, if truth { 0 } else { 1 }))
}

/// The `°` translation: `α°` holds in a model iff the first coordinate of
/// `α` is 1 there.
///
/// The NNF of `α` has the functional counterpart `max_k min_j` over clauses;
/// a clause reaches 1 iff each of its guards holds and each piece is at
/// least 1. With `f = sum a_i x_i + c`, a piece gives
/// `sum a_i m+(φ_i) >= 1 - c`, a strict guard gives `sum a_i m+(φ_i) > -c`
/// and a non-strict one `>= -c`, where `m` is `w` or `b` and the literal
/// `-M φ` reads as `M -φ`.
pub fn to_inequality(f: &TwoLayerFormula) -> Result<Combo, TranslateError> {
    let kind = match f.tag() {
        Tag::PrL2 => AtomKind::Weight,
        Tag::BelL2 => AtomKind::Belief,
        t => return Err(TranslateError::Tag(t)),
    };
    let alpha = f.outer().nnf(Logic::L2);
    let (form, lits) = functional_counterpart(&alpha)?;
    let arg = |l: &Literal<ModalAtom>| {
        if l.negated {
            l.atom.inner.clone().not()
        } else {
            l.atom.inner.clone()
        }
    };
    // `None` for a condition that holds everywhere, `Some(None)` for one
    // that never holds.
    let condition = |coeffs: &[i64], rel: Rel, bound: i64| -> Option<Option<Combo>> {
        let terms = merge_terms(lits.iter().zip(coeffs).map(|(l, &a)| (arg(l), a)));
        if terms.is_empty() {
            let holds = rel.holds(&ratlp::qi(0), &ratlp::qi(bound));
            return if holds { None } else { Some(None) };
        }
        let terms =
            terms.into_iter().map(|(formula, coeff)| Term { coeff, polarity: Polarity::Plus, formula }).collect();
        Some(Some(Combo::Atom(Atom::new(kind, terms, rel, bound))))
    };
    let mut disjuncts = Vec::new();
    'clauses: for cl in form.clauses() {
        let mut conj = Vec::new();
        let conds = cl
            .pieces
            .iter()
            .map(|p| (&p.a, Rel::Ge, 1 - p.c))
            .chain(cl.guards.iter().map(|g| (&g.f.a, if g.strict { Rel::Gt } else { Rel::Ge }, -g.f.c)));
        for (a, rel, bound) in conds {
            match condition(a, rel, bound) {
                None => {}
                Some(None) => continue 'clauses,
                Some(Some(c)) => conj.push(c),
            }
        }
        match Combo::and_all(conj) {
            None => return Ok(constant_atom(kind, true)),
            Some(c) => disjuncts.push(c),
        }
    }
    Ok(disjuncts.into_iter().reduce(Combo::or).unwrap_or_else(|| constant_atom(kind, false)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use bd_core::Signature;
    use ineq_calculus::parse_combo;

    fn sig() -> Signature {
        Signature::new(["p", "q"]).unwrap()
    }

    #[test]
    fn single_weight_atom() {
        let c = parse_combo("w+(p) >= 1", &sig()).unwrap();
        let f = to_two_layer(&c).unwrap();
        assert_eq!(f.render(&sig()), "Dt Pr[p]");
        assert_eq!(f.tag(), Tag::PrL2);
    }

    #[test]
    fn conjunction_and_relations() {
        let c = parse_combo("w+(p) >= 1 and w+(q) >= 1", &sig()).unwrap();
        assert_eq!(to_two_layer(&c).unwrap().render(&sig()), "Dt Pr[p] & Dt Pr[q]");
        let c = parse_combo("b+[p] < 1", &sig()).unwrap();
        let f = to_two_layer(&c).unwrap();
        assert_eq!(f.tag(), Tag::BelL2);
        assert_eq!(f.render(&sig()), "~Dt B[p]");
    }

    #[test]
    fn rejects_minus_terms() {
        let c = parse_combo("w-(p) >= 1", &sig()).unwrap();
        assert_eq!(to_two_layer(&c).unwrap_err(), TranslateError::NotNormalized('w'));
    }

    #[test]
    fn direction_checks() {
        let c = parse_combo("w+(p) >= 1", &sig()).unwrap();
        assert!(translate(&Expr::Ineq(c.clone()), Direction::B2L).is_err());
        assert!(translate(&Expr::Ineq(c), Direction::W2L).is_ok());
        assert_eq!("l2b".parse::<Direction>().unwrap(), Direction::L2B);
    }
}
