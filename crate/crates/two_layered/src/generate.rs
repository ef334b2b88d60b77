//! The n-monotonicity formulas and their linear-term counterparts.

use bd_core::Formula;
use luk_two::Outer;
use models::{measure_of, Kind, Sign, Uncertain};
use num_traits::{One, Zero};
use ratlp::Q;

use crate::{b, pl, ModalAtom, Modality, Tag, TwoLayerError, TwoLayerFormula};

pub const MAX_N: usize = 5;

fn check_n(n: usize) -> Result<(), TwoLayerError> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(TwoLayerError::OutOfRange(n))
    }
}

fn relativize(f: &Outer<ModalAtom>, by: &Formula, conj: bool) -> Outer<ModalAtom> {
    f.map_atoms(&|a: &ModalAtom| {
        let inner = if conj { a.inner.clone().and(by.clone()) } else { a.inner.clone().or(by.clone()) };
        ModalAtom::new(a.modality, inner)
    })
}

/// `γ₁ = B p₁`, `γₙ₊₁ = γₙ ⊕ (B pₙ₊₁ ⊖ γₙ[Bψ : B(ψ ∧ pₙ₊₁)])`, with `pᵢ`
/// the variable `i - 1`.
pub fn gamma(n: usize) -> Result<Outer<ModalAtom>, TwoLayerError> {
    check_n(n)?;
    let mut g = b(Formula::Var(0));
    for i in 1..n {
        let p = Formula::Var(i);
        let rel = relativize(&g, &p, true);
        g = g.oplus(b(p).ominus(rel));
    }
    Ok(g)
}

/// `σ₁ = Pl p₁`, `σₙ₊₁ = (σₙ ⊕ ~σₙ[Plψ : Pl(ψ ∨ pₙ₊₁)]) ⊖ ~Pl pₙ₊₁`.
pub fn sigma(n: usize) -> Result<Outer<ModalAtom>, TwoLayerError> {
    check_n(n)?;
    let mut s = pl(Formula::Var(0));
    for i in 1..n {
        let p = Formula::Var(i);
        let rel = relativize(&s, &p, false);
        s = s.oplus(rel.sim()).ominus(pl(p).sim());
    }
    Ok(s)
}

fn disjunction(n: usize) -> Formula {
    Formula::or_all((0..n).map(Formula::Var))
}

fn conjunction(n: usize) -> Formula {
    Formula::and_all((0..n).map(Formula::Var))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sequence {
    /// `αₙ = γₙ → B(p₁ ∨ … ∨ pₙ)`, with `⇝` under NŁ.
    BelGamma,
    /// `βₙ = Pl(p₁ ∧ … ∧ pₙ) ⇝ σₙ`, NŁ only.
    PlSigma,
}

/// The n-th belief (or plausibility) axiom of `tag`.
pub fn monotonicity_axiom(tag: Tag, seq: Sequence, n: usize) -> Result<TwoLayerFormula, TwoLayerError> {
    let f = match (seq, tag) {
        (Sequence::BelGamma, Tag::BelL2) => gamma(n)?.imp(b(disjunction(n))),
        (Sequence::BelGamma, Tag::BelNL) => gamma(n)?.wimp(b(disjunction(n))),
        (Sequence::PlSigma, Tag::BelNL) => pl(conjunction(n)).wimp(sigma(n)?),
        (Sequence::BelGamma, _) => return Err(TwoLayerError::Modality { modality: Modality::B, tag }),
        (Sequence::PlSigma, _) => return Err(TwoLayerError::Modality { modality: Modality::Pl, tag }),
    };
    TwoLayerFormula::new(tag, f)
}

/// Which measure and extension the inequality terms read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermKind {
    /// `tₙ` over `bel(|ψ|+)`, relativizing by conjunction.
    T,
    /// `sₙ` over `bel(|ψ|-)`. The dual join of `ψ` and `a` is `ψ ∧ a`,
    /// whose negative extension is the union.
    S,
    /// The plausibility analogue of `sₙ` over `pl(|ψ|+)`, relativizing by
    /// disjunction.
    P,
}

impl TermKind {
    fn measure(self) -> (Kind, Sign) {
        match self {
            TermKind::T => (Kind::Bel, Sign::Pos),
            TermKind::S => (Kind::Bel, Sign::Neg),
            TermKind::P => (Kind::Pl, Sign::Pos),
        }
    }
}

/// Unclipped linear terms over measures of inner formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinTerm {
    Measure(Formula),
    Add(Box<LinTerm>, Box<LinTerm>),
    Sub(Box<LinTerm>, Box<LinTerm>),
    /// `1 - x`.
    Complement(Box<LinTerm>),
}

impl LinTerm {
    fn add(self, o: LinTerm) -> LinTerm {
        LinTerm::Add(Box::new(self), Box::new(o))
    }

    fn sub(self, o: LinTerm) -> LinTerm {
        LinTerm::Sub(Box::new(self), Box::new(o))
    }

    fn complement(self) -> LinTerm {
        LinTerm::Complement(Box::new(self))
    }

    fn map_formulas(&self, f: &impl Fn(&Formula) -> Formula) -> LinTerm {
        match self {
            LinTerm::Measure(x) => LinTerm::Measure(f(x)),
            LinTerm::Add(x, y) => x.map_formulas(f).add(y.map_formulas(f)),
            LinTerm::Sub(x, y) => x.map_formulas(f).sub(y.map_formulas(f)),
            LinTerm::Complement(x) => x.map_formulas(f).complement(),
        }
    }

    /// Exact value with integer arithmetic, no truncation.
    pub fn eval<M: Uncertain + ?Sized>(&self, m: &M, kind: TermKind) -> Result<Q, TwoLayerError> {
        Ok(self.eval_nodes(m, kind, &mut |_| {})?)
    }

    /// The first node whose value leaves `[0,1]`, if any.
    pub fn escaping_node<M: Uncertain + ?Sized>(&self, m: &M, kind: TermKind) -> Result<Option<Q>, TwoLayerError> {
        let mut bad = None;
        self.eval_nodes(m, kind, &mut |v| {
            if bad.is_none() && (*v < Q::zero() || *v > Q::one()) {
                bad = Some(v.clone());
            }
        })?;
        Ok(bad)
    }

    fn eval_nodes<M: Uncertain + ?Sized>(
        &self,
        m: &M,
        kind: TermKind,
        visit: &mut impl FnMut(&Q),
    ) -> Result<Q, models::ModelError> {
        let v = match self {
            LinTerm::Measure(f) => {
                let (k, s) = kind.measure();
                measure_of(m, f, k, s)?
            }
            LinTerm::Add(x, y) => x.eval_nodes(m, kind, visit)? + y.eval_nodes(m, kind, visit)?,
            LinTerm::Sub(x, y) => x.eval_nodes(m, kind, visit)? - y.eval_nodes(m, kind, visit)?,
            LinTerm::Complement(x) => Q::one() - x.eval_nodes(m, kind, visit)?,
        };
        visit(&v);
        Ok(v)
    }
}

/// `t₁ = bel⁺(a₁)`, `tₙ₊₁ = tₙ + (bel⁺(aₙ₊₁) - tₙ[ψ : ψ ∧ aₙ₊₁])`;
/// `s₁ = bel⁻(a₁)`, `sₙ₊₁ = (sₙ + 1 - sₙ[ψ : ψ ∨ᵒᵖ aₙ₊₁]) - (1 - bel⁻(aₙ₊₁))`,
/// and the same shape as `sₙ` for plausibility.
pub fn inequality_terms(kind: TermKind, n: usize) -> Result<LinTerm, TwoLayerError> {
    check_n(n)?;
    let mut t = LinTerm::Measure(Formula::Var(0));
    for i in 1..n {
        let a = Formula::Var(i);
        let conj = kind != TermKind::P;
        let rel = t.map_formulas(&|f| if conj { f.clone().and(a.clone()) } else { f.clone().or(a.clone()) });
        let m = LinTerm::Measure(a);
        t = match kind {
            TermKind::T => t.add(m.sub(rel)),
            TermKind::S | TermKind::P => t.add(rel.complement()).sub(m.complement()),
        };
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bd_core::Signature;

    fn show(f: &Outer<ModalAtom>) -> String {
        let sig = Signature::new(["p1", "p2", "p3"]).unwrap();
        f.render(&|a: &ModalAtom| a.render(&sig))
    }

    #[test]
    fn first_two_axioms() {
        let sig = Signature::new(["p1", "p2"]).unwrap();
        let a1 = monotonicity_axiom(Tag::BelL2, Sequence::BelGamma, 1).unwrap();
        assert_eq!(a1.render(&sig), "B[p1] -> B[p1]");
        let a2 = monotonicity_axiom(Tag::BelL2, Sequence::BelGamma, 2).unwrap();
        assert_eq!(a2.render(&sig), "B[p1] (+) (B[p2] (-) B[p1 & p2]) -> B[p1 | p2]");
        assert_eq!(show(&sigma(2).unwrap()), "Pl[p1] (+) ~Pl[p1 | p2] (-) ~Pl[p2]");
        let b2 = monotonicity_axiom(Tag::BelNL, Sequence::PlSigma, 2).unwrap();
        assert_eq!(b2.render(&sig), "Pl[p1 & p2] ~> Pl[p1] (+) ~Pl[p1 | p2] (-) ~Pl[p2]");
    }

    #[test]
    fn gamma_three_substitutes_every_atom() {
        assert_eq!(
            show(&gamma(3).unwrap()),
            "B[p1] (+) (B[p2] (-) B[p1 & p2]) (+) (B[p3] (-) (B[p1 & p3] (+) (B[p2 & p3] (-) B[p1 & p2 & p3])))"
        );
    }

    #[test]
    fn range_and_tags() {
        assert_eq!(gamma(0), Err(TwoLayerError::OutOfRange(0)));
        assert_eq!(inequality_terms(TermKind::T, 6), Err(TwoLayerError::OutOfRange(6)));
        assert!(monotonicity_axiom(Tag::PrL2, Sequence::BelGamma, 2).is_err());
        assert!(monotonicity_axiom(Tag::BelL2, Sequence::PlSigma, 2).is_err());
        assert!(gamma(5).is_ok());
    }

    #[test]
    fn first_term_is_a_single_measure() {
        assert_eq!(inequality_terms(TermKind::T, 1).unwrap(), LinTerm::Measure(Formula::Var(0)));
    }
}
