//! Guarded max-min normal forms of piecewise-linear functions and the
//! functional counterpart of Łukasiewicz formulas.

use std::collections::BTreeMap;

use luk_two::Outer;
use num_traits::Zero;
use ratlp::Q;

use crate::{Affine, ClampedAffine, TranslateError};

/// Upper bound on the number of clauses of an intermediate form.
pub const MAX_CLAUSES: usize = 4096;

/// `f > 0` when strict, `f >= 0` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Guard {
    pub f: Affine,
    pub strict: bool,
}

impl Guard {
    pub fn holds(&self, x: &[Q]) -> bool {
        let v = self.f.eval(x);
        if self.strict {
            v > Q::zero()
        } else {
            v >= Q::zero()
        }
    }

    pub fn negate(&self) -> Guard {
        Guard { f: self.f.neg(), strict: !self.strict }
    }

    fn constant_truth(&self) -> Option<bool> {
        self.f.is_constant().then_some(if self.strict { self.f.c > 0 } else { self.f.c >= 0 })
    }
}

/// `min(pieces)` where every guard holds, `-inf` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    pub guards: Vec<Guard>,
    pub pieces: Vec<Affine>,
}

impl Clause {
    fn new(guards: Vec<Guard>, pieces: Vec<Affine>) -> Clause {
        Clause { guards, pieces }
    }

    pub fn eval(&self, x: &[Q]) -> Option<Q> {
        if !self.guards.iter().all(|g| g.holds(x)) {
            return None;
        }
        self.pieces.iter().map(|p| p.eval(x)).min()
    }

    /// Drops trivially true guards and redundant pieces; `None` when a
    /// guard is constantly false.
    fn simplify(self) -> Option<Clause> {
        // Among guards with the same linear part the one with the smallest
        // constant implies the rest; strictness breaks ties.
        let mut guards: BTreeMap<Vec<i64>, (i64, bool)> = BTreeMap::new();
        for g in self.guards {
            match g.constant_truth() {
                Some(true) => continue,
                Some(false) => return None,
                None => {}
            }
            let e = guards.entry(g.f.a.clone()).or_insert((g.f.c, g.strict));
            if (g.f.c, !g.strict) < (e.0, !e.1) {
                *e = (g.f.c, g.strict);
            }
        }
        let mut pieces: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for p in self.pieces {
            let e = pieces.entry(p.a).or_insert(p.c);
            *e = (*e).min(p.c);
        }
        Some(Clause {
            guards: guards.into_iter().map(|(a, (c, strict))| Guard { f: Affine::new(a, c), strict }).collect(),
            pieces: pieces.into_iter().map(|(a, c)| Affine::new(a, c)).collect(),
        })
    }

    /// Pointwise `self <= other`, by a syntactic sufficient condition.
    fn below(&self, other: &Clause) -> bool {
        other.guards.iter().all(|g| self.guards.contains(g))
            && other.pieces.iter().all(|p| self.pieces.iter().any(|q| q.a == p.a && q.c <= p.c))
    }
}

/// `max` over clauses. Every form built from a formula takes values in
/// `[0,1]`, hence always has a clause whose guards hold.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PwlForm {
    dim: usize,
    clauses: Vec<Clause>,
}

impl PwlForm {
    pub fn constant(dim: usize, k: i64) -> Self {
        PwlForm { dim, clauses: vec![Clause::new(vec![], vec![Affine::constant(dim, k)])] }
    }

    pub fn var(dim: usize, i: usize) -> Self {
        PwlForm { dim, clauses: vec![Clause::new(vec![], vec![Affine::var(dim, i)])] }
    }

    pub fn clamped(f: &ClampedAffine) -> Result<Self, TranslateError> {
        let dim = f.0.dim();
        PwlForm { dim, clauses: vec![Clause::new(vec![], vec![f.0.clone()])] }.clamp()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.clauses.iter().filter_map(|c| c.eval(x)).max().expect("some clause applies at every point")
    }

    fn from_clauses(dim: usize, clauses: impl IntoIterator<Item = Clause>) -> Result<Self, TranslateError> {
        let mut kept: Vec<Clause> = Vec::new();
        for c in clauses.into_iter().filter_map(Clause::simplify) {
            if kept.iter().any(|k| c.below(k)) {
                continue;
            }
            kept.retain(|k| !k.below(&c));
            kept.push(c);
            if kept.len() > MAX_CLAUSES {
                return Err(TranslateError::TooLarge(MAX_CLAUSES));
            }
        }
        kept.sort();
        Ok(PwlForm { dim, clauses: kept })
    }

    fn pairwise(&self, o: &PwlForm, join: impl Fn(&Clause, &Clause) -> Clause) -> Result<Self, TranslateError> {
        if self.clauses.len() * o.clauses.len() > MAX_CLAUSES * 8 {
            return Err(TranslateError::TooLarge(MAX_CLAUSES));
        }
        let all = self.clauses.iter().flat_map(|x| o.clauses.iter().map(|y| join(x, y)).collect::<Vec<_>>());
        PwlForm::from_clauses(self.dim, all)
    }

    pub fn max(&self, o: &PwlForm) -> Result<Self, TranslateError> {
        PwlForm::from_clauses(self.dim, self.clauses.iter().chain(&o.clauses).cloned())
    }

    pub fn min(&self, o: &PwlForm) -> Result<Self, TranslateError> {
        self.pairwise(o, |x, y| {
            Clause::new(
                x.guards.iter().chain(&y.guards).cloned().collect(),
                x.pieces.iter().chain(&y.pieces).cloned().collect(),
            )
        })
    }

    /// Pointwise sum; `+` distributes over both `max` and `min`.
    pub fn sum(&self, o: &PwlForm) -> Result<Self, TranslateError> {
        self.pairwise(o, |x, y| {
            Clause::new(
                x.guards.iter().chain(&y.guards).cloned().collect(),
                x.pieces.iter().flat_map(|p| y.pieces.iter().map(move |q| p.add(q))).collect(),
            )
        })
    }

    pub fn shift(&self, d: i64) -> Self {
        let clauses = self
            .clauses
            .iter()
            .map(|c| Clause::new(c.guards.clone(), c.pieces.iter().map(|p| p.shift(d)).collect()))
            .collect();
        PwlForm { dim: self.dim, clauses }
    }

    /// `1 - self`, valid for forms with values in `[0,1]`.
    ///
    /// `1 - max_k C_k = min_k (1 - C_k)`, and `1 - C_k` is the max of
    /// `1 - piece` over the pieces together with the constant `1` guarded
    /// by the negation of each guard. Where a guard of `C_k` fails the true
    /// value is `+inf`; any value `>= 1` is harmless under the outer `min`.
    pub fn complement(&self) -> Result<Self, TranslateError> {
        let mut acc = PwlForm::constant(self.dim, 1);
        for c in &self.clauses {
            let mut options: Vec<Clause> = c.pieces.iter().map(|p| Clause::new(vec![], vec![p.complement()])).collect();
            options.extend(c.guards.iter().map(|g| Clause::new(vec![g.negate()], vec![Affine::constant(self.dim, 1)])));
            acc = acc.min(&PwlForm::from_clauses(self.dim, options)?)?;
        }
        Ok(acc)
    }

    pub fn clamp(&self) -> Result<Self, TranslateError> {
        self.min(&PwlForm::constant(self.dim, 1))?.max(&PwlForm::constant(self.dim, 0))
    }

    /// `1` where `self >= 1`, else `0`; valid for forms bounded by 1.
    pub fn delta(&self) -> Result<Self, TranslateError> {
        let one = Affine::constant(self.dim, 1);
        let hit = self.clauses.iter().map(|c| {
            let mut guards = c.guards.clone();
            guards.extend(c.pieces.iter().map(|p| Guard { f: p.shift(-1), strict: false }));
            Clause::new(guards, vec![one.clone()])
        });
        PwlForm::from_clauses(self.dim, hit.chain([Clause::new(vec![], vec![Affine::constant(self.dim, 0)])]))
    }

    /// `self ∘ sub`, each coordinate replaced by an affine function.
    pub fn compose(&self, sub: &[Affine]) -> Result<Self, TranslateError> {
        let dim = sub.first().map_or(0, Affine::dim);
        let clauses = self.clauses.iter().map(|c| {
            Clause::new(
                c.guards.iter().map(|g| Guard { f: g.f.compose(sub), strict: g.strict }).collect(),
                c.pieces.iter().map(|p| p.compose(sub)).collect(),
            )
        });
        PwlForm::from_clauses(dim, clauses)
    }

    pub fn oplus(&self, o: &PwlForm) -> Result<Self, TranslateError> {
        self.sum(o)?.min(&PwlForm::constant(self.dim, 1))
    }

    pub fn fus(&self, o: &PwlForm) -> Result<Self, TranslateError> {
        self.sum(o)?.shift(-1).max(&PwlForm::constant(self.dim, 0))
    }
}

/// A literal `a` or `-a` of an NNF formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal<A> {
    pub atom: A,
    pub negated: bool,
}

/// The functional counterpart of an `L2` formula in NNF.
///
/// Variables are literals: `x_{2i}` stands for the first coordinate of the
/// i-th atom (in sorted order) and `x_{2i+1}` for the first coordinate of
/// its negation, which is the atom's second coordinate. The form computes
/// the first coordinate of the formula exactly, for every valuation.
///
/// Every `L2` connective except `-` acts on second coordinates by the dual
/// `1 - f(1 - y)` of its first-coordinate function `f`. So the second
/// coordinate of an NNF formula is `1 - P(c(x))`, where `c` swaps each
/// literal with its partner and complements, and `Dt a` is `D(P(x))`
/// meeting `D(P(c(x)))`.
pub fn functional_counterpart<A: Ord + Clone>(alpha: &Outer<A>) -> Result<(PwlForm, Vec<Literal<A>>), TranslateError> {
    if !alpha.is_nnf() {
        return Err(TranslateError::NotNnf);
    }
    let atoms: Vec<A> = alpha.atoms().into_iter().collect();
    let dim = 2 * atoms.len();
    let literals: Vec<Literal<A>> =
        atoms.iter().flat_map(|a| [false, true].map(|negated| Literal { atom: a.clone(), negated })).collect();
    let conflation: Vec<Affine> = (0..dim).map(|i| Affine::var(dim, i ^ 1).complement()).collect();
    let index = |a: &A| atoms.binary_search(a).expect("atom collected above");
    let form = counterpart(alpha, dim, &index, &conflation)?;
    Ok((form, literals))
}

fn counterpart<A>(
    f: &Outer<A>,
    dim: usize,
    index: &impl Fn(&A) -> usize,
    conflation: &[Affine],
) -> Result<PwlForm, TranslateError> {
    use Outer::*;
    let p = |x: &Outer<A>| counterpart(x, dim, index, conflation);
    Ok(match f {
        Atom(a) => PwlForm::var(dim, 2 * index(a)),
        Neg(x) => match &**x {
            Atom(a) => PwlForm::var(dim, 2 * index(a) + 1),
            _ => return Err(TranslateError::NotNnf),
        },
        Top => PwlForm::constant(dim, 1),
        Bot => PwlForm::constant(dim, 0),
        Sim(x) => p(x)?.complement()?,
        Delta(x) => p(x)?.delta()?,
        DeltaTop(x) => {
            let v = p(x)?;
            v.delta()?.min(&v.compose(conflation)?.delta()?)?
        }
        Imp(x, y) => p(x)?.complement()?.oplus(&p(y)?)?,
        And(x, y) => p(x)?.min(&p(y)?)?,
        Or(x, y) => p(x)?.max(&p(y)?)?,
        Fus(x, y) => p(x)?.fus(&p(y)?)?,
        Oplus(x, y) => p(x)?.oplus(&p(y)?)?,
        Ominus(x, y) => p(x)?.fus(&p(y)?.complement()?)?,
        Equiv(x, y) => {
            let (a, b) = (p(x)?, p(y)?);
            let ab = a.complement()?.oplus(&b)?;
            let ba = b.complement()?.oplus(&a)?;
            ab.min(&ba)?
        }
        WImp(..) | SImp(..) | SEquiv(..) => return Err(TranslateError::Unsupported(f.connective().unwrap_or("?"))),
    })
}
