//! Negation, disjunctive, conjunctive and irredundant normal forms, and the
//! X-full disjunctive normal form.

use std::fmt;

use itertools::Itertools;

use crate::{canonical_cmp, lit, lits, semantics, swap_polarity, BdError, Formula, LitSet, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormalForm {
    Nnf,
    Dnf,
    Cnf,
    Idnf,
}

impl std::str::FromStr for NormalForm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "nnf" => Ok(NormalForm::Nnf),
            "dnf" => Ok(NormalForm::Dnf),
            "cnf" => Ok(NormalForm::Cnf),
            "idnf" => Ok(NormalForm::Idnf),
            other => Err(format!("unknown normal form `{other}`")),
        }
    }
}

pub fn normalize(f: &Formula, form: NormalForm) -> Formula {
    match form {
        NormalForm::Nnf => nnf(f),
        NormalForm::Dnf => clauses_to_dnf(&dnf_clauses(f)),
        NormalForm::Cnf => {
            let cls = cnf_clauses(f);
            Formula::and_all(cls.iter().map(|&c| Formula::or_all(lits(c).map(Formula::literal))))
        }
        NormalForm::Idnf => Idnf::of(f).to_formula(),
    }
}

/// Pushes negations onto variables; `-T` and `-F` become `F` and `T`.
pub fn nnf(f: &Formula) -> Formula {
    fn go(f: &Formula, neg: bool) -> Formula {
        match (f, neg) {
            (Formula::Var(v), false) => Formula::Var(*v),
            (Formula::Var(v), true) => Formula::Var(*v).not(),
            (Formula::Top, false) | (Formula::Bot, true) => Formula::Top,
            (Formula::Top, true) | (Formula::Bot, false) => Formula::Bot,
            (Formula::Not(a), _) => go(a, !neg),
            (Formula::And(a, b), false) | (Formula::Or(a, b), true) => go(a, neg).and(go(b, neg)),
            (Formula::Or(a, b), false) | (Formula::And(a, b), true) => go(a, neg).or(go(b, neg)),
        }
    }
    go(f, false)
}

fn clauses_to_dnf(cls: &[LitSet]) -> Formula {
    Formula::or_all(cls.iter().map(|&c| Formula::clause(c)))
}

fn sort_clauses(mut cls: Vec<LitSet>) -> Vec<LitSet> {
    cls.sort_by(|a, b| canonical_cmp(*a, *b));
    cls.dedup();
    cls
}

/// Conjunctive clauses of the DNF obtained by distribution. Constants are
/// absorbed: the empty clause stands for `T`, no clauses for `F`. Clauses are
/// not minimized.
pub fn dnf_clauses(f: &Formula) -> Vec<LitSet> {
    fn go(f: &Formula, neg: bool) -> Vec<LitSet> {
        match (f, neg) {
            (Formula::Var(v), _) => vec![1 << lit(*v, neg)],
            (Formula::Top, false) | (Formula::Bot, true) => vec![0],
            (Formula::Top, true) | (Formula::Bot, false) => vec![],
            (Formula::Not(a), _) => go(a, !neg),
            (Formula::Or(a, b), false) | (Formula::And(a, b), true) => {
                let mut x = go(a, neg);
                x.extend(go(b, neg));
                x
            }
            (Formula::And(a, b), false) | (Formula::Or(a, b), true) => {
                let (x, y) = (go(a, neg), go(b, neg));
                x.iter().cartesian_product(&y).map(|(c, d)| c | d).collect()
            }
        }
    }
    sort_clauses(go(f, false))
}

/// Disjunctive clauses of the CNF; the empty clause stands for `F`, no
/// clauses for `T`.
pub fn cnf_clauses(f: &Formula) -> Vec<LitSet> {
    // The CNF of f is the dual of the DNF of its negation.
    sort_clauses(dnf_clauses(&f.clone().not()).into_iter().map(swap_polarity).collect())
}

/// Irredundant DNF: an antichain of conjunctive clauses, no clause
/// containing another. Two formulas are BD-equivalent iff their `Idnf`s are
/// equal. `T` is the single empty clause, `F` the empty antichain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Idnf {
    clauses: Vec<LitSet>,
}

impl Idnf {
    pub fn top() -> Self {
        Idnf { clauses: vec![0] }
    }

    pub fn bottom() -> Self {
        Idnf { clauses: vec![] }
    }

    pub fn literal(l: usize) -> Self {
        Idnf { clauses: vec![1 << l] }
    }

    /// Minimizes and sorts an arbitrary clause list.
    pub fn from_clauses(cls: impl IntoIterator<Item = LitSet>) -> Self {
        let mut cls = sort_clauses(cls.into_iter().collect());
        // Sorted by size, so a clause can only be absorbed by an earlier one.
        let mut kept: Vec<LitSet> = Vec::with_capacity(cls.len());
        for c in cls.drain(..) {
            if !kept.iter().any(|k| k & c == *k) {
                kept.push(c);
            }
        }
        Idnf { clauses: kept }
    }

    pub fn of(f: &Formula) -> Self {
        Idnf::from_clauses(dnf_clauses_min(f))
    }

    pub fn clauses(&self) -> &[LitSet] {
        &self.clauses
    }

    pub fn is_top(&self) -> bool {
        self.clauses == [0]
    }

    pub fn is_bottom(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn meet(&self, other: &Idnf) -> Idnf {
        Idnf::from_clauses(self.clauses.iter().cartesian_product(&other.clauses).map(|(a, b)| a | b))
    }

    pub fn join(&self, other: &Idnf) -> Idnf {
        Idnf::from_clauses(self.clauses.iter().chain(&other.clauses).copied())
    }

    /// De Morgan negation: the negated clauses form a CNF, distributed back.
    pub fn neg(&self) -> Idnf {
        self.clauses.iter().fold(Idnf::top(), |acc, &c| {
            let d = Idnf::from_clauses(lits(swap_polarity(c)).map(|l| 1 << l));
            acc.meet(&d)
        })
    }

    /// Lattice order, which coincides with BD entailment.
    pub fn leq(&self, other: &Idnf) -> bool {
        self.clauses.iter().all(|c| other.clauses.iter().any(|d| d & c == *d))
    }

    pub fn lits(&self) -> LitSet {
        self.clauses.iter().fold(0, |a, c| a | c)
    }

    pub fn to_formula(&self) -> Formula {
        clauses_to_dnf(&self.clauses)
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Idnf, &'a Signature);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0.to_formula().display(self.1))
            }
        }
        D(self, sig)
    }
}

/// DNF clauses with absorption applied at every step, which keeps the
/// intermediate lists small.
fn dnf_clauses_min(f: &Formula) -> Vec<LitSet> {
    fn go(f: &Formula, neg: bool) -> Idnf {
        match (f, neg) {
            (Formula::Var(v), _) => Idnf::literal(lit(*v, neg)),
            (Formula::Top, false) | (Formula::Bot, true) => Idnf::top(),
            (Formula::Top, true) | (Formula::Bot, false) => Idnf::bottom(),
            (Formula::Not(a), _) => go(a, !neg),
            (Formula::Or(a, b), false) | (Formula::And(a, b), true) => go(a, neg).join(&go(b, neg)),
            (Formula::And(a, b), false) | (Formula::Or(a, b), true) => go(a, neg).meet(&go(b, neg)),
        }
    }
    go(f, false).clauses
}

/// A clause of an X-full DNF: a non-empty literal set, or a lone constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConjClause {
    Bot,
    Top,
    Lits(LitSet),
}

impl ConjClause {
    pub fn to_formula(self) -> Formula {
        match self {
            ConjClause::Bot => Formula::Bot,
            ConjClause::Top => Formula::Top,
            ConjClause::Lits(c) => Formula::clause(c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fdnf {
    pub clauses: Vec<ConjClause>,
}

impl Fdnf {
    pub fn to_formula(&self) -> Formula {
        Formula::or_all(self.clauses.iter().map(|c| c.to_formula()))
    }
}

/// The X-full DNF of `f`: every conjunction of a non-empty subset of `x`
/// that entails `f`, sorted by size then literal order. With constants the
/// standalone clauses `F` and, when `f` is valid, `T` come first.
pub fn fdnf(f: &Formula, x: LitSet, with_constants: bool, sig: &Signature) -> Result<Fdnf, BdError> {
    if let Some(l) = lits(x).find(|&l| x >> (l ^ 1) & 1 == 0) {
        if l / 2 >= sig.len() {
            return Err(BdError::NotNegationClosed(format!("literal #{}", l ^ 1)));
        }
        return Err(BdError::NotNegationClosed(sig.lit_name(l ^ 1)));
    }
    let missing = f.nnf_lits() & !x;
    if missing != 0 {
        let l = missing.trailing_zeros() as usize;
        let name = if l / 2 < sig.len() { sig.lit_name(l) } else { format!("literal #{l}") };
        return Err(BdError::MissingLiteral(name));
    }
    let target = Idnf::of(f);
    let mut clauses = Vec::new();
    if with_constants {
        clauses.push(ConjClause::Bot);
        if target.is_top() {
            clauses.push(ConjClause::Top);
        }
    }
    // A conjunction of literals entails f iff it contains a clause of f's
    // irredundant DNF.
    let mut subs: Vec<LitSet> = subsets(x).filter(|&c| c != 0 && target.clauses.iter().any(|d| d & c == *d)).collect();
    subs.sort_by(|a, b| canonical_cmp(*a, *b));
    clauses.extend(subs.into_iter().map(ConjClause::Lits));
    Ok(Fdnf { clauses })
}

/// Same clause set as [`fdnf`], found by testing every candidate with
/// exhaustive entailment. Exponential in `|x|`; meant for small inputs.
pub fn fdnf_by_entailment(f: &Formula, x: LitSet, with_constants: bool) -> Vec<ConjClause> {
    let mut out = Vec::new();
    if with_constants {
        for c in [ConjClause::Bot, ConjClause::Top] {
            if semantics::entails(&c.to_formula(), f) {
                out.push(c);
            }
        }
    }
    let mut subs: Vec<LitSet> = subsets(x).filter(|&c| c != 0 && semantics::entails(&Formula::clause(c), f)).collect();
    subs.sort_by(|a, b| canonical_cmp(*a, *b));
    out.extend(subs.into_iter().map(ConjClause::Lits));
    out
}

/// All subsets of a bitmask, including the empty one.
pub fn subsets(x: LitSet) -> impl Iterator<Item = LitSet> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == x { None } else { Some((cur.wrapping_sub(x)) & x) };
        Some(cur)
    })
}
