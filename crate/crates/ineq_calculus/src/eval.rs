use models::{measure_of, DSModel, Kind, ModelError, ProbBDModel, Sign, Uncertain};
use num_traits::Zero;
use ratlp::Q;

use crate::ast::{Atom, AtomKind, Combo, Polarity};
use crate::IneqError;

/// `sum a_i * m(|phi_i|±)`, with `m` the model's probability for weight
/// atoms and its belief for belief atoms.
pub(crate) fn lhs<M: Uncertain + ?Sized>(m: &M, a: &Atom) -> Result<Q, IneqError> {
    let kind = match a.kind {
        AtomKind::Weight => Kind::Prob,
        AtomKind::Belief => Kind::Bel,
    };
    let mut total = Q::zero();
    for t in &a.terms {
        let sign = match t.polarity {
            Polarity::Plus => Sign::Pos,
            Polarity::Minus => Sign::Neg,
        };
        total += Q::from_integer(t.coeff.into()) * measure_of(m, &t.formula, kind, sign)?;
    }
    Ok(total)
}

/// Classical evaluation of `c` on `m` by exact comparison.
pub fn eval<M: Uncertain + ?Sized>(m: &M, c: &Combo) -> Result<bool, IneqError> {
    let n = m.frame().num_vars();
    if c.var_bound() > n {
        return Err(ModelError::Arity { expected: n, got: c.var_bound() }.into());
    }
    fn go<M: Uncertain + ?Sized>(m: &M, c: &Combo) -> Result<bool, IneqError> {
        Ok(match c {
            Combo::Atom(a) => a.rel.holds(&lhs(m, a)?, &Q::from_integer(a.bound.into())),
            Combo::Not(x) => !go(m, x)?,
            Combo::And(x, y) => go(m, x)? && go(m, y)?,
            Combo::Or(x, y) => go(m, x)? || go(m, y)?,
            Combo::Implies(x, y) => !go(m, x)? || go(m, y)?,
        })
    }
    go(m, c)
}

pub fn eval_weight(m: &ProbBDModel, c: &Combo) -> Result<bool, IneqError> {
    if c.kind() != Some(AtomKind::Weight) {
        return Err(IneqError::MixedKinds);
    }
    eval(m, c)
}

pub fn eval_belief(m: &DSModel, c: &Combo) -> Result<bool, IneqError> {
    if c.kind() != Some(AtomKind::Belief) {
        return Err(IneqError::MixedKinds);
    }
    eval(m, c)
}
