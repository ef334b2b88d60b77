use bd_core::{fdnf, lit, Idnf, LitSet, Signature};
use itertools::Itertools;
use ratlp::Rel;

use crate::ast::{Atom, Combo, Polarity, Term};

/// The classical negation of an atom as a disjunction of atoms.
pub fn negate_atom(a: &Atom) -> Vec<Atom> {
    let with = |rel| Atom { rel, ..a.clone() };
    match a.rel {
        Rel::Ge => vec![with(Rel::Lt)],
        Rel::Gt => vec![with(Rel::Le)],
        Rel::Le => vec![with(Rel::Gt)],
        Rel::Lt => vec![with(Rel::Ge)],
        Rel::Eq => vec![with(Rel::Lt), with(Rel::Gt)],
    }
}

/// Rewrites `m-(phi)` as `m+(-phi)`, then merges terms whose arguments are
/// equivalent (keeping the first argument seen) and drops zero
/// coefficients.
pub fn normalize_atom(a: &Atom) -> Atom {
    let mut merged: Vec<(Idnf, Term)> = Vec::new();
    for t in &a.terms {
        let formula = match t.polarity {
            Polarity::Plus => t.formula.clone(),
            Polarity::Minus => t.formula.clone().not(),
        };
        let key = Idnf::of(&formula);
        match merged.iter_mut().find(|(k, _)| *k == key) {
            Some((_, m)) => m.coeff += t.coeff,
            None => merged.push((key, Term { coeff: t.coeff, polarity: Polarity::Plus, formula })),
        }
    }
    let terms = merged.into_iter().map(|(_, t)| t).filter(|t| t.coeff != 0).collect();
    Atom { terms, ..a.clone() }
}

/// Disjunctive normal form over atoms: every branch is a conjunction of
/// normalized atoms with no negation left.
pub fn dnf_branches(c: &Combo) -> Vec<Vec<Atom>> {
    fn go(c: &Combo, neg: bool) -> Vec<Vec<Atom>> {
        match (c, neg) {
            (Combo::Atom(a), false) => vec![vec![normalize_atom(a)]],
            (Combo::Atom(a), true) => negate_atom(a).iter().map(|x| vec![normalize_atom(x)]).collect(),
            (Combo::Not(x), _) => go(x, !neg),
            (Combo::And(x, y), false) | (Combo::Or(x, y), true) => cross(go(x, neg), go(y, neg)),
            (Combo::Or(x, y), false) | (Combo::And(x, y), true) => {
                let mut out = go(x, neg);
                out.extend(go(y, neg));
                out
            }
            (Combo::Implies(x, y), false) => {
                let mut out = go(x, true);
                out.extend(go(y, false));
                out
            }
            (Combo::Implies(x, y), true) => cross(go(x, false), go(y, true)),
        }
    }
    fn cross(l: Vec<Vec<Atom>>, r: Vec<Vec<Atom>>) -> Vec<Vec<Atom>> {
        l.iter().cartesian_product(r.iter()).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect()
    }
    go(c, false)
}

fn rebuild(branches: Vec<Vec<Atom>>) -> Combo {
    branches
        .into_iter()
        .map(|b| b.into_iter().map(Combo::Atom).reduce(Combo::and).expect("branches are non-empty"))
        .reduce(Combo::or)
        .expect("a combination has at least one branch")
}

/// [`dnf_branches`] folded back into a combination.
pub fn normalize_atoms(c: &Combo) -> Combo {
    rebuild(dnf_branches(c))
}

/// Literals of the variables occurring in `c`, closed under negation.
fn occurring_lits(c: &Combo) -> LitSet {
    let vars = c.atoms().iter().flat_map(|a| a.terms.iter()).fold(0u64, |acc, t| acc | t.formula.vars());
    (0..32).filter(|v| vars >> v & 1 == 1).fold(0, |acc, v| acc | 1 << lit(v, false) | 1 << lit(v, true))
}

/// [`normalize_atoms`] with every argument replaced by its full DNF over
/// the literals of `c`, so equivalent arguments become identical.
pub fn canonicalize(c: &Combo) -> Combo {
    let x = occurring_lits(c);
    let consts = c.has_constants();
    let sig = Signature::numbered(c.var_bound());
    let branches = dnf_branches(c)
        .into_iter()
        .map(|b| {
            b.into_iter()
                .map(|a| {
                    let terms = a
                        .terms
                        .iter()
                        .map(|t| {
                            let f = fdnf(&t.formula, x, consts, &sig).expect("x covers every argument").to_formula();
                            Term { formula: f, ..t.clone() }
                        })
                        .collect();
                    Atom { terms, ..a }
                })
                .collect()
        })
        .collect();
    rebuild(branches)
}
