//! Measures on formula classes and the constructions that realize them in
//! the canonical model.

use std::collections::BTreeMap;

use bd_core::{Formula, Lindenbaum, Signature};
use lattice_measures::{mobius_transform, FiniteLattice};
use num_traits::{One, Signed, Zero};
use ratlp::{fmt_q, Q};

use crate::frame::full_set;
use crate::{BDModel, DSModel, DSplModel, ModelError, ProbBDModel, StateSet, Uncertain};

fn class_name(lb: &Lindenbaum, c: usize) -> String {
    lb.representative(c).to_string_with(&Signature::numbered(lb.num_vars()))
}

fn check_len(values: &[Q], lb: &Lindenbaum) -> Result<(), ModelError> {
    if values.len() != lb.len() {
        return Err(ModelError::NotTotal { expected: lb.len(), got: values.len() });
    }
    Ok(())
}

/// `p(c) = mu(|c|+)` for every class of `lb`.
pub fn induced_probability(m: &ProbBDModel, lb: &Lindenbaum) -> Vec<Q> {
    (0..lb.len()).map(|c| m.mu(m.model.ext_pos(&lb.representative(c)))).collect()
}

/// `bel(|c|+)` for every class; errors when the model has no belief.
pub fn induced_belief<M: Uncertain>(m: &M, lb: &Lindenbaum) -> Result<Vec<Q>, ModelError> {
    (0..lb.len())
        .map(|c| m.bel(m.frame().ext_pos(&lb.representative(c))).ok_or(ModelError::MissingMeasure("belief")))
        .collect()
}

pub fn induced_plausibility<M: Uncertain>(m: &M, lb: &Lindenbaum) -> Result<Vec<Q>, ModelError> {
    (0..lb.len())
        .map(|c| m.pl(m.frame().ext_pos(&lb.representative(c))).ok_or(ModelError::MissingMeasure("plausibility")))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub ok: bool,
    pub failure: Option<String>,
}

/// Checks the non-standard probability axioms over every class:
/// range, monotonicity under entailment, and inclusion-exclusion.
pub fn check_nsprob_axioms(p: &[Q], lb: &Lindenbaum) -> Result<AxiomReport, ModelError> {
    check_len(p, lb)?;
    let fail = |msg: String| Ok(AxiomReport { ok: false, failure: Some(msg) });
    for c in 0..lb.len() {
        if p[c].is_negative() || p[c] > Q::one() {
            return fail(format!("p({}) = {} is outside [0,1]", class_name(lb, c), fmt_q(&p[c])));
        }
    }
    for a in 0..lb.len() {
        for b in 0..lb.len() {
            if lb.leq(a, b) && p[a] > p[b] {
                return fail(format!("{} entails {} but p decreases", class_name(lb, a), class_name(lb, b)));
            }
            let (j, m) = (lb.join(a, b), lb.meet(a, b));
            if p[j] != &p[a] + &p[b] - &p[m] {
                return fail(format!("inclusion-exclusion fails for {} and {}", class_name(lb, a), class_name(lb, b)));
            }
        }
    }
    Ok(AxiomReport { ok: true, failure: None })
}

/// Builds a probabilistic canonical model realizing `p`.
///
/// Singleton masses are assigned from the largest literal set down:
/// `m(s) = p(∧s) - sum_{s ⊂ s'} m(s')`, with whatever is left going to the
/// empty literal set.
pub fn model_from_nsprob(p: &[Q], lb: &Lindenbaum) -> Result<ProbBDModel, ModelError> {
    let report = check_nsprob_axioms(p, lb)?;
    if let Some(msg) = report.failure {
        return Err(ModelError::Axiom(msg));
    }
    let model = BDModel::canonical(lb.num_vars())?;
    let states = lb.states();
    let mut mass = vec![Q::zero(); states.len()];
    for i in (1..states.len()).rev() {
        let s = states[i];
        let class = lb.class_of(&Formula::clause(s)).expect("clauses are classes");
        let above: Q = (i + 1..states.len()).filter(|&j| states[j] & s == s).map(|j| mass[j].clone()).sum();
        mass[i] = &p[class] - above;
        if mass[i].is_negative() {
            return Err(ModelError::Axiom(format!("singleton mass of state {i} would be negative")));
        }
    }
    let rest = Q::one() - mass.iter().sum::<Q>();
    if rest.is_negative() {
        return Err(ModelError::Axiom("singleton masses exceed 1".into()));
    }
    mass[0] = rest;
    ProbBDModel::new(model, mass)
}

/// Möbius mass of `f` on the classes, sent to the classes' support sets,
/// with the residual on the full state set. Fails on negative mass or mass
/// on the bottom class.
fn mass_on_upsets(f: &[Q], lb: &Lindenbaum) -> Result<BTreeMap<StateSet, Q>, ModelError> {
    check_len(f, lb)?;
    let lat = FiniteLattice::from_lindenbaum(lb, &Signature::numbered(lb.num_vars()));
    let m = mobius_transform(f, &lat);
    let mut out = BTreeMap::new();
    for (c, v) in m.iter().enumerate() {
        if v.is_negative() {
            return Err(ModelError::NotBelief { class: class_name(lb, c), mass: fmt_q(v) });
        }
        if v.is_zero() {
            continue;
        }
        if lb.key(c) == 0 {
            return Err(ModelError::InvalidMass(format!("the bottom class carries mass {}", fmt_q(v))));
        }
        *out.entry(lb.key(c)).or_insert_with(Q::zero) += v;
    }
    let total: Q = out.values().sum();
    if total > Q::one() {
        return Err(ModelError::InvalidMass(format!("Möbius mass totals {}", fmt_q(&total))));
    }
    let rest = Q::one() - total;
    let full = full_set(lb.states().len());
    if lb.top().is_some() && !rest.is_zero() {
        return Err(ModelError::InvalidMass("with constants the top class must have value 1".into()));
    }
    if !rest.is_zero() {
        *out.entry(full).or_insert_with(Q::zero) += rest;
    }
    Ok(out)
}

/// Builds a DS canonical model with `bel'(|c|+) = bel(c)` for every class.
/// The extension is one of possibly many.
pub fn model_from_belief(bel: &[Q], lb: &Lindenbaum) -> Result<DSModel, ModelError> {
    let mass = mass_on_upsets(bel, lb)?;
    DSModel::new(BDModel::canonical(lb.num_vars())?, mass)
}

/// A canonical model with a plausibility mass only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlModel {
    pub model: BDModel,
    pub mass_pl: BTreeMap<StateSet, Q>,
}

impl PlModel {
    pub fn plausibility(&self, set: StateSet) -> Q {
        let comp = !set & self.model.all_states();
        Q::one() - self.mass_pl.iter().filter(|(x, _)| *x & !comp == 0).map(|(_, v)| v.clone()).sum::<Q>()
    }
}

impl Uncertain for PlModel {
    fn frame(&self) -> &BDModel {
        &self.model
    }

    fn pl(&self, set: StateSet) -> Option<Q> {
        Some(self.plausibility(set))
    }
}

/// Realizes a plausibility on classes: `bel_pl(c) = 1 - pl(-c)` is realized
/// as a belief mass on upsets, which is then moved through the state
/// involution. The classical plausibility of the result satisfies
/// `pl'(|c|+) = pl(c)`.
pub fn model_from_plausibility(pl: &[Q], lb: &Lindenbaum) -> Result<PlModel, ModelError> {
    check_len(pl, lb)?;
    let bel_pl: Vec<Q> = (0..lb.len()).map(|c| Q::one() - &pl[lb.neg(c)]).collect();
    let mass = mass_on_upsets(&bel_pl, lb)?;
    let model = BDModel::canonical(lb.num_vars())?;
    let mut mass_pl = BTreeMap::new();
    for (x, v) in mass {
        mass_pl.insert(model.sigma_image(x)?, v);
    }
    Ok(PlModel { model, mass_pl })
}

pub fn model_from_bel_pl(
    bel: &[Q],
    pl: &[Q],
    lb: &Lindenbaum,
    require_bel_leq_pl: bool,
) -> Result<DSplModel, ModelError> {
    let ds = model_from_belief(bel, lb)?;
    let plm = model_from_plausibility(pl, lb)?;
    DSplModel::new(ds, plm.mass_pl, require_bel_leq_pl)
}
