use std::collections::BTreeMap;

use bd_core::Formula;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratlp::{fmt_q, Q};

use crate::frame::full_set;
use crate::{BDModel, ModelError, StateSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Prob,
    Bel,
    Pl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

/// A frame with measures on sets of its states.
pub trait Uncertain {
    fn frame(&self) -> &BDModel;

    fn prob(&self, _set: StateSet) -> Option<Q> {
        None
    }

    fn bel(&self, _set: StateSet) -> Option<Q> {
        None
    }

    fn pl(&self, _set: StateSet) -> Option<Q> {
        None
    }
}

/// The requested measure applied to `|f|+` or `|f|-`.
pub fn measure_of<M: Uncertain + ?Sized>(m: &M, f: &Formula, kind: Kind, sign: Sign) -> Result<Q, ModelError> {
    let set = match sign {
        Sign::Pos => m.frame().ext_pos(f),
        Sign::Neg => m.frame().ext_neg(f),
    };
    match kind {
        Kind::Prob => m.prob(set).ok_or(ModelError::MissingMeasure("probability")),
        Kind::Bel => m.bel(set).ok_or(ModelError::MissingMeasure("belief")),
        Kind::Pl => m.pl(set).ok_or(ModelError::MissingMeasure("plausibility")),
    }
}

fn check_total(total: &Q) -> Result<(), ModelError> {
    if !total.is_one() {
        return Err(ModelError::InvalidMass(format!("total is {}, expected 1", fmt_q(total))));
    }
    Ok(())
}

/// Probabilistic model; the measure is given by singleton masses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbBDModel {
    pub model: BDModel,
    mass: Vec<Q>,
}

impl ProbBDModel {
    pub fn new(model: BDModel, mass: Vec<Q>) -> Result<Self, ModelError> {
        if mass.len() != model.num_states() {
            return Err(ModelError::Arity { expected: model.num_states(), got: mass.len() });
        }
        if mass.iter().any(|v| v.is_negative()) {
            return Err(ModelError::InvalidMass("negative singleton mass".into()));
        }
        check_total(&mass.iter().sum())?;
        Ok(ProbBDModel { model, mass })
    }

    pub fn mass(&self) -> &[Q] {
        &self.mass
    }

    pub fn mu(&self, set: StateSet) -> Q {
        self.mass.iter().enumerate().filter(|(w, _)| set >> w & 1 == 1).map(|(_, v)| v.clone()).sum()
    }
}

impl Uncertain for ProbBDModel {
    fn frame(&self) -> &BDModel {
        &self.model
    }

    fn prob(&self, set: StateSet) -> Option<Q> {
        Some(self.mu(set))
    }
}

fn check_set_mass(model: &BDModel, mass: &BTreeMap<StateSet, Q>) -> Result<(), ModelError> {
    let full = model.all_states();
    if mass.keys().any(|x| x & !full != 0) {
        return Err(ModelError::InvalidMass("focal set outside W".into()));
    }
    if mass.values().any(|v| v.is_negative()) {
        return Err(ModelError::InvalidMass("negative mass".into()));
    }
    if mass.get(&0).is_some_and(|v| !v.is_zero()) {
        return Err(ModelError::InvalidMass("the empty set carries mass".into()));
    }
    check_total(&mass.values().sum())
}

fn sum_subsets(mass: &BTreeMap<StateSet, Q>, set: StateSet) -> Q {
    mass.iter().filter(|(x, _)| *x & !set == 0).map(|(_, v)| v.clone()).sum()
}

/// DS model: a mass function on `P(W)` with `m(∅) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSModel {
    pub model: BDModel,
    mass: BTreeMap<StateSet, Q>,
}

impl DSModel {
    pub fn new(model: BDModel, mass: BTreeMap<StateSet, Q>) -> Result<Self, ModelError> {
        check_set_mass(&model, &mass)?;
        let mass = mass.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(DSModel { model, mass })
    }

    pub fn mass(&self) -> &BTreeMap<StateSet, Q> {
        &self.mass
    }

    /// `bel(Y) = sum_{X ⊆ Y} m(X)`.
    pub fn belief(&self, set: StateSet) -> Q {
        sum_subsets(&self.mass, set)
    }
}

impl Uncertain for DSModel {
    fn frame(&self) -> &BDModel {
        &self.model
    }

    fn bel(&self, set: StateSet) -> Option<Q> {
        Some(self.belief(set))
    }
}

/// DS_pl model: separate masses for belief and plausibility, with the
/// classical plausibility `pl(Y) = 1 - sum_{X ⊆ W \ Y} m_pl(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSplModel {
    pub ds: DSModel,
    mass_pl: BTreeMap<StateSet, Q>,
    require_bel_leq_pl: bool,
}

/// Exhaustive `bel <= pl` check up to this many states, sampled above.
const EXHAUSTIVE_STATES: usize = 4;
const SAMPLES: usize = 4096;

impl DSplModel {
    pub fn new(ds: DSModel, mass_pl: BTreeMap<StateSet, Q>, require_bel_leq_pl: bool) -> Result<Self, ModelError> {
        check_set_mass(&ds.model, &mass_pl)?;
        let mass_pl = mass_pl.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let m = DSplModel { ds, mass_pl, require_bel_leq_pl };
        if require_bel_leq_pl {
            if let Some(y) = m.bel_above_pl() {
                return Err(ModelError::BelAbovePl(m.ds.model.fmt_set(y)));
            }
        }
        Ok(m)
    }

    /// Plausibility read off the belief mass of a canonical model: the
    /// plausibility mass is the image of the belief mass under the state
    /// involution, so that `pl(|f|+) = 1 - bel(|-f|+)`.
    pub fn with_derived_pl(ds: DSModel, require_bel_leq_pl: bool) -> Result<Self, ModelError> {
        let mut mass_pl = BTreeMap::new();
        for (x, v) in ds.mass() {
            mass_pl.insert(ds.model.sigma_image(*x)?, v.clone());
        }
        DSplModel::new(ds, mass_pl, require_bel_leq_pl)
    }

    pub fn mass_pl(&self) -> &BTreeMap<StateSet, Q> {
        &self.mass_pl
    }

    pub fn requires_bel_leq_pl(&self) -> bool {
        self.require_bel_leq_pl
    }

    pub fn plausibility(&self, set: StateSet) -> Q {
        let comp = !set & full_set(self.ds.model.num_states());
        Q::one() - sum_subsets(&self.mass_pl, comp)
    }

    /// A set where `bel > pl`, searched exhaustively for small frames and by
    /// sampling (plus the variable extensions) for larger ones.
    pub fn bel_above_pl(&self) -> Option<StateSet> {
        let n = self.ds.model.num_states();
        let bad = |y: StateSet| self.ds.belief(y) > self.plausibility(y);
        if n <= EXHAUSTIVE_STATES {
            return (0..1u64 << n).find(|&y| bad(y));
        }
        let m = &self.ds.model;
        if let Some(y) = m.vplus().iter().chain(m.vminus()).copied().find(|&y| bad(y)) {
            return Some(y);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let full = full_set(n);
        (0..SAMPLES).map(|_| rng.gen::<u64>() & full).find(|&y| bad(y))
    }
}

impl Uncertain for DSplModel {
    fn frame(&self) -> &BDModel {
        &self.ds.model
    }

    fn bel(&self, set: StateSet) -> Option<Q> {
        Some(self.ds.belief(set))
    }

    fn pl(&self, set: StateSet) -> Option<Q> {
        Some(self.plausibility(set))
    }
}
