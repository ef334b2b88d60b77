use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use ratlp::{fmt_q, Q};

use crate::MeasureError;

/// A general mass function: nonnegative rationals summing to at most 1.
/// Zero entries are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MassFunction<E: Ord> {
    masses: BTreeMap<E, Q>,
    total: Q,
}

impl<E: Ord + Clone + std::fmt::Debug> MassFunction<E> {
    pub fn new() -> Self {
        MassFunction { masses: BTreeMap::new(), total: Q::zero() }
    }

    /// Sums repeated elements. Fails on negative entries or a total above 1.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (E, Q)>) -> Result<Self, MeasureError> {
        let mut m = Self::new();
        for (e, v) in pairs {
            if v.is_negative() {
                return Err(MeasureError::NegativeMass(format!("{e:?}")));
            }
            m.add(e, v);
        }
        if m.total > Q::one() {
            return Err(MeasureError::TotalExceedsOne(fmt_q(&m.total)));
        }
        Ok(m)
    }

    /// Like [`Self::from_pairs`], also requiring a total of exactly 1.
    pub fn normalized(pairs: impl IntoIterator<Item = (E, Q)>) -> Result<Self, MeasureError> {
        let m = Self::from_pairs(pairs)?;
        if !m.is_normalized() {
            return Err(MeasureError::NotNormalized(fmt_q(&m.total)));
        }
        Ok(m)
    }

    /// Adds without validation; used while aggregating.
    pub(crate) fn add(&mut self, e: E, v: Q) {
        if v.is_zero() {
            return;
        }
        self.total += &v;
        let slot = self.masses.entry(e).or_insert_with(Q::zero);
        *slot += v;
    }

    pub(crate) fn scale(&mut self, by: &Q) {
        for v in self.masses.values_mut() {
            *v *= by;
        }
        self.total *= by;
    }

    pub(crate) fn remove(&mut self, e: &E) {
        if let Some(v) = self.masses.remove(e) {
            self.total -= v;
        }
    }

    pub fn get(&self, e: &E) -> Q {
        self.masses.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn total(&self) -> &Q {
        &self.total
    }

    pub fn is_normalized(&self) -> bool {
        self.total.is_one()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&E, &Q)> {
        self.masses.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &E> {
        self.masses.keys()
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn as_map(&self) -> &BTreeMap<E, Q> {
        &self.masses
    }

    /// Belief of `x`: total mass of the focal elements below it.
    pub fn belief<L: crate::Lattice<Elem = E>>(&self, lat: &L, x: &E) -> Q {
        self.masses.iter().filter(|(y, _)| lat.leq(y, x)).map(|(_, v)| v.clone()).sum()
    }

    /// `1 - bel(-x)`, reading `self` as the mass associated to a
    /// plausibility function.
    pub fn plausibility<L: crate::Lattice<Elem = E>>(&self, lat: &L, x: &E) -> Result<Q, MeasureError> {
        let nx = lat.neg(x).ok_or(MeasureError::NoNegation)?;
        Ok(Q::one() - self.belief(lat, &nx))
    }

    pub fn map_elements<F: Ord + Clone + std::fmt::Debug>(&self, f: impl Fn(&E) -> F) -> MassFunction<F> {
        let mut out = MassFunction::new();
        for (e, v) in &self.masses {
            out.add(f(e), v.clone());
        }
        out
    }
}
