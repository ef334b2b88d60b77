//! Seeded random models and formulas for tests and the equisatisfiability
//! harnesses.

use std::collections::BTreeMap;

use bd_core::Formula;
use num_traits::Zero;
use rand::Rng;
use ratlp::{q, Q};

use crate::frame::full_set;
use crate::{BDModel, DSModel, DSplModel, ProbBDModel, StateSet};

/// Rational weights with denominator dividing their integer sum; all
/// nonnegative, summing to 1.
pub fn random_weights<R: Rng>(rng: &mut R, n: usize, max: u32) -> Vec<Q> {
    loop {
        let w: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
        let t: u32 = w.iter().sum();
        if t > 0 {
            return w.into_iter().map(|x| q(x.into(), t.into())).collect();
        }
    }
}

pub fn random_frame<R: Rng>(rng: &mut R, nvars: usize, nstates: usize) -> BDModel {
    let full = full_set(nstates);
    let names = (0..nstates).map(|i| format!("w{i}")).collect();
    let vplus = (0..nvars).map(|_| rng.gen::<u64>() & full).collect();
    let vminus = (0..nvars).map(|_| rng.gen::<u64>() & full).collect();
    BDModel::new(names, vplus, vminus).expect("random frames are well formed")
}

pub fn random_prob_model<R: Rng>(rng: &mut R, nvars: usize, nstates: usize) -> ProbBDModel {
    let frame = random_frame(rng, nvars, nstates);
    let mass = random_weights(rng, nstates, 6);
    ProbBDModel::new(frame, mass).expect("weights are normalized")
}

/// A normalized mass on up to `focal` random non-empty subsets of `W`.
pub fn random_set_mass<R: Rng>(rng: &mut R, nstates: usize, focal: usize) -> BTreeMap<StateSet, Q> {
    let full = full_set(nstates);
    let w = random_weights(rng, focal, 6);
    let mut mass = BTreeMap::new();
    for v in w {
        let mut x = 0;
        while x == 0 {
            x = rng.gen::<u64>() & full;
        }
        *mass.entry(x).or_insert_with(Q::zero) += v;
    }
    mass.retain(|_, v| !v.is_zero());
    mass
}

pub fn random_ds_model<R: Rng>(rng: &mut R, nvars: usize, nstates: usize, focal: usize) -> DSModel {
    let frame = random_frame(rng, nvars, nstates);
    let mass = random_set_mass(rng, nstates, focal);
    DSModel::new(frame, mass).expect("masses are normalized")
}

/// With `require_bel_leq_pl`, the plausibility mass is a random mixture of
/// the belief mass and an independent one, resampled until `bel <= pl`;
/// the per-variable extensions are checked first since they fail most often.
pub fn random_dspl_model<R: Rng>(
    rng: &mut R,
    nvars: usize,
    nstates: usize,
    focal: usize,
    require_bel_leq_pl: bool,
) -> DSplModel {
    let ds = random_ds_model(rng, nvars, nstates, focal);
    if !require_bel_leq_pl {
        let mass_pl = random_set_mass(rng, nstates, focal);
        return DSplModel::new(ds, mass_pl, false).expect("masses are normalized");
    }
    for _ in 0..64 {
        let t = q(rng.gen_range(0..=4), 4);
        let other = random_set_mass(rng, nstates, focal);
        let mut mass_pl: BTreeMap<StateSet, Q> = BTreeMap::new();
        for (x, v) in ds.mass() {
            *mass_pl.entry(*x).or_insert_with(Q::zero) += &t * v;
        }
        for (x, v) in other {
            *mass_pl.entry(x).or_insert_with(Q::zero) += (Q::from_integer(1.into()) - &t) * v;
        }
        let candidate = DSplModel::new(ds.clone(), mass_pl, false).expect("masses are normalized");
        let frame = &candidate.ds.model;
        let prefilter =
            frame.vplus().iter().chain(frame.vminus()).all(|&y| candidate.ds.belief(y) <= candidate.plausibility(y));
        if prefilter && candidate.bel_above_pl().is_none() {
            return DSplModel::new(candidate.ds.clone(), candidate.mass_pl().clone(), true).expect("checked above");
        }
    }
    // Equal masses always satisfy the constraint.
    let mass_pl = ds.mass().clone();
    DSplModel::new(ds, mass_pl, true).expect("bel <= pl for equal masses")
}

/// Random formula of depth at most `depth` over variables `0..nvars`.
pub fn random_formula<R: Rng>(rng: &mut R, nvars: usize, depth: usize, with_constants: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        if with_constants && rng.gen_bool(0.1) {
            return if rng.gen_bool(0.5) { Formula::Top } else { Formula::Bot };
        }
        return Formula::Var(rng.gen_range(0..nvars));
    }
    match rng.gen_range(0..3) {
        0 => random_formula(rng, nvars, depth - 1, with_constants).not(),
        1 => random_formula(rng, nvars, depth - 1, with_constants).and(random_formula(
            rng,
            nvars,
            depth - 1,
            with_constants,
        )),
        _ => random_formula(rng, nvars, depth - 1, with_constants).or(random_formula(
            rng,
            nvars,
            depth - 1,
            with_constants,
        )),
    }
}
