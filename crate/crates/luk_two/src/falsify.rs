//! Semi-decision search for countervaluations. A hit is exact; a miss only
//! means none was found within the budget.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratlp::{q, Q};

use crate::{Logic, LukError, Outer, TwoPoint};

pub type Valuation<A> = BTreeMap<A, TwoPoint>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FalsifyOptions {
    /// Grids with step `1/d` are tried for `d = 1..=grid_denominator`.
    pub grid_denominator: u32,
    /// Cap on grid valuations tried in total.
    pub grid_budget: usize,
    pub random_samples: usize,
    pub seed: u64,
}

impl Default for FalsifyOptions {
    fn default() -> Self {
        FalsifyOptions { grid_denominator: 6, grid_budget: 200_000, random_samples: 2000, seed: 0 }
    }
}

fn lookup<A: Ord + Clone + std::fmt::Debug>(v: &Valuation<A>) -> impl Fn(&A) -> Result<TwoPoint, LukError> + '_ {
    move |a| v.get(a).cloned().ok_or_else(|| LukError::MissingAtom(format!("{a:?}")))
}

/// Whether `v` designates every premise and not the conclusion.
pub fn is_countervaluation<A: Ord + Clone + std::fmt::Debug>(
    gamma: &[Outer<A>],
    alpha: &Outer<A>,
    logic: Logic,
    v: &Valuation<A>,
) -> Result<bool, LukError> {
    let f = lookup(v);
    for g in gamma {
        if !logic.designated(&g.eval_with(logic, &f)?) {
            return Ok(false);
        }
    }
    Ok(!logic.designated(&alpha.eval_with(logic, &f)?))
}

/// Looks for a valuation designating all of `gamma` but not `alpha`: first
/// on grids of increasing resolution, then at random rational points.
pub fn falsify<A: Ord + Clone + std::fmt::Debug>(
    gamma: &[Outer<A>],
    alpha: &Outer<A>,
    logic: Logic,
    opts: &FalsifyOptions,
) -> Result<Option<Valuation<A>>, LukError> {
    let mut atoms = alpha.atoms();
    for g in gamma {
        atoms.extend(g.atoms());
    }
    let atoms: Vec<A> = atoms.into_iter().collect();
    let k = atoms.len();
    let build = |coords: &[Q]| -> Valuation<A> {
        atoms
            .iter()
            .enumerate()
            .map(|(i, a)| {
                (a.clone(), TwoPoint::new(coords[2 * i].clone(), coords[2 * i + 1].clone()).expect("in range"))
            })
            .collect()
    };

    let mut tried = 0usize;
    'grids: for d in 1..=opts.grid_denominator.max(1) {
        let points: Vec<Q> = (0..=d).map(|i| q(i.into(), d.into())).collect();
        let mut idx = vec![0usize; 2 * k];
        loop {
            if tried >= opts.grid_budget {
                break 'grids;
            }
            tried += 1;
            let coords: Vec<Q> = idx.iter().map(|&i| points[i].clone()).collect();
            let v = build(&coords);
            if is_countervaluation(gamma, alpha, logic, &v)? {
                return Ok(Some(v));
            }
            // Odometer step; done when every digit wraps.
            let mut j = 0;
            while j < idx.len() {
                idx[j] += 1;
                if idx[j] < points.len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == idx.len() {
                break;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random_samples {
        let coords: Vec<Q> = (0..2 * k)
            .map(|_| match rng.gen_range(0..8) {
                0 => Q::zero(),
                1 => Q::one(),
                _ => {
                    let den: i64 = rng.gen_range(1..=97);
                    q(rng.gen_range(0..=den), den)
                }
            })
            .collect();
        let v = build(&coords);
        if is_countervaluation(gamma, alpha, logic, &v)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}
