use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use ratlp::{fmt_q, Q};

use crate::{FiniteLattice, Lattice, MassFunction, MeasureError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Belief,
    Plausibility,
}

impl Role {
    pub fn flipped(self) -> Role {
        match self {
            Role::Belief => Role::Plausibility,
            Role::Plausibility => Role::Belief,
        }
    }
}

/// A function on the elements of a [`FiniteLattice`], tagged with the role
/// it is meant to play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    pub role: Role,
    pub values: Vec<Q>,
}

impl Measure {
    pub fn new(role: Role, values: Vec<Q>, lat: &FiniteLattice) -> Result<Self, MeasureError> {
        if values.len() != lat.len() {
            return Err(MeasureError::Arity { expected: lat.len(), got: values.len() });
        }
        Ok(Measure { role, values })
    }

    pub fn get(&self, x: usize) -> &Q {
        &self.values[x]
    }
}

/// `mu(y, x)` for all pairs, by the recursion `mu(x, x) = 1` and
/// `mu(y, x) = -sum_{y <= z < x} mu(y, z)`; zero when `y` is not below `x`.
pub fn mobius_function(lat: &FiniteLattice) -> Vec<Vec<Q>> {
    let n = lat.len();
    let order = lat.linear_extension();
    let mut mu = vec![vec![Q::zero(); n]; n];
    for y in 0..n {
        for &x in &order {
            if !lat.leq(&y, &x) {
                continue;
            }
            mu[y][x] = if x == y {
                Q::one()
            } else {
                -(0..n).filter(|&z| z != x && lat.leq(&y, &z) && lat.leq(&z, &x)).map(|z| mu[y][z].clone()).sum::<Q>()
            };
        }
    }
    mu
}

/// Möbius transform through the Möbius function:
/// `g(x) = sum_{y <= x} mu(y, x) f(y)`.
pub fn mobius_by_function(f: &[Q], lat: &FiniteLattice) -> Vec<Q> {
    let mu = mobius_function(lat);
    (0..lat.len()).map(|x| lat.below(x).filter(|&y| !mu[y][x].is_zero()).map(|y| &mu[y][x] * &f[y]).sum()).collect()
}

/// Möbius transform by subtraction along a linear extension:
/// `g(x) = f(x) - sum_{y < x} g(y)`.
pub fn mobius_transform(f: &[Q], lat: &FiniteLattice) -> Vec<Q> {
    let mut g = vec![Q::zero(); lat.len()];
    for x in lat.linear_extension() {
        let below: Q = lat.below(x).filter(|&y| y != x).map(|y| g[y].clone()).sum();
        g[x] = &f[x] - below;
    }
    g
}

/// `f(x) = sum_{y <= x} g(y)`.
pub fn zeta(g: &[Q], lat: &FiniteLattice) -> Vec<Q> {
    (0..lat.len()).map(|x| lat.below(x).map(|y| g[y].clone()).sum()).collect()
}

fn dense(m: &MassFunction<usize>, lat: &FiniteLattice) -> Vec<Q> {
    (0..lat.len()).map(|x| m.get(&x)).collect()
}

pub fn belief_from_mass(m: &MassFunction<usize>, lat: &FiniteLattice) -> Measure {
    Measure { role: Role::Belief, values: zeta(&dense(m, lat), lat) }
}

/// `pl(x) = 1 - sum_{y <= -x} m(y)`.
pub fn plausibility_from_mass(m: &MassFunction<usize>, lat: &FiniteLattice) -> Result<Measure, MeasureError> {
    let bel = zeta(&dense(m, lat), lat);
    let values = (0..lat.len())
        .map(|x| Ok(Q::one() - &bel[lat.neg(&x).ok_or(MeasureError::NoNegation)?]))
        .collect::<Result<_, MeasureError>>()?;
    Ok(Measure { role: Role::Plausibility, values })
}

/// `x -> 1 - f(-x)` with the role flipped.
pub fn dual_measure(f: &Measure, lat: &FiniteLattice) -> Result<Measure, MeasureError> {
    if f.values.len() != lat.len() {
        return Err(MeasureError::Arity { expected: lat.len(), got: f.values.len() });
    }
    let values = (0..lat.len())
        .map(|x| Ok(Q::one() - &f.values[lat.neg(&x).ok_or(MeasureError::NoNegation)?]))
        .collect::<Result<_, MeasureError>>()?;
    Ok(Measure { role: f.role.flipped(), values })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    OutOfRange {
        element: usize,
    },
    Monotone {
        lower: usize,
        upper: usize,
    },
    /// The k-inequality fails on `tuple`; `lhs` and `rhs` are its two sides.
    Inequality {
        tuple: Vec<usize>,
        lhs: Q,
        rhs: Q,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub ok: bool,
    pub violation: Option<Violation>,
}

impl Report {
    pub fn describe(&self, lat: &FiniteLattice) -> String {
        match &self.violation {
            None => "ok".into(),
            Some(Violation::OutOfRange { element }) => format!("value at {} outside [0,1]", lat.name(*element)),
            Some(Violation::Monotone { lower, upper }) => {
                format!("not monotone: {} <= {} but the value decreases", lat.name(*lower), lat.name(*upper))
            }
            Some(Violation::Inequality { tuple, lhs, rhs }) => {
                let names: Vec<&str> = tuple.iter().map(|&x| lat.name(x)).collect();
                format!("{}-inequality fails on ({}): {} vs {}", tuple.len(), names.join(", "), fmt_q(lhs), fmt_q(rhs))
            }
        }
    }
}

/// Checks range, monotonicity and the k-inequalities for every tuple of
/// size `2..=kmax` (with repetition). Beliefs use
/// `bel(a1 v ... v ak) >= sum_J (-1)^(|J|+1) bel(meet_J a)`, plausibilities
/// the dual `pl(a1 ^ ... ^ ak) <= sum_J (-1)^(|J|+1) pl(join_J a)`.
pub fn check_measure(f: &Measure, lat: &FiniteLattice, kmax: usize) -> Report {
    let n = lat.len();
    let fail = |v| Report { ok: false, violation: Some(v) };
    if let Some(x) = (0..n).find(|&x| f.values[x].is_negative() || f.values[x] > Q::one()) {
        return fail(Violation::OutOfRange { element: x });
    }
    for a in 0..n {
        for b in 0..n {
            if lat.leq(&a, &b) && f.values[a] > f.values[b] {
                return fail(Violation::Monotone { lower: a, upper: b });
            }
        }
    }
    let (outer, inner): (fn(&FiniteLattice, &usize, &usize) -> usize, fn(&FiniteLattice, &usize, &usize) -> usize) =
        match f.role {
            Role::Belief => (|l, a, b| l.join(a, b), |l, a, b| l.meet(a, b)),
            Role::Plausibility => (|l, a, b| l.meet(a, b), |l, a, b| l.join(a, b)),
        };
    for k in 2..=kmax {
        for tuple in (0..n).combinations_with_replacement(k) {
            let top = tuple[1..].iter().fold(tuple[0], |acc, x| outer(lat, &acc, x));
            let lhs = f.values[top].clone();
            let mut rhs = Q::zero();
            for mask in 1u32..(1 << k) {
                let mut it = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| tuple[i]);
                let first = it.next().expect("mask is non-empty");
                let e = it.fold(first, |acc, x| inner(lat, &acc, &x));
                if mask.count_ones() % 2 == 1 {
                    rhs += &f.values[e];
                } else {
                    rhs -= &f.values[e];
                }
            }
            let bad = match f.role {
                Role::Belief => lhs < rhs,
                Role::Plausibility => lhs > rhs,
            };
            if bad {
                return fail(Violation::Inequality { tuple, lhs, rhs });
            }
        }
    }
    Report { ok: true, violation: None }
}

/// Extends a belief function given on a meet- and join-closed family of
/// subsets of a `ground`-element set to the whole powerset: its Möbius mass
/// on the family is zero-padded and summed again. The result agrees with the
/// input on the family and keeps its total mass.
pub fn extend_to_powerset(domain: &[u64], bel: &[Q], ground: usize) -> Result<BTreeMap<u64, Q>, MeasureError> {
    assert!(ground <= 16, "powerset too large");
    if bel.len() != domain.len() {
        return Err(MeasureError::Arity { expected: domain.len(), got: bel.len() });
    }
    let lat = FiniteLattice::from_sets(domain, None, false)?;
    let m = mobius_transform(bel, &lat);
    if let Some(x) = (0..lat.len()).find(|&x| m[x].is_negative()) {
        return Err(MeasureError::NotBelief { element: lat.name(x).to_string(), mass: fmt_q(&m[x]) });
    }
    let focal: Vec<(u64, &Q)> = domain.iter().copied().zip(&m).filter(|(_, v)| !v.is_zero()).collect();
    Ok((0..1u64 << ground)
        .map(|y| (y, focal.iter().filter(|(x, _)| x & !y == 0).map(|(_, v)| (*v).clone()).sum()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ratlp::{q, qi};

    #[test]
    fn chain_telescopes() {
        let c = FiniteLattice::chain(2);
        let f = vec![q(3, 10), qi(1)];
        assert_eq!(mobius_transform(&f, &c), vec![q(3, 10), q(7, 10)]);
        assert_eq!(mobius_by_function(&f, &c), vec![q(3, 10), q(7, 10)]);
        assert_eq!(mobius_transform(&[qi(0), qi(0)], &c), vec![qi(0), qi(0)]);
    }

    #[test]
    fn diamond_inversion() {
        let d = FiniteLattice::diamond();
        let f = vec![qi(0), q(1, 2), q(1, 2), qi(1)];
        let g = mobius_transform(&f, &d);
        assert_eq!(g, vec![qi(0), q(1, 2), q(1, 2), qi(0)]);
        assert_eq!(mobius_by_function(&f, &d), g);
        assert_eq!(zeta(&g, &d), f);
    }

    #[test]
    fn mobius_function_of_diamond() {
        let mu = mobius_function(&FiniteLattice::diamond());
        assert_eq!(mu[0][3], qi(1));
        assert_eq!(mu[0][1], qi(-1));
        assert_eq!(mu[1][2], qi(0));
    }

    #[test]
    fn vacuous_belief() {
        let p = FiniteLattice::powerset(&["a", "b"]);
        let m = MassFunction::normalized([(3usize, qi(1))]).unwrap();
        let bel = belief_from_mass(&m, &p);
        assert_eq!(bel.values, vec![qi(0), qi(0), qi(0), qi(1)]);
        let pl = dual_measure(&bel, &p).unwrap();
        assert_eq!(pl.values, vec![qi(0), qi(1), qi(1), qi(1)]);
        assert_eq!(pl.role, Role::Plausibility);
        assert_eq!(plausibility_from_mass(&m, &p).unwrap(), pl);
    }

    #[test]
    fn constant_one_is_a_belief() {
        // Its Möbius mass sits entirely on the bottom element.
        let d = FiniteLattice::diamond();
        let f = Measure { role: Role::Belief, values: vec![qi(1); 4] };
        assert!(check_measure(&f, &d, 3).ok);
        assert_eq!(mobius_transform(&f.values, &d), vec![qi(1), qi(0), qi(0), qi(0)]);
    }

    #[test]
    fn one_above_bottom_is_not_two_monotone() {
        let d = FiniteLattice::diamond();
        let f = Measure { role: Role::Belief, values: vec![qi(0), qi(1), qi(1), qi(1)] };
        let r = check_measure(&f, &d, 2);
        assert_eq!(r.violation, Some(Violation::Inequality { tuple: vec![1, 2], lhs: qi(1), rhs: qi(2) }));
        assert!(check_measure(&f, &d, 1).ok);
    }

    #[test]
    fn monotone_on_a_chain_passes() {
        let c = FiniteLattice::chain(3);
        let f = Measure { role: Role::Belief, values: vec![q(1, 5), q(1, 2), qi(1)] };
        assert!(check_measure(&f, &c, 4).ok);
        let pl = Measure { role: Role::Plausibility, values: f.values.clone() };
        assert!(check_measure(&pl, &c, 4).ok);
        let bad = Measure { role: Role::Belief, values: vec![q(1, 2), q(1, 5), qi(1)] };
        assert_eq!(check_measure(&bad, &c, 2).violation, Some(Violation::Monotone { lower: 0, upper: 1 }));
    }

    #[test]
    fn extension_rejects_non_beliefs() {
        // Family {∅, {0}, {1}, {0,1}} with bel of the top too small.
        let dom = [0b00, 0b01, 0b10, 0b11];
        let bel = [qi(0), q(1, 2), q(1, 2), q(1, 2)];
        assert!(matches!(extend_to_powerset(&dom, &bel, 2), Err(MeasureError::NotBelief { .. })));
    }
}
