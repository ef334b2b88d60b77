use std::fmt;

use bd_core::{Idnf, Lindenbaum, Signature};

use crate::MeasureError;

/// Operations needed by the combination rules. `top`/`bottom` are the
/// algebra's constants, which an unbounded lattice does not have even when
/// it is finite.
pub trait Lattice {
    type Elem: Clone + Ord + fmt::Debug;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn top(&self) -> Option<Self::Elem>;
    fn bottom(&self) -> Option<Self::Elem>;
}

/// Explicit finite lattice with precomputed tables. Elements are indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    neg: Option<Vec<usize>>,
    least: usize,
    greatest: usize,
    bounded: bool,
}

impl FiniteLattice {
    /// Builds a lattice from its order. Meets and joins are computed from
    /// the order and must exist; a negation, when given, must be an
    /// involutive, order-reversing map. `bounded` marks the least and
    /// greatest elements as constants of the algebra.
    pub fn from_order(
        names: Vec<String>,
        leq: Vec<Vec<bool>>,
        neg: Option<Vec<usize>>,
        bounded: bool,
    ) -> Result<Self, MeasureError> {
        let n = names.len();
        if n == 0 {
            return Err(MeasureError::NotALattice("no elements".into()));
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(MeasureError::NotALattice("order matrix has the wrong shape".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(MeasureError::NotALattice(format!("{} is not below itself", names[a])));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(MeasureError::NotALattice(format!("{} and {} are equivalent", names[a], names[b])));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(MeasureError::NotALattice("order is not transitive".into()));
                    }
                }
            }
        }
        let bound = |a: usize, b: usize, upper: bool| -> Result<usize, MeasureError> {
            let cands: Vec<usize> =
                (0..n).filter(|&c| if upper { leq[a][c] && leq[b][c] } else { leq[c][a] && leq[c][b] }).collect();
            cands
                .iter()
                .copied()
                .find(|&c| cands.iter().all(|&d| if upper { leq[c][d] } else { leq[d][c] }))
                .ok_or_else(|| {
                    let what = if upper { "join" } else { "meet" };
                    MeasureError::NotALattice(format!("{} and {} have no {what}", names[a], names[b]))
                })
        };
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                meet[a][b] = bound(a, b, false)?;
                join[a][b] = bound(a, b, true)?;
            }
        }
        let least = (1..n).fold(0, |acc, x| meet[acc][x]);
        let greatest = (1..n).fold(0, |acc, x| join[acc][x]);
        let lat = FiniteLattice { names, leq, meet, join, neg: None, least, greatest, bounded };
        match neg {
            Some(neg) => lat.with_negation(neg),
            None => Ok(lat),
        }
    }

    fn with_negation(mut self, neg: Vec<usize>) -> Result<Self, MeasureError> {
        let n = self.len();
        if neg.len() != n || neg.iter().any(|&x| x >= n) {
            return Err(MeasureError::BadNegation("table has the wrong shape".into()));
        }
        for a in 0..n {
            if neg[neg[a]] != a {
                return Err(MeasureError::BadNegation(format!("not involutive at {}", self.names[a])));
            }
            for b in 0..n {
                if self.leq[a][b] && !self.leq[neg[b]][neg[a]] {
                    return Err(MeasureError::BadNegation("not order-reversing".into()));
                }
            }
        }
        self.neg = Some(neg);
        Ok(self)
    }

    /// Boolean algebra of subsets of `ground`; element `i` is the subset
    /// with bitmask `i`.
    pub fn powerset(ground: &[&str]) -> Self {
        let k = ground.len();
        assert!(k <= 10, "powerset too large");
        let size = 1usize << k;
        let names = (0..size)
            .map(|m| {
                let parts: Vec<&str> = (0..k).filter(|i| m >> i & 1 == 1).map(|i| ground[i]).collect();
                format!("{{{}}}", parts.join(","))
            })
            .collect();
        let leq = (0..size).map(|a| (0..size).map(|b| a & !b == 0).collect()).collect();
        let neg = (0..size).map(|a| !a & (size - 1)).collect();
        let meet = (0..size).map(|a| (0..size).map(|b| a & b).collect()).collect();
        let join = (0..size).map(|a| (0..size).map(|b| a | b).collect()).collect();
        FiniteLattice { names, leq, meet, join, neg: Some(neg), least: 0, greatest: size - 1, bounded: true }
    }

    /// Chain `0 < 1 < ... < k-1`, with the order-reversing negation.
    pub fn chain(k: usize) -> Self {
        let names = (0..k).map(|i| i.to_string()).collect();
        let leq = (0..k).map(|a| (0..k).map(|b| a <= b).collect()).collect();
        let neg = (0..k).map(|a| k - 1 - a).collect();
        FiniteLattice::from_order(names, leq, Some(neg), true).expect("chains are lattices")
    }

    /// `bot < a, b < top`, `a` and `b` incomparable and fixed by negation.
    pub fn diamond() -> Self {
        let names = ["bot", "a", "b", "top"].map(String::from).to_vec();
        let leq = (0..4).map(|x| (0..4).map(|y| x == y || x == 0 || y == 3).collect()).collect();
        FiniteLattice::from_order(names, leq, Some(vec![3, 1, 2, 0]), true).expect("diamond is a lattice")
    }

    /// A family of subsets (bitmasks) ordered by inclusion.
    pub fn from_sets(sets: &[u64], names: Option<Vec<String>>, bounded: bool) -> Result<Self, MeasureError> {
        let names = names.unwrap_or_else(|| sets.iter().map(|s| format!("{s:#b}")).collect());
        let leq = sets.iter().map(|a| sets.iter().map(|b| a & !b == 0).collect()).collect();
        FiniteLattice::from_order(names, leq, None, bounded)
    }

    /// The Lindenbaum algebra as an explicit De Morgan lattice; bounded when
    /// it was built with constants.
    pub fn from_lindenbaum(lb: &Lindenbaum, sig: &Signature) -> Self {
        let n = lb.len();
        let names = (0..n).map(|i| lb.representative(i).to_string_with(sig)).collect();
        let leq = (0..n).map(|a| (0..n).map(|b| lb.leq(a, b)).collect()).collect();
        let meet: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| lb.meet(a, b)).collect()).collect();
        let join: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| lb.join(a, b)).collect()).collect();
        let neg = (0..n).map(|a| lb.neg(a)).collect();
        let least = (1..n).fold(0, |acc, x| meet[acc][x]);
        let greatest = (1..n).fold(0, |acc, x| join[acc][x]);
        FiniteLattice { names, leq, meet, join, neg: Some(neg), least, greatest, bounded: lb.with_constants() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    pub fn has_negation(&self) -> bool {
        self.neg.is_some()
    }

    /// Order-theoretic least element, whether or not it is a constant.
    pub fn least(&self) -> usize {
        self.least
    }

    pub fn greatest(&self) -> usize {
        self.greatest
    }

    pub fn below(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&y| self.leq[y][x])
    }

    /// Elements sorted so that every element comes after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.len()).collect();
        v.sort_by_key(|&x| self.below(x).count());
        v
    }

    /// Number of elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> usize {
        self.below(x)
            .filter(|&y| y != x && !(0..self.len()).any(|z| z != x && z != y && self.leq[y][z] && self.leq[z][x]))
            .count()
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.meet[a][self.join[b][c]] == self.join[self.meet[a][b]][self.meet[a][c]]))
        })
    }

    /// Negation satisfies both De Morgan laws.
    pub fn is_de_morgan(&self) -> bool {
        let Some(neg) = &self.neg else { return false };
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                neg[self.meet[a][b]] == self.join[neg[a]][neg[b]] && neg[self.join[a][b]] == self.meet[neg[a]][neg[b]]
            })
        })
    }
}

impl Lattice for FiniteLattice {
    type Elem = usize;

    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.leq[*a][*b]
    }

    fn meet(&self, a: &usize, b: &usize) -> usize {
        self.meet[*a][*b]
    }

    fn join(&self, a: &usize, b: &usize) -> usize {
        self.join[*a][*b]
    }

    fn neg(&self, a: &usize) -> Option<usize> {
        self.neg.as_ref().map(|n| n[*a])
    }

    fn top(&self) -> Option<usize> {
        self.bounded.then_some(self.greatest)
    }

    fn bottom(&self) -> Option<usize> {
        self.bounded.then_some(self.least)
    }
}

/// The free De Morgan algebra over a signature, kept symbolic: elements are
/// irredundant DNFs, so no enumeration is needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeDeMorgan {
    pub with_constants: bool,
}

impl Lattice for FreeDeMorgan {
    type Elem = Idnf;

    fn leq(&self, a: &Idnf, b: &Idnf) -> bool {
        a.leq(b)
    }

    fn meet(&self, a: &Idnf, b: &Idnf) -> Idnf {
        a.meet(b)
    }

    fn join(&self, a: &Idnf, b: &Idnf) -> Idnf {
        a.join(b)
    }

    fn neg(&self, a: &Idnf) -> Option<Idnf> {
        Some(a.neg())
    }

    fn top(&self) -> Option<Idnf> {
        self.with_constants.then(Idnf::top)
    }

    fn bottom(&self) -> Option<Idnf> {
        self.with_constants.then(Idnf::bottom)
    }
}
