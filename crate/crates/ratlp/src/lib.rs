//! Exact-rational linear feasibility.
//!
//! Systems mix `>=`, `>`, `=`, `<=`, `<` constraints over rational variables.
//! Strict relations share one gap variable `d`: `e > b` becomes `e - d >= b`,
//! `e < b` becomes `e + d <= b`, and the solver maximizes `d` subject to
//! `d <= 1`. The strict system is feasible iff the optimum is positive.
//! Pivoting follows Bland's rule, so results are deterministic.

pub mod rational;
mod simplex;

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

pub use rational::{fmt_decimal, fmt_q, parse_q, q, qi, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Ge,
    Gt,
    Eq,
    Le,
    Lt,
}

impl Rel {
    pub fn holds(self, lhs: &Q, rhs: &Q) -> bool {
        match self {
            Rel::Ge => lhs >= rhs,
            Rel::Gt => lhs > rhs,
            Rel::Eq => lhs == rhs,
            Rel::Le => lhs <= rhs,
            Rel::Lt => lhs < rhs,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Rel::Gt | Rel::Lt)
    }

    /// Relation obtained by multiplying both sides by -1.
    pub fn mirrored(self) -> Rel {
        match self {
            Rel::Ge => Rel::Le,
            Rel::Gt => Rel::Lt,
            Rel::Eq => Rel::Eq,
            Rel::Le => Rel::Ge,
            Rel::Lt => Rel::Gt,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Ge => ">=",
            Rel::Gt => ">",
            Rel::Eq => "=",
            Rel::Le => "<=",
            Rel::Lt => "<",
        }
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub rel: Rel,
    pub bound: Q,
}

impl Constraint {
    pub fn lhs(&self, values: &[Q]) -> Q {
        self.coeffs.iter().zip(values).filter(|(c, _)| !c.is_zero()).map(|(c, v)| c * v).sum()
    }

    pub fn satisfied_by(&self, values: &[Q]) -> bool {
        self.rel.holds(&self.lhs(values), &self.bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("constraint has {got} coefficients but the system has {expected} variables")]
    Arity { expected: usize, got: usize },
    #[error("variable index {0} out of range")]
    UnknownVariable(usize),
}

/// A conjunction of linear constraints over named variables.
///
/// Variables are free unless declared nonnegative; nonnegativity is a
/// constraint like any other, it is only stored separately so the solver can
/// skip splitting those columns.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearSystem {
    vars: Vec<String>,
    nonneg: Vec<bool>,
    constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_free_vars<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        let mut sys = Self::new();
        for n in names {
            sys.add_var(n, false);
        }
        sys
    }

    pub fn add_var(&mut self, name: impl Into<String>, nonneg: bool) -> usize {
        self.vars.push(name.into());
        self.nonneg.push(nonneg);
        for c in &mut self.constraints {
            c.coeffs.push(Q::zero());
        }
        self.vars.len() - 1
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_nonneg(&self, var: usize) -> bool {
        self.nonneg[var]
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn add(&mut self, coeffs: Vec<Q>, rel: Rel, bound: Q) -> Result<(), SystemError> {
        if coeffs.len() != self.vars.len() {
            return Err(SystemError::Arity { expected: self.vars.len(), got: coeffs.len() });
        }
        self.constraints.push(Constraint { coeffs, rel, bound });
        Ok(())
    }

    pub fn add_sparse(&mut self, terms: &[(usize, Q)], rel: Rel, bound: Q) -> Result<(), SystemError> {
        let mut coeffs = vec![Q::zero(); self.vars.len()];
        for (i, c) in terms {
            let slot = coeffs.get_mut(*i).ok_or(SystemError::UnknownVariable(*i))?;
            *slot += c;
        }
        self.add(coeffs, rel, bound)
    }

    /// Checks an assignment against every constraint, nonnegativity included.
    pub fn check(&self, values: &[Q]) -> bool {
        values.len() == self.vars.len()
            && self.nonneg.iter().zip(values).all(|(nn, v)| !nn || !v.is_negative())
            && self.constraints.iter().all(|c| c.satisfied_by(values))
    }
}

/// A satisfying assignment, validated against the original system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub names: Vec<String>,
    pub values: Vec<Q>,
}

impl Witness {
    pub fn get(&self, name: &str) -> Option<&Q> {
        self.names.iter().position(|n| n == name).map(|i| &self.values[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Feasible(Witness),
    Infeasible,
}

impl Outcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Outcome::Feasible(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::Feasible(w) => Some(w),
            Outcome::Infeasible => None,
        }
    }
}

/// Decides feasibility exactly. A returned witness satisfies every original
/// constraint, strict ones included.
pub fn solve(sys: &LinearSystem) -> Outcome {
    solve_inner(sys, None)
}

/// Same as [`solve`], also returning a dump of every tableau visited.
pub fn solve_traced(sys: &LinearSystem) -> (Outcome, Vec<String>) {
    let mut trace = Vec::new();
    let out = solve_inner(sys, Some(&mut trace));
    (out, trace)
}

fn solve_inner(sys: &LinearSystem, trace: Option<&mut Vec<String>>) -> Outcome {
    match simplex::feasible_point(sys, trace) {
        Some(values) => {
            assert!(sys.check(&values), "simplex produced an assignment that violates the original system");
            Outcome::Feasible(Witness { names: sys.vars.clone(), values })
        }
        None => Outcome::Infeasible,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: usize) -> LinearSystem {
        LinearSystem::with_free_vars((0..n).map(|i| format!("x{i}")))
    }

    #[test]
    fn pinned_point() {
        let mut s = sys(1);
        s.add(vec![qi(1)], Rel::Ge, qi(0)).unwrap();
        s.add(vec![qi(1)], Rel::Le, qi(1)).unwrap();
        s.add(vec![qi(1)], Rel::Eq, q(1, 2)).unwrap();
        let w = solve(&s);
        assert_eq!(w.witness().unwrap().values, vec![q(1, 2)]);
    }

    #[test]
    fn strict_contradiction() {
        let mut s = sys(1);
        s.add(vec![qi(1)], Rel::Ge, qi(1)).unwrap();
        s.add(vec![qi(1)], Rel::Lt, qi(1)).unwrap();
        assert_eq!(solve(&s), Outcome::Infeasible);
    }

    #[test]
    fn strict_positive_split() {
        // x + y = 1, x > 0, y > 0, x - y >= 0
        let mut s = sys(2);
        s.add(vec![qi(1), qi(1)], Rel::Eq, qi(1)).unwrap();
        s.add(vec![qi(1), qi(0)], Rel::Gt, qi(0)).unwrap();
        s.add(vec![qi(0), qi(1)], Rel::Gt, qi(0)).unwrap();
        s.add(vec![qi(1), qi(-1)], Rel::Ge, qi(0)).unwrap();
        let out = solve(&s);
        let w = out.witness().expect("feasible");
        assert!(w.values[0] >= q(1, 2));
        assert!(w.values[1] > qi(0));
        assert!(s.check(&w.values));
    }

    #[test]
    fn negative_values_for_free_variables() {
        let mut s = sys(1);
        s.add(vec![qi(1)], Rel::Le, qi(-3)).unwrap();
        let w = solve(&s);
        assert!(w.witness().unwrap().values[0] <= qi(-3));
    }

    #[test]
    fn nonneg_declaration_is_enforced() {
        let mut s = LinearSystem::new();
        s.add_var("m", true);
        s.add(vec![qi(1)], Rel::Le, qi(-1)).unwrap();
        assert_eq!(solve(&s), Outcome::Infeasible);
    }

    #[test]
    fn empty_system_is_feasible() {
        assert!(solve(&LinearSystem::new()).is_feasible());
        let mut s = LinearSystem::new();
        s.add(vec![], Rel::Lt, qi(0)).unwrap();
        assert_eq!(solve(&s), Outcome::Infeasible);
        let mut s = LinearSystem::new();
        s.add(vec![], Rel::Le, qi(0)).unwrap();
        assert!(solve(&s).is_feasible());
    }

    #[test]
    fn redundant_equalities() {
        let mut s = sys(2);
        s.add(vec![qi(1), qi(1)], Rel::Eq, qi(1)).unwrap();
        s.add(vec![qi(2), qi(2)], Rel::Eq, qi(2)).unwrap();
        s.add(vec![qi(1), qi(0)], Rel::Gt, q(1, 3)).unwrap();
        let out = solve(&s);
        assert!(s.check(&out.witness().unwrap().values));
    }

    #[test]
    fn arity_is_checked() {
        let mut s = sys(2);
        assert_eq!(s.add(vec![qi(1)], Rel::Eq, qi(0)), Err(SystemError::Arity { expected: 2, got: 1 }));
    }

    #[test]
    fn trace_records_tableaus() {
        let mut s = sys(1);
        s.add(vec![qi(1)], Rel::Ge, qi(2)).unwrap();
        let (out, trace) = solve_traced(&s);
        assert!(out.is_feasible());
        assert!(!trace.is_empty());
    }
}
