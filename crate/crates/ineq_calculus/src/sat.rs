use bd_core::Lindenbaum;
use models::{model_from_belief, BDModel, DSModel, ProbBDModel, CANONICAL_CAP};
use num_traits::{One, Zero};
use ratlp::{solve, LinearSystem, Outcome, Rel, Q};

use crate::ast::{Atom, AtomKind, Combo};
use crate::eval::eval;
use crate::normal::dnf_branches;
use crate::IneqError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatOptions {
    /// Belief masses sum to exactly 1. Always on when constants occur.
    pub normalized: bool,
    pub weight_cap: usize,
    pub belief_cap: usize,
}

impl Default for SatOptions {
    fn default() -> Self {
        SatOptions { normalized: false, weight_cap: CANONICAL_CAP, belief_cap: bd_core::lindenbaum::DEFAULT_CAP }
    }
}

#[derive(Debug, Clone)]
pub enum Witness {
    Weight(ProbBDModel),
    /// Möbius masses on the Lindenbaum classes, their belief values, and a
    /// DS canonical model realizing them.
    Belief {
        lindenbaum: Lindenbaum,
        mass: Vec<Q>,
        belief: Vec<Q>,
        model: DSModel,
    },
}

#[derive(Debug, Clone)]
pub enum SatResult {
    /// `branch` is the index of the first feasible DNF branch.
    Sat {
        witness: Witness,
        branch: usize,
    },
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SatResult::Sat { witness, .. } => Some(witness),
            SatResult::Unsat => None,
        }
    }
}

fn int(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// Adds `sum_i a_i * sum_{v in cols(phi_i)} x_v REL c` for every atom.
fn add_atoms(sys: &mut LinearSystem, atoms: &[Atom], cols: impl Fn(&bd_core::Formula) -> Vec<usize>) {
    let n = sys.vars().len();
    for a in atoms {
        let mut coeffs = vec![Q::zero(); n];
        for t in &a.terms {
            for v in cols(&t.formula) {
                coeffs[v] += int(t.coeff);
            }
        }
        sys.add(coeffs, a.rel, int(a.bound)).expect("row has one entry per variable");
    }
}

fn require_kind(c: &Combo, kind: AtomKind) -> Result<(), IneqError> {
    if c.kind() != Some(kind) {
        return Err(IneqError::MixedKinds);
    }
    Ok(())
}

/// Decides a weight combination over the canonical model of its variables:
/// one mass per state, summing to 1, one linear system per DNF branch.
pub fn sat_weight(c: &Combo, opts: &SatOptions) -> Result<SatResult, IneqError> {
    require_kind(c, AtomKind::Weight)?;
    let n = c.var_bound();
    if n > opts.weight_cap.min(CANONICAL_CAP) {
        return Err(IneqError::CapExceeded { got: n, cap: opts.weight_cap.min(CANONICAL_CAP) });
    }
    let model = BDModel::canonical(n)?;
    let ns = model.num_states();
    for (b, atoms) in dnf_branches(c).iter().enumerate() {
        let mut sys = LinearSystem::new();
        for name in model.state_names() {
            sys.add_var(format!("m({name})"), true);
        }
        sys.add(vec![Q::one(); ns], Rel::Eq, Q::one()).expect("arity");
        add_atoms(&mut sys, atoms, |f| {
            let ext = model.ext_pos(f);
            (0..ns).filter(|s| ext >> s & 1 == 1).collect()
        });
        if let Outcome::Feasible(w) = solve(&sys) {
            let m = ProbBDModel::new(model.clone(), w.values)?;
            assert!(eval(&m, c)?, "weight witness fails the input");
            return Ok(SatResult::Sat { witness: Witness::Weight(m), branch: b });
        }
    }
    Ok(SatResult::Unsat)
}

/// Decides a belief combination over the Lindenbaum algebra of its
/// variables, one nonnegative Möbius mass per class with `b+(phi)` the sum
/// over the classes entailing `phi`. A function on the classes is a belief
/// function iff it arises this way, so this is the belief-variable system
/// with its monotonicity constraints solved in closed form.
pub fn sat_belief(c: &Combo, opts: &SatOptions) -> Result<SatResult, IneqError> {
    require_kind(c, AtomKind::Belief)?;
    let n = c.var_bound();
    let cap = opts.belief_cap.min(bd_core::lindenbaum::HARD_CAP);
    if n > cap {
        return Err(IneqError::CapExceeded { got: n, cap });
    }
    let consts = c.has_constants();
    let lb = Lindenbaum::with_cap(n, consts, cap).map_err(|e| IneqError::Formula { pos: 0, source: e })?;
    // The bottom class, present only with constants, carries no mass.
    let classes: Vec<usize> = (0..lb.len()).filter(|&i| lb.key(i) != 0).collect();
    let total_rel = if opts.normalized || consts { Rel::Eq } else { Rel::Le };
    for (b, atoms) in dnf_branches(c).iter().enumerate() {
        let mut sys = LinearSystem::new();
        for &i in &classes {
            sys.add_var(format!("m[{i}]"), true);
        }
        sys.add(vec![Q::one(); classes.len()], total_rel, Q::one()).expect("arity");
        add_atoms(&mut sys, atoms, |f| {
            let k = lb.key_of(f);
            (0..classes.len()).filter(|&j| lb.key(classes[j]) & !k == 0).collect()
        });
        if let Outcome::Feasible(w) = solve(&sys) {
            let mut mass = vec![Q::zero(); lb.len()];
            for (j, v) in w.values.into_iter().enumerate() {
                mass[classes[j]] = v;
            }
            let belief: Vec<Q> = (0..lb.len())
                .map(|i| (0..lb.len()).filter(|&j| lb.key(j) & !lb.key(i) == 0).map(|j| mass[j].clone()).sum())
                .collect();
            let model = model_from_belief(&belief, &lb)?;
            assert!(eval(&model, c)?, "belief witness fails the input");
            return Ok(SatResult::Sat { witness: Witness::Belief { lindenbaum: lb, mass, belief, model }, branch: b });
        }
    }
    Ok(SatResult::Unsat)
}

/// Dispatches on the atom kind of `c`.
pub fn sat(c: &Combo, opts: &SatOptions) -> Result<SatResult, IneqError> {
    match c.kind() {
        Some(AtomKind::Weight) => sat_weight(c, opts),
        Some(AtomKind::Belief) => sat_belief(c, opts),
        None => Err(IneqError::MixedKinds),
    }
}

/// A model of every premise falsifying `alpha`, if one exists.
pub fn entails_witness(premises: &[Combo], alpha: &Combo, opts: &SatOptions) -> Result<Option<Witness>, IneqError> {
    let kind = alpha.kind().ok_or(IneqError::MixedKinds)?;
    if premises.iter().any(|p| p.kind() != Some(kind)) {
        return Err(IneqError::MixedKinds);
    }
    let query = premises.iter().cloned().fold(alpha.clone().not(), |acc, p| p.and(acc));
    Ok(match sat(&query, opts)? {
        SatResult::Sat { witness, .. } => Some(witness),
        SatResult::Unsat => None,
    })
}

/// `premises |= alpha` iff the premises together with `not alpha` are
/// unsatisfiable.
pub fn entails(premises: &[Combo], alpha: &Combo, opts: &SatOptions) -> Result<bool, IneqError> {
    Ok(entails_witness(premises, alpha, opts)?.is_none())
}
