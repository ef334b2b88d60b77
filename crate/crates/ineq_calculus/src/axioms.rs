//! Random instances of the axiom schemas of the weight and belief calculi,
//! checked on random models and refuted by the decision procedures.
//!
//! ```text
//! 1  m±(phi) >= 0  and  m±(phi) <= 1
//! 2  m∓(phi) = m±(-phi)
//! 3  m+(phi_1 | ... | phi_k)  =  sum_{J nonempty} (-1)^{|J|+1} m+(AND_J phi_j)   (weights, =)
//!                             >=                                                  (beliefs, >=)
//! 4  m+(phi) <= m+(psi)  and  m-(phi) >= m-(psi)   whenever phi |- psi
//! ```

use std::fmt;

use bd_core::{Formula, Signature};
use models::sample::{random_ds_model, random_formula, random_prob_model};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratlp::Rel;

use crate::ast::{Atom, AtomKind, Combo, Polarity, Term};
use crate::eval::eval;
use crate::sat::{sat, SatOptions};
use crate::IneqError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Schema {
    Bounds,
    Negation,
    InclusionExclusion,
    Monotonicity,
}

impl Schema {
    pub const ALL: [Schema; 4] = [Schema::Bounds, Schema::Negation, Schema::InclusionExclusion, Schema::Monotonicity];

    pub fn number(self) -> usize {
        self as usize + 1
    }

    /// `W1`..`W4` or `B1`..`B4`.
    pub fn label(self, kind: AtomKind) -> String {
        let letter = match kind {
            AtomKind::Weight => 'W',
            AtomKind::Belief => 'B',
        };
        format!("{letter}{}", self.number())
    }
}

fn term(coeff: i64, polarity: Polarity, formula: Formula) -> Term {
    Term { coeff, polarity, formula }
}

fn atom(kind: AtomKind, terms: Vec<Term>, rel: Rel, bound: i64) -> Combo {
    Combo::Atom(Atom::new(kind, terms, rel, bound))
}

fn flip(p: Polarity) -> Polarity {
    match p {
        Polarity::Plus => Polarity::Minus,
        Polarity::Minus => Polarity::Plus,
    }
}

/// The inclusion-exclusion instance over `phis`.
pub fn inclusion_exclusion(kind: AtomKind, phis: &[Formula]) -> Combo {
    let k = phis.len();
    let mut terms = vec![term(1, Polarity::Plus, Formula::or_all(phis.iter().cloned()))];
    for j in 1u32..(1 << k) {
        let sign = if j.count_ones() % 2 == 1 { -1 } else { 1 };
        let meet = Formula::and_all((0..k).filter(|i| j >> i & 1 == 1).map(|i| phis[i].clone()));
        terms.push(term(sign, Polarity::Plus, meet));
    }
    let rel = match kind {
        AtomKind::Weight => Rel::Eq,
        AtomKind::Belief => Rel::Ge,
    };
    atom(kind, terms, rel, 0)
}

/// A pair `phi |- psi`, built by weakening or strengthening a random formula.
fn entailing_pair<R: Rng>(rng: &mut R, nvars: usize, depth: usize) -> (Formula, Formula) {
    let a = random_formula(rng, nvars, depth, false);
    let b = random_formula(rng, nvars, depth, false);
    let pair = match rng.gen_range(0..3) {
        0 => (a.clone(), a.or(b)),
        1 => (a.clone().and(b), a),
        _ => (a.clone().and(b.clone()), a.or(b)),
    };
    debug_assert!(bd_core::entails(&pair.0, &pair.1));
    pair
}

/// A random instance of `schema` over variables `0..nvars`; the
/// inclusion-exclusion schema uses `k` disjuncts.
pub fn instance<R: Rng>(rng: &mut R, kind: AtomKind, schema: Schema, nvars: usize, k: usize) -> Combo {
    let depth = 2;
    let pol = if rng.gen_bool(0.5) { Polarity::Plus } else { Polarity::Minus };
    match schema {
        Schema::Bounds => {
            let f = random_formula(rng, nvars, depth, false);
            atom(kind, vec![term(1, pol, f.clone())], Rel::Ge, 0).and(atom(kind, vec![term(1, pol, f)], Rel::Le, 1))
        }
        Schema::Negation => {
            let f = random_formula(rng, nvars, depth, false);
            atom(kind, vec![term(1, flip(pol), f.clone()), term(-1, pol, f.not())], Rel::Eq, 0)
        }
        Schema::InclusionExclusion => {
            let phis: Vec<Formula> = (0..k).map(|_| random_formula(rng, nvars, depth, false)).collect();
            inclusion_exclusion(kind, &phis)
        }
        Schema::Monotonicity => {
            let (phi, psi) = entailing_pair(rng, nvars, depth);
            let up = vec![term(1, Polarity::Plus, phi.clone()), term(-1, Polarity::Plus, psi.clone())];
            let down = vec![term(1, Polarity::Minus, phi), term(-1, Polarity::Minus, psi)];
            atom(kind, up, Rel::Le, 0).and(atom(kind, down, Rel::Ge, 0))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomOptions {
    pub samples: usize,
    pub seed: u64,
    pub nvars: usize,
    /// Disjuncts in inclusion-exclusion instances.
    pub k: usize,
    /// Also check that the negation of every instance is unsatisfiable.
    pub refute: bool,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        AxiomOptions { samples: 100, seed: 0, nvars: 2, k: 2, refute: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaReport {
    pub schema: Schema,
    pub instances: usize,
    pub refuted: usize,
    /// Printed instances together with what went wrong.
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub kind: AtomKind,
    pub schemas: Vec<SchemaReport>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.schemas.iter().all(|s| s.violations.is_empty())
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.schemas {
            let status = if s.violations.is_empty() { "ok" } else { "VIOLATED" };
            writeln!(
                f,
                "{}: {status} ({} instances, {} negations refuted)",
                s.schema.label(self.kind),
                s.instances,
                s.refuted
            )?;
            for v in &s.violations {
                writeln!(f, "  {v}")?;
            }
        }
        Ok(())
    }
}

/// Checks `opts.samples` instances of every schema, each on a fresh random
/// model with 1 to 6 states.
pub fn validate_axioms(kind: AtomKind, opts: &AxiomOptions) -> Result<AxiomReport, IneqError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let sig = Signature::numbered(opts.nvars);
    let sat_opts = SatOptions::default();
    let mut schemas = Vec::new();
    for schema in Schema::ALL {
        let mut rep = SchemaReport { schema, instances: 0, refuted: 0, violations: Vec::new() };
        for _ in 0..opts.samples {
            let inst = instance(&mut rng, kind, schema, opts.nvars, opts.k);
            let nstates = rng.gen_range(1..=6);
            let holds = match kind {
                AtomKind::Weight => eval(&random_prob_model(&mut rng, opts.nvars, nstates), &inst)?,
                AtomKind::Belief => {
                    let focal = rng.gen_range(1..=4);
                    eval(&random_ds_model(&mut rng, opts.nvars, nstates, focal), &inst)?
                }
            };
            rep.instances += 1;
            if !holds {
                rep.violations.push(format!("{}: false on a random model", inst.display(&sig)));
            }
            if opts.refute {
                if sat(&inst.clone().not(), &sat_opts)?.is_sat() {
                    rep.violations.push(format!("{}: negation is satisfiable", inst.display(&sig)));
                } else {
                    rep.refuted += 1;
                }
            }
        }
        schemas.push(rep);
    }
    Ok(AxiomReport { kind, schemas })
}
