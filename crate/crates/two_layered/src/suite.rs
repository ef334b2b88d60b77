//! Modal axiom instances over a Lindenbaum algebra and the soundness and
//! consequence harnesses that evaluate them on sampled models.

use std::collections::BTreeMap;
use std::fmt;

use bd_core::{entails, Formula, Lindenbaum, Signature};
use luk_two::{Outer, TwoPoint};
use models::sample::{random_ds_model, random_dspl_model, random_prob_model};
use models::{BDModel, DSModel, DSplModel, ProbBDModel, Uncertain};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratlp::Q;

use crate::generate::{monotonicity_axiom, Sequence};
use crate::{b, pl, pr, ModalAtom, Modality, Tag, TwoLayerError, TwoLayerFormula};

/// A model of any of the three kinds the tags are interpreted over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyModel {
    Prob(ProbBDModel),
    Ds(DSModel),
    DsPl(DSplModel),
}

impl Uncertain for AnyModel {
    fn frame(&self) -> &BDModel {
        match self {
            AnyModel::Prob(m) => m.frame(),
            AnyModel::Ds(m) => m.frame(),
            AnyModel::DsPl(m) => m.frame(),
        }
    }

    fn prob(&self, set: u64) -> Option<Q> {
        match self {
            AnyModel::Prob(m) => m.prob(set),
            _ => None,
        }
    }

    fn bel(&self, set: u64) -> Option<Q> {
        match self {
            AnyModel::Prob(m) => m.bel(set),
            AnyModel::Ds(m) => m.bel(set),
            AnyModel::DsPl(m) => m.bel(set),
        }
    }

    fn pl(&self, set: u64) -> Option<Q> {
        match self {
            AnyModel::DsPl(m) => m.pl(set),
            _ => None,
        }
    }
}

/// A random model of the kind `tag` is interpreted over, with 1 to 4
/// states and up to 4 focal sets.
pub fn sample_model<R: Rng>(rng: &mut R, tag: Tag, nvars: usize, bel_leq_pl: bool) -> AnyModel {
    let nstates = rng.gen_range(1..=4);
    let focal = rng.gen_range(1..=4);
    match tag {
        Tag::PrL2 => AnyModel::Prob(random_prob_model(rng, nvars, nstates)),
        Tag::BelL2 => AnyModel::Ds(random_ds_model(rng, nvars, nstates, focal)),
        Tag::BelNL => AnyModel::DsPl(random_dspl_model(rng, nvars, nstates, focal, bel_leq_pl)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOptions {
    pub nvars: usize,
    /// Use BD* as the inner logic; adds the `Pr T` / `B T` / `Pl T` axioms.
    pub with_constants: bool,
    /// Largest n for the αₙ/βₙ instances.
    pub max_n: usize,
    /// Add `B φ ~> Pl φ` (NŁ only) and sample models with `bel <= pl`.
    pub bel_leq_pl: bool,
    /// Random class tuples per n for αₙ/βₙ, on top of all literal tuples.
    pub class_samples: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { nvars: 2, with_constants: false, max_n: 3, bel_leq_pl: false, class_samples: 16, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomInstance {
    pub label: String,
    pub formula: TwoLayerFormula,
}

fn substitute(f: &Formula, args: &[Formula]) -> Formula {
    match f {
        Formula::Var(v) => args[*v].clone(),
        Formula::Top | Formula::Bot => f.clone(),
        Formula::Not(x) => substitute(x, args).not(),
        Formula::And(x, y) => substitute(x, args).and(substitute(y, args)),
        Formula::Or(x, y) => substitute(x, args).or(substitute(y, args)),
    }
}

/// Tuples of classes: every tuple of literal classes, then random ones.
fn class_tuples(lb: &Lindenbaum, n: usize, samples: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let lits: Vec<usize> =
        (0..lb.num_vars()).flat_map(|v| [lb.literal_class(v, false), lb.literal_class(v, true)]).collect();
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t| lits.iter().map(move |&l| [t.clone(), vec![l]].concat())).collect();
    }
    for _ in 0..samples {
        out.push((0..n).map(|_| rng.gen_range(0..lb.len())).collect());
    }
    out
}

/// Every modal axiom of `tag` instantiated over the Lindenbaum classes:
/// monotonicity for each entailed pair, the negation axiom for each
/// class, inclusion-exclusion for each unordered pair (Pr), and αₙ/βₙ
/// for n up to `max_n`.
pub fn modal_axiom_suite(tag: Tag, opts: &SuiteOptions) -> Result<(Lindenbaum, Vec<AxiomInstance>), TwoLayerError> {
    let lb =
        Lindenbaum::new(opts.nvars, opts.with_constants).map_err(|e| TwoLayerError::Inner { pos: 0, source: e })?;
    let reps: Vec<Formula> = (0..lb.len()).map(|c| lb.representative(c)).collect();
    let mut out = Vec::new();
    let mut push = |label: &str, f: Outer<ModalAtom>| -> Result<(), TwoLayerError> {
        out.push(AxiomInstance { label: label.to_string(), formula: TwoLayerFormula::new(tag, f)? });
        Ok(())
    };
    let main = if tag == Tag::PrL2 { pr } else { b };

    for x in &reps {
        for y in &reps {
            if !entails(x, y) {
                continue;
            }
            match tag {
                Tag::PrL2 | Tag::BelL2 => push("mono", main(x.clone()).imp(main(y.clone())))?,
                Tag::BelNL => {
                    push("mono", b(x.clone()).simp(b(y.clone())))?;
                    push("mono", pl(x.clone()).simp(pl(y.clone())))?;
                }
            }
        }
    }
    for x in &reps {
        match tag {
            Tag::PrL2 | Tag::BelL2 => push("neg", main(x.clone().not()).equiv(main(x.clone()).neg()))?,
            Tag::BelNL => push("neg", b(x.clone().not()).sequiv(pl(x.clone()).neg()))?,
        }
    }
    if tag == Tag::PrL2 {
        for (i, x) in reps.iter().enumerate() {
            for y in &reps[i..] {
                let rhs = pr(x.clone()).ominus(pr(x.clone().and(y.clone()))).oplus(pr(y.clone()));
                push("ie", pr(x.clone().or(y.clone())).equiv(rhs))?;
            }
        }
    }
    if opts.with_constants {
        match tag {
            Tag::PrL2 => push("top", pr(Formula::Top))?,
            Tag::BelL2 => push("top", b(Formula::Top))?,
            Tag::BelNL => {
                push("top", b(Formula::Top))?;
                push("top", pl(Formula::Top))?;
            }
        }
    }
    if tag == Tag::BelNL && opts.bel_leq_pl {
        for x in &reps {
            push("bel-pl", b(x.clone()).wimp(pl(x.clone())))?;
        }
    }
    if tag != Tag::PrL2 {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut seqs = vec![Sequence::BelGamma];
        if tag == Tag::BelNL {
            seqs.push(Sequence::PlSigma);
        }
        for n in 1..=opts.max_n {
            for &seq in &seqs {
                let generic = monotonicity_axiom(tag, seq, n)?.into_outer();
                let label = match seq {
                    Sequence::BelGamma => format!("alpha{n}"),
                    Sequence::PlSigma => format!("beta{n}"),
                };
                for tuple in class_tuples(&lb, n, opts.class_samples, &mut rng) {
                    let args: Vec<Formula> = tuple.iter().map(|&c| reps[c].clone()).collect();
                    let inst =
                        generic.map_atoms(&|a: &ModalAtom| ModalAtom::new(a.modality, substitute(&a.inner, &args)));
                    push(&label, inst)?;
                }
            }
        }
    }
    Ok((lb, out))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelStats {
    pub instances: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub label: String,
    pub formula: String,
    pub trial: usize,
    pub value: TwoPoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoundnessReport {
    pub tag: Tag,
    pub trials: usize,
    pub stats: BTreeMap<String, LabelStats>,
    /// The first few violations, in evaluation order.
    pub examples: Vec<Violation>,
}

const MAX_EXAMPLES: usize = 8;

impl SoundnessReport {
    pub fn violations(&self) -> usize {
        self.stats.values().map(|s| s.violations).sum()
    }

    pub fn ok(&self) -> bool {
        self.violations() == 0
    }

    pub fn label_ok(&self, label: &str) -> bool {
        self.stats.get(label).is_some_and(|s| s.violations == 0)
    }
}

impl fmt::Display for SoundnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} on {} models", self.tag, self.trials)?;
        for (label, s) in &self.stats {
            writeln!(f, "  {label:<8} {:>6} instances  {:>6} violations", s.instances, s.violations)?;
        }
        for v in &self.examples {
            writeln!(f, "  violated [{}] model #{}: {} = {}", v.label, v.trial, v.formula, v.value)?;
        }
        Ok(())
    }
}

/// Evaluates every instance on every model. Atoms are looked up by
/// Lindenbaum class, so each model computes its measures once.
pub fn check_instances<M: Uncertain>(
    tag: Tag,
    lb: &Lindenbaum,
    instances: &[AxiomInstance],
    models: &[M],
) -> Result<SoundnessReport, TwoLayerError> {
    let sig = Signature::numbered(lb.num_vars());
    let compiled: Vec<Outer<(Modality, usize)>> = instances
        .iter()
        .map(|inst| {
            inst.formula.outer().map_atoms(&|a: &ModalAtom| {
                (a.modality, lb.class_of(&a.inner).expect("inner formulas lie in the algebra"))
            })
        })
        .collect();
    let reps: Vec<Formula> = (0..lb.len()).map(|c| lb.representative(c)).collect();
    let used: Vec<Modality> =
        [Modality::Pr, Modality::B, Modality::Pl].into_iter().filter(|m| tag.allows(*m)).collect();

    let mut stats: BTreeMap<String, LabelStats> = BTreeMap::new();
    for inst in instances {
        stats.entry(inst.label.clone()).or_default().instances += 1;
    }
    let mut examples = Vec::new();
    let logic = tag.logic();
    for (trial, model) in models.iter().enumerate() {
        let mut table: BTreeMap<(Modality, usize), TwoPoint> = BTreeMap::new();
        for &m in &used {
            for (c, rep) in reps.iter().enumerate() {
                table.insert((m, c), tag.atom_value(model, &ModalAtom::new(m, rep.clone()))?);
            }
        }
        for (inst, f) in instances.iter().zip(&compiled) {
            let v = f.eval_with(logic, &|a| Ok::<_, TwoLayerError>(table[a].clone()))?;
            if !logic.designated(&v) {
                stats.get_mut(&inst.label).expect("label counted").violations += 1;
                if examples.len() < MAX_EXAMPLES {
                    examples.push(Violation {
                        label: inst.label.clone(),
                        formula: inst.formula.render(&sig),
                        trial,
                        value: v,
                    });
                }
            }
        }
    }
    Ok(SoundnessReport { tag, trials: models.len(), stats, examples })
}

/// Generates the suite of `tag` and checks it on `trials` seeded random
/// models.
pub fn soundness_suite(tag: Tag, opts: &SuiteOptions, trials: usize) -> Result<SoundnessReport, TwoLayerError> {
    let (lb, instances) = modal_axiom_suite(tag, opts)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let models: Vec<AnyModel> = (0..trials).map(|_| sample_model(&mut rng, tag, opts.nvars, opts.bel_leq_pl)).collect();
    check_instances(tag, &lb, &instances, &models)
}

/// The first model on which every premise is designated and the
/// conclusion is not.
pub fn find_counterexample<M: Uncertain>(
    premises: &[TwoLayerFormula],
    conclusion: &TwoLayerFormula,
    models: &[M],
) -> Result<Option<usize>, TwoLayerError> {
    for (i, m) in models.iter().enumerate() {
        let mut all = true;
        for p in premises {
            if !crate::holds_in(m, p)? {
                all = false;
                break;
            }
        }
        if all && !crate::holds_in(m, conclusion)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
