//! Equisatisfiability checks for the `•` translation on concrete models.

use std::fmt;

use bd_core::Signature;
use ineq_calculus::{entails_witness, eval, normalize_atoms, parse_combo, AtomKind, Combo, SatOptions, Witness};
use luk_two::TwoPoint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use two_layered::{eval_two_layer, sample_model, AnyModel, TwoLayerFormula};

use crate::{tag_of, to_two_layer, TranslateError};

/// A consequence `premises |= conclusion` between inequality formulas.
#[derive(Debug, Clone)]
pub struct Case {
    pub label: String,
    /// The status the case was curated with.
    pub expect_valid: bool,
    pub premises: Vec<Combo>,
    pub conclusion: Combo,
}

impl Case {
    pub fn parse(
        label: &str,
        expect_valid: bool,
        premises: &[&str],
        conclusion: &str,
        sig: &Signature,
    ) -> Result<Case, TranslateError> {
        Ok(Case {
            label: label.to_string(),
            expect_valid,
            premises: premises.iter().map(|p| parse_combo(p, sig)).collect::<Result<_, _>>()?,
            conclusion: parse_combo(conclusion, sig)?,
        })
    }

    fn kind(&self) -> Option<AtomKind> {
        let k = self.conclusion.kind()?;
        self.premises.iter().all(|p| p.kind() == Some(k)).then_some(k)
    }

    fn nvars(&self) -> usize {
        self.premises.iter().chain([&self.conclusion]).map(Combo::var_bound).max().unwrap_or(0).max(1)
    }
}

#[derive(Debug, Clone)]
pub struct HarnessOptions {
    /// Sampled models searched for a counterexample on the Łukasiewicz side.
    pub trials: usize,
    pub seed: u64,
    pub sat: SatOptions,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions { trials: 200, seed: 0, sat: SatOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub label: String,
    /// The inequality side, decided exactly.
    pub ineq_valid: bool,
    /// For invalid cases: whether the witness model designates every
    /// translated premise and not the translated conclusion.
    pub transferred: Option<bool>,
    /// The first sampled model designating the translated premises but not
    /// the translated conclusion.
    pub luk_counterexample: Option<usize>,
    /// Models among the witness and the samples on which some formula of
    /// the case and its translation disagree.
    pub pointwise_mismatches: usize,
    /// Translated values outside `{(1,0), (0,1)}`.
    pub non_crisp: usize,
}

impl Verdict {
    pub fn agree(&self) -> bool {
        if self.ineq_valid {
            self.luk_counterexample.is_none()
        } else {
            self.transferred == Some(true)
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = if self.ineq_valid { "valid" } else { "invalid" };
        let mut detail = match self.transferred {
            Some(t) => format!("witness transfers: {t}, "),
            None => String::new(),
        };
        detail += &match self.luk_counterexample {
            Some(i) => format!("translated consequence fails on sample {i}"),
            None => "no sampled translated counterexample".to_string(),
        };
        write!(
            f,
            "{} [{}] {side}, {detail}, pointwise mismatches {}, non-crisp {}",
            if self.agree() { "agree" } else { "DISAGREE" },
            self.label,
            self.pointwise_mismatches,
            self.non_crisp
        )
    }
}

struct Translated {
    premises: Vec<(Combo, TwoLayerFormula)>,
    conclusion: (Combo, TwoLayerFormula),
}

/// `(consequence holds, formulas whose two readings differ, non-crisp values)`.
fn check_model<M: models::Uncertain>(m: &M, t: &Translated) -> Result<(bool, bool, usize), TranslateError> {
    let mut mismatch = false;
    let mut non_crisp = 0;
    let mut read = |(c, f): &(Combo, TwoLayerFormula)| -> Result<bool, TranslateError> {
        let v = eval_two_layer(m, f)?;
        if v != TwoPoint::top() && v != TwoPoint::bottom() {
            non_crisp += 1;
        }
        let designated = v == TwoPoint::top();
        mismatch |= designated != eval(m, c)?;
        Ok(designated)
    };
    let mut premises_hold = true;
    for p in &t.premises {
        premises_hold &= read(p)?;
    }
    let conclusion = read(&t.conclusion)?;
    Ok((!premises_hold || conclusion, mismatch, non_crisp))
}

/// Decides the case on the inequality side and tests the translated
/// consequence on the same models: the witness when the case is invalid,
/// and `opts.trials` sampled models in any case.
pub fn equisat_harness(case: &Case, opts: &HarnessOptions) -> Result<Verdict, TranslateError> {
    let kind = case.kind().ok_or(ineq_calculus::IneqError::MixedKinds)?;
    let premises: Vec<Combo> = case.premises.iter().map(normalize_atoms).collect();
    let conclusion = normalize_atoms(&case.conclusion);
    let witness = entails_witness(&premises, &conclusion, &opts.sat)?;
    let pair = |c: &Combo| -> Result<(Combo, TwoLayerFormula), TranslateError> { Ok((c.clone(), to_two_layer(c)?)) };
    let t =
        Translated { premises: premises.iter().map(pair).collect::<Result<_, _>>()?, conclusion: pair(&conclusion)? };

    let mut verdict = Verdict {
        label: case.label.clone(),
        ineq_valid: witness.is_none(),
        transferred: None,
        luk_counterexample: None,
        pointwise_mismatches: 0,
        non_crisp: 0,
    };
    if let Some(w) = &witness {
        let (holds, mismatch, nc) = match w {
            Witness::Weight(m) => check_model(m, &t)?,
            Witness::Belief { model, .. } => check_model(model, &t)?,
        };
        verdict.transferred = Some(!holds);
        verdict.pointwise_mismatches += usize::from(mismatch);
        verdict.non_crisp += nc;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let tag = tag_of(kind);
    for i in 0..opts.trials {
        let m = sample_model(&mut rng, tag, case.nvars(), false);
        let (holds, mismatch, nc) = match &m {
            AnyModel::Prob(m) => check_model(m, &t)?,
            AnyModel::Ds(m) => check_model(m, &t)?,
            AnyModel::DsPl(m) => check_model(m, &t)?,
        };
        if !holds && verdict.luk_counterexample.is_none() {
            verdict.luk_counterexample = Some(i);
        }
        verdict.pointwise_mismatches += usize::from(mismatch);
        verdict.non_crisp += nc;
    }
    Ok(verdict)
}

type Entry<'a> = (&'a str, &'a [&'a str], &'a str);

fn suite(valid: &[Entry], invalid: &[Entry]) -> Vec<Case> {
    let sig = Signature::new(["p", "q", "r"]).expect("distinct names");
    let tagged = valid.iter().map(|e| (true, e)).chain(invalid.iter().map(|e| (false, e)));
    tagged
        .map(|(expect, (label, prem, concl))| {
            Case::parse(label, expect, prem, concl, &sig).expect("suite entries parse")
        })
        .collect()
}

/// Twenty valid and twenty invalid weight consequences over `p, q, r`.
/// The valid ones are instances of the bounds, negation, inclusion-exclusion
/// and monotonicity axioms and their consequences.
pub fn weight_suite() -> Vec<Case> {
    suite(
        &[
            ("w-lower", &[], "w+[p] >= 0"),
            ("w-upper", &[], "w+[p] <= 1"),
            ("w-mono-and", &[], "w+[p] - w+[p & q] >= 0"),
            ("w-mono-or", &[], "w+[p | q] - w+[p] >= 0"),
            ("w-ie", &[], "w+[p | q] + w+[p & q] - w+[p] - w+[q] = 0"),
            ("w-glut-below", &[], "w+[p & -p] - w+[p] <= 0"),
            ("w-distrib", &[], "w+[p & (q | r)] - w+[(p & q) | (p & r)] = 0"),
            ("w-double-neg", &[], "w+[--p] - w+[p] = 0"),
            ("w-up-or", &["w+[p] >= 1"], "w+[p | q] >= 1"),
            ("w-split-and", &["w+[p & q] >= 1"], "w+[p] >= 1 and w+[q] >= 1"),
            ("w-join-and", &["w+[p] >= 1", "w+[q] >= 1"], "w+[p & q] >= 1"),
            ("w-half-or", &["2*w+[p] >= 1"], "2*w+[p | q] >= 1"),
            ("w-transitive", &["w+[p] - w+[q] >= 0", "w+[q] - w+[r] >= 0"], "w+[p] - w+[r] >= 0"),
            ("w-null-and", &["w+[p] + w+[q] <= 0"], "w+[p & q] <= 0"),
            ("w-positive-or", &["w+[p] > 0"], "w+[p | q] > 0"),
            ("w-implication", &[], "w+[p] >= 1 -> w+[p | q] >= 1"),
            ("w-contrapose", &["not w+[p | q] >= 1"], "not w+[p] >= 1"),
            ("w-case-split", &["w+[p] >= 1 or w+[q] >= 1"], "w+[p | q] >= 1"),
            ("w-overlap", &[], "w+[p] + w+[q] - w+[p | q] >= 0"),
            ("w-scaled", &["3*w+[p] - 2*w+[q] >= 1"], "3*w+[p] - 2*w+[p & q] >= 1"),
        ],
        &[
            ("w-no-glut-bound", &[], "w+[p] + w+[-p] <= 1"),
            ("w-no-gap-bound", &[], "w+[p] + w+[-p] >= 1"),
            ("w-excluded-middle", &[], "w+[p | -p] >= 1"),
            ("w-non-contradiction", &[], "w+[p & -p] <= 0"),
            ("w-sure-not-false", &["w+[p] >= 1"], "w+[-p] <= 0"),
            ("w-irrelevant", &["w+[p] >= 1"], "w+[q] >= 1"),
            ("w-or-to-left", &["w+[p | q] >= 1"], "w+[p] >= 1"),
            ("w-positive-to-sure", &["w+[p] > 0"], "w+[p] >= 1"),
            ("w-explosion", &["w+[p & -p] >= 1"], "w+[q] >= 1"),
            ("w-order", &[], "w+[p] - w+[q] >= 0"),
            ("w-sure-and", &["w+[p] >= 1"], "w+[p & q] >= 1"),
            ("w-not-false-to-sure", &["w+[-p] <= 0"], "w+[p] >= 1"),
            ("w-glut-or", &[], "w+[(p & -p) | q] - w+[q] <= 0"),
            ("w-sum-to-or", &["w+[p] + w+[q] >= 1"], "w+[p | q] >= 1"),
            ("w-unsure-to-false", &["not w+[p] >= 1"], "w+[-p] > 0"),
            ("w-crisp", &[], "w+[p] >= 1 or w+[p] <= 0"),
            ("w-equal-to-and", &["w+[p] - w+[q] = 0"], "w+[p & q] - w+[p] = 0"),
            ("w-null-to-false", &["w+[p] <= 0"], "w+[-p] >= 1"),
            ("w-half-to-sure", &["2*w+[p] >= 1"], "w+[p] >= 1"),
            ("w-syllogism", &["w+[-p | q] >= 1", "w+[p] >= 1"], "w+[q] >= 1"),
        ],
    )
}

/// Twenty valid and twenty invalid belief consequences over `p, q`, the
/// variable cap of the belief procedure. The valid ones are instances of
/// the bounds, monotonicity and 2- and 3-monotonicity axioms and their
/// consequences.
pub fn belief_suite() -> Vec<Case> {
    suite(
        &[
            ("b-lower", &[], "b+[p] >= 0"),
            ("b-upper", &[], "b+[p] <= 1"),
            ("b-mono-and", &[], "b+[p] - b+[p & q] >= 0"),
            ("b-mono-or", &[], "b+[p | q] - b+[p] >= 0"),
            ("b-two-monotone", &[], "b+[p | q] + b+[p & q] - b+[p] - b+[q] >= 0"),
            (
                "b-three-monotone",
                &[],
                "b+[p | q | -p] - b+[p] - b+[q] - b+[-p] + b+[p & q] + b+[p & -p] + b+[q & -p] - b+[p & q & -p] >= 0",
            ),
            ("b-double-neg", &[], "b+[--p] - b+[p] = 0"),
            ("b-up-or", &["b+[p] >= 1"], "b+[p | q] >= 1"),
            ("b-split-and", &["b+[p & q] >= 1"], "b+[p] >= 1 and b+[q] >= 1"),
            ("b-join-and", &["b+[p] >= 1", "b+[q] >= 1"], "b+[p & q] >= 1"),
            ("b-positive-or", &["b+[p] > 0"], "b+[p | q] > 0"),
            ("b-implication", &[], "b+[p] >= 1 -> b+[p | q] >= 1"),
            ("b-transitive", &["b+[p] - b+[q] >= 0", "b+[q] - b+[-p] >= 0"], "b+[p] - b+[-p] >= 0"),
            ("b-null-or", &["b+[p | q] <= 0"], "b+[p] + b+[q] <= 0"),
            ("b-contrapose", &["not b+[p | q] >= 1"], "not b+[p] >= 1"),
            ("b-distrib", &[], "b+[p & (q | -p)] - b+[(p & q) | (p & -p)] = 0"),
            ("b-case-split", &["b+[p] >= 1 or b+[q] >= 1"], "b+[p | q] >= 1"),
            ("b-half-or", &["2*b+[p] >= 1"], "2*b+[p | q] >= 1"),
            ("b-two-monotone-glut", &[], "b+[p | -p] + b+[p & -p] - b+[p] - b+[-p] >= 0"),
            ("b-sum-to-and", &["b+[p] + b+[q] >= 2"], "b+[p & q] >= 1"),
        ],
        &[
            ("b-no-ignorance", &[], "b+[p] + b+[-p] >= 1"),
            ("b-no-glut-bound", &[], "b+[p] + b+[-p] <= 1"),
            ("b-additive", &[], "b+[p | q] - b+[p] - b+[q] + b+[p & q] <= 0"),
            ("b-sure-not-false", &["b+[p] >= 1"], "b+[-p] <= 0"),
            ("b-irrelevant", &["b+[p] >= 1"], "b+[q] >= 1"),
            ("b-or-to-either", &["b+[p | q] >= 1"], "b+[p] >= 1 or b+[q] >= 1"),
            ("b-positive-to-sure", &["b+[p] > 0"], "b+[p] >= 1"),
            ("b-explosion", &["b+[p & -p] >= 1"], "b+[q] >= 1"),
            ("b-order", &[], "b+[p] - b+[q] >= 0"),
            ("b-sure-and", &["b+[p] >= 1"], "b+[p & q] >= 1"),
            ("b-unsure-to-false", &["not b+[p] >= 1"], "b+[-p] > 0"),
            ("b-crisp", &[], "b+[p] >= 1 or b+[p] <= 0"),
            ("b-null-to-false", &["b+[p] <= 0"], "b+[-p] >= 1"),
            ("b-half-to-sure", &["2*b+[p] >= 1"], "b+[p] >= 1"),
            ("b-syllogism", &["b+[-p | q] >= 1", "b+[p] >= 1"], "b+[q] >= 1"),
            ("b-excluded-middle", &[], "b+[p | -p] >= 1"),
            ("b-sum-to-or", &["b+[p] + b+[q] >= 1"], "b+[p | q] >= 1"),
            ("b-subadditive", &[], "b+[p] + b+[q] - b+[p | q] >= 0"),
            ("b-equal-to-and", &["b+[p] - b+[q] = 0"], "b+[p & q] - b+[p] = 0"),
            ("b-non-contradiction", &[], "b+[p & -p] <= 0"),
        ],
    )
}
