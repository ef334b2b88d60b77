use std::path::Path;

use anyhow::{Context, Result};
use ineq_calculus::axioms::{validate_axioms, AxiomOptions};
use ineq_calculus::{parse_combo_auto, AtomKind};
use luk_two::axioms::{axioms, instantiate};
use luk_two::{classify as classify_point, parse_outer, Logic, LukError, Outer, TwoPoint, Valuation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratlp::q;
use serde::{Deserialize, Serialize};
use translations::{translate as run_translation, Direction, Expr};
use two_layered::{
    eval_two_layer as eval_tl, parse_two_layer, parse_two_layer_auto, soundness_suite, SuiteOptions, Tag,
};

use crate::json::{load, point_doc, valuation, ModelDoc, ValuationDoc};
use crate::{usage, Out, Verdict};

#[derive(Debug, Serialize, Deserialize)]
pub struct ValueDoc {
    pub value: [String; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub designated: Option<bool>,
    pub class: String,
}

fn show_value(v: &TwoPoint, designated: Option<bool>, out: &mut Out<'_>) -> Result<()> {
    let class = classify_point(v).to_string();
    if out.json {
        return out.emit_json(&ValueDoc { value: point_doc(v), designated, class });
    }
    out.line(format!("({}, {})", out.q(&v.first), out.q(&v.second)))?;
    if let Some(d) = designated {
        out.line(if d { "designated" } else { "not designated" })?;
    }
    out.line(class)
}

fn parse_logic(s: &str) -> Result<Logic> {
    s.parse().map_err(usage)
}

fn parse_tag(s: &str) -> Result<Tag> {
    s.parse().map_err(usage)
}

pub fn eval_luk(text: &str, logic: &str, val: &str, out: &mut Out<'_>) -> Result<Verdict> {
    let logic = parse_logic(logic)?;
    let f = parse_outer(text, logic)?;
    let doc: ValuationDoc = load(val)?;
    let v = valuation(&doc)?;
    let value = f.eval_with(logic, &|a: &String| v.get(a).cloned().ok_or_else(|| LukError::MissingAtom(a.clone())))?;
    show_value(&value, Some(logic.designated(&value)), out)?;
    Ok(Verdict::Yes)
}

pub fn eval_two_layer(text: &str, logic: &str, model: &str, out: &mut Out<'_>) -> Result<Verdict> {
    let tag = parse_tag(logic)?;
    let doc: ModelDoc = load(model)?;
    let sig = doc.signature()?;
    let m = doc.uncertain()?;
    let f = parse_two_layer(text, tag, &sig)?;
    let value = eval_tl(&m, &f)?;
    show_value(&value, Some(tag.logic().designated(&value)), out)?;
    Ok(Verdict::Yes)
}

pub fn classify(first: &str, second: &str, out: &mut Out<'_>) -> Result<Verdict> {
    let v = TwoPoint::parse(first, second)?;
    show_value(&v, None, out)?;
    Ok(Verdict::Yes)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SchemaDoc {
    pub label: String,
    pub instances: usize,
    pub violations: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AxiomsDoc {
    pub logic: String,
    pub trials: usize,
    pub seed: u64,
    pub ok: bool,
    pub schemas: Vec<SchemaDoc>,
}

const ATOMS: [&str; 3] = ["p", "q", "r"];

fn random_point(rng: &mut ChaCha8Rng) -> TwoPoint {
    let mut c = || match rng.gen_range(0..6) {
        0 => q(0, 1),
        1 => q(1, 1),
        _ => {
            let d = rng.gen_range(1..=12);
            q(rng.gen_range(0..=d), d)
        }
    };
    let (x, y) = (c(), c());
    TwoPoint::new(x, y).expect("coordinates lie in [0,1]")
}

fn random_outer(rng: &mut ChaCha8Rng, logic: Logic, depth: usize) -> Outer<String> {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..8) {
            0 => Outer::Top,
            1 => Outer::Bot,
            _ => Outer::Atom(ATOMS[rng.gen_range(0..ATOMS.len())].to_string()),
        };
    }
    let x = random_outer(rng, logic, depth - 1);
    let choice = rng.gen_range(0..10);
    let mut y = || random_outer(rng, logic, depth - 1);
    match (choice, logic) {
        (0, _) => x.neg(),
        (1, _) => x.sim(),
        (2, Logic::L2) => x.delta(),
        (2, Logic::NL) => x.neg().sim(),
        (3, _) => x.and(y()),
        (4, _) => x.or(y()),
        (5, _) => x.fus(y()),
        (6, _) => x.oplus(y()),
        (7, _) => x.ominus(y()),
        (_, Logic::L2) => x.imp(y()),
        (_, Logic::NL) => x.wimp(y()),
    }
}

/// Every axiom schema of `logic`, instantiated with random formulas and
/// evaluated at a random valuation, `trials` times.
fn outer_axioms(logic: Logic, trials: usize, seed: u64) -> Vec<SchemaDoc> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    axioms(logic)
        .into_iter()
        .map(|(name, schema)| {
            let mut bad = 0;
            for _ in 0..trials {
                let args: Vec<Outer<String>> = (0..3).map(|_| random_outer(&mut rng, logic, 2)).collect();
                let inst = instantiate(&schema, &args);
                let v: Valuation<String> = ATOMS.iter().map(|a| (a.to_string(), random_point(&mut rng))).collect();
                let value = inst.eval_with(logic, &|a: &String| v.get(a).cloned().ok_or(())).expect("all atoms valued");
                if !logic.designated(&value) {
                    bad += 1;
                }
            }
            SchemaDoc { label: name.to_string(), instances: trials, violations: bad }
        })
        .collect()
}

pub fn check_axioms(logic: &str, trials: usize, bel_leq_pl: bool, seed: u64, out: &mut Out<'_>) -> Result<Verdict> {
    let name = logic.to_ascii_lowercase();
    let mut details = None;
    let schemas = match name.as_str() {
        "l2" | "nl" => outer_axioms(parse_logic(&name)?, trials, seed),
        "weight" | "belief" => {
            let kind = if name == "weight" { AtomKind::Weight } else { AtomKind::Belief };
            let rep = validate_axioms(kind, &AxiomOptions { samples: trials, seed, ..AxiomOptions::default() })?;
            details = Some(rep.to_string());
            rep.schemas
                .iter()
                .map(|s| SchemaDoc {
                    label: s.schema.label(kind),
                    instances: s.instances,
                    violations: s.violations.len(),
                })
                .collect()
        }
        other => {
            let tag = parse_tag(other).map_err(|_| {
                usage(format!("unknown logic `{other}` (expected l2, nl, pr, bel-l2, bel-nl, weight or belief)"))
            })?;
            let opts = SuiteOptions { bel_leq_pl, seed, ..SuiteOptions::default() };
            let rep = soundness_suite(tag, &opts, trials)?;
            details = Some(rep.to_string());
            rep.stats
                .iter()
                .map(|(l, s)| SchemaDoc { label: l.clone(), instances: s.instances, violations: s.violations })
                .collect()
        }
    };
    let ok = schemas.iter().all(|s| s.violations == 0);
    if out.json {
        out.emit_json(&AxiomsDoc { logic: name, trials, seed, ok, schemas })?;
    } else {
        match details {
            Some(d) => out.line(d.trim_end())?,
            None => {
                for s in &schemas {
                    let status = if s.violations == 0 { "ok" } else { "VIOLATED" };
                    out.line(format!(
                        "{:<8} {status} ({} instances, {} violations)",
                        s.label, s.instances, s.violations
                    ))?;
                }
            }
        }
        out.line(if ok { "all axioms hold" } else { "some axioms fail" })?;
    }
    Ok(Verdict::from_bool(ok))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TranslationDoc {
    pub direction: String,
    pub input: String,
    pub output: String,
}

pub fn translate(dir: &str, input: Option<&Path>, inline: Option<&str>, out: &mut Out<'_>) -> Result<Verdict> {
    let dir: Direction = dir.parse().map_err(usage)?;
    let text = match (input, inline) {
        (Some(p), _) => std::fs::read_to_string(p).with_context(|| format!("cannot read `{}`", p.display()))?,
        (None, Some(t)) => t.to_string(),
        (None, None) => return Err(usage("give a formula or --in FILE")),
    };
    let text = text.trim().to_string();
    let (expr, sig) = if dir.from_inequalities() {
        let (c, sig) = parse_combo_auto(&text)?;
        (Expr::Ineq(c), sig)
    } else {
        let (f, sig) = parse_two_layer_auto(&text, dir.tag())?;
        (Expr::Luk(f), sig)
    };
    let shown = match run_translation(&expr, dir)? {
        Expr::Ineq(c) => c.display(&sig).to_string(),
        Expr::Luk(f) => f.render(&sig),
    };
    if out.json {
        out.emit_json(&TranslationDoc { direction: dir.to_string(), input: text, output: shown })?;
    } else {
        out.line(shown)?;
    }
    Ok(Verdict::Yes)
}
