use std::collections::BTreeMap;

use anyhow::Result;
use bd_core::Signature;
use ineq_calculus::{
    entails_witness, infer_signature, parse_combo, sat_belief, sat_weight, AtomKind, Combo, SatOptions, SatResult,
    Witness,
};
use num_traits::Zero;
use ratlp::fmt_q;
use serde::{Deserialize, Serialize};
use two_layered::AnyModel;

use crate::json::ModelDoc;
use crate::{usage, Out, SatArgs, Verdict};

/// The answer of `sat-*` and `entail-*`. For entailment the model is a
/// countermodel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SatDoc {
    pub result: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelDoc>,
    /// Belief witnesses also list their Möbius masses on Lindenbaum classes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_mass: Option<BTreeMap<String, String>>,
}

fn options(a: &SatArgs) -> SatOptions {
    SatOptions { normalized: a.normalized, ..SatOptions::default() }
}

fn parse_all(texts: &[String], kind: AtomKind) -> Result<(Vec<Combo>, Signature)> {
    let sig = infer_signature(&texts.join("\n"))?;
    let combos = texts.iter().map(|t| parse_combo(t, &sig)).collect::<Result<Vec<_>, _>>()?;
    for (c, t) in combos.iter().zip(texts) {
        if c.kind() != Some(kind) {
            let want = match kind {
                AtomKind::Weight => "weight atoms w+/w-",
                AtomKind::Belief => "belief atoms b+/b-",
            };
            return Err(usage(format!("`{t}` must use only {want}")));
        }
    }
    Ok((combos, sig))
}

fn witness_doc(w: &Witness, sig: &Signature, result: &str, branch: Option<usize>) -> SatDoc {
    let names = sig.names();
    match w {
        Witness::Weight(p) => SatDoc {
            result: result.into(),
            branch,
            model: Some(ModelDoc::of_model(&AnyModel::Prob(p.clone()), names)),
            class_mass: None,
        },
        Witness::Belief { lindenbaum, mass, model, .. } => {
            let msig =
                Signature::new(names.iter().take(lindenbaum.num_vars()).cloned()).expect("prefix of a signature");
            let classes = mass
                .iter()
                .enumerate()
                .filter(|(_, m)| !m.is_zero())
                .map(|(c, m)| (lindenbaum.representative(c).to_string_with(&msig), fmt_q(m)))
                .collect();
            SatDoc {
                result: result.into(),
                branch,
                model: Some(ModelDoc::of_model(&AnyModel::Ds(model.clone()), names)),
                class_mass: Some(classes),
            }
        }
    }
}

fn emit(doc: &SatDoc, out: &mut Out<'_>) -> Result<()> {
    if out.json {
        return out.emit_json(doc);
    }
    out.line(&doc.result)?;
    if let Some(m) = &doc.model {
        out.emit_json(m)?;
    }
    Ok(())
}

pub fn sat(text: &str, kind: AtomKind, a: &SatArgs, out: &mut Out<'_>) -> Result<Verdict> {
    let (combos, sig) = parse_all(&[text.to_string()], kind)?;
    let c = &combos[0];
    let res = match kind {
        AtomKind::Weight => sat_weight(c, &options(a))?,
        AtomKind::Belief => sat_belief(c, &options(a))?,
    };
    let (doc, verdict) = match &res {
        SatResult::Sat { witness, branch } => (witness_doc(witness, &sig, "sat", Some(*branch)), Verdict::Yes),
        SatResult::Unsat => {
            (SatDoc { result: "unsat".into(), branch: None, model: None, class_mass: None }, Verdict::No)
        }
    };
    emit(&doc, out)?;
    Ok(verdict)
}

pub fn entail(texts: &[String], kind: AtomKind, a: &SatArgs, out: &mut Out<'_>) -> Result<Verdict> {
    let (mut combos, sig) = parse_all(texts, kind)?;
    let alpha = combos.pop().expect("clap requires one formula");
    let (doc, verdict) = match entails_witness(&combos, &alpha, &options(a))? {
        None => (SatDoc { result: "valid".into(), branch: None, model: None, class_mass: None }, Verdict::Yes),
        Some(w) => (witness_doc(&w, &sig, "invalid", None), Verdict::No),
    };
    emit(&doc, out)?;
    Ok(verdict)
}
