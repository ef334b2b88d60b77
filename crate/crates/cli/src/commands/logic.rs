use anyhow::{bail, Result};
use bd_core::normal::normalize;
use bd_core::semantics::counter_state;
use bd_core::{all_lits, entails, fdnf, lits, parse_bd, Lindenbaum, NormalForm, Signature};
use models::BDModel;
use serde::{Deserialize, Serialize};

use crate::json::{infer_vars, signature, ModelDoc};
use crate::{usage, Out, Verdict};

fn sig_for(vars: &[String], texts: &[&str]) -> Result<Signature> {
    if vars.is_empty() {
        signature(&infer_vars(texts.iter().copied()))
    } else {
        signature(vars)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EntailDoc {
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counter_state: Option<String>,
}

pub fn entail(premise: &str, conclusion: &str, vars: &[String], out: &mut Out<'_>) -> Result<Verdict> {
    let sig = sig_for(vars, &[premise, conclusion])?;
    let phi = parse_bd(premise, &sig, true)?;
    let psi = parse_bd(conclusion, &sig, true)?;
    let valid = entails(&phi, &psi);
    let counter = if valid { None } else { counter_state(&phi, &psi, sig.len()).map(|s| sig.fmt_lits(s)) };
    if out.json {
        out.emit_json(&EntailDoc { valid, counter_state: counter })?;
    } else if valid {
        out.line("valid")?;
    } else {
        out.line("invalid")?;
        if let Some(s) = counter {
            out.line(format!("counter-state: {s}"))?;
        }
    }
    Ok(Verdict::from_bool(valid))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NormalFormDoc {
    pub form: String,
    pub input: String,
    pub formula: String,
}

pub fn normal_form(
    text: &str,
    form: &str,
    lit_text: Option<&str>,
    consts: bool,
    vars: &[String],
    out: &mut Out<'_>,
) -> Result<Verdict> {
    let sig = sig_for(vars, &[text, lit_text.unwrap_or("")])?;
    let f = parse_bd(text, &sig, true)?;
    let form_lc = form.to_ascii_lowercase();
    let result = if form_lc == "fdnf" {
        let x = match lit_text {
            Some(t) => sig.parse_lits(t)?,
            None => all_lits(sig.len()),
        };
        fdnf(&f, x, consts || f.has_constants(), &sig)?.to_formula()
    } else {
        if lit_text.is_some() || consts {
            return Err(usage("--lits and --consts only apply to --form fdnf"));
        }
        let nf: NormalForm =
            form_lc.parse().map_err(|e: String| usage(format!("{e} (expected nnf, dnf, cnf, idnf or fdnf)")))?;
        normalize(&f, nf)
    };
    let shown = result.to_string_with(&sig);
    if out.json {
        out.emit_json(&NormalFormDoc { form: form_lc, input: text.to_string(), formula: shown })?;
    } else {
        out.line(shown)?;
    }
    Ok(Verdict::Yes)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LindenbaumDoc {
    pub vars: Vec<String>,
    pub constants: bool,
    pub classes: Vec<String>,
}

pub fn lindenbaum(vars: &[String], consts: bool, out: &mut Out<'_>) -> Result<Verdict> {
    let sig = signature(vars)?;
    let lb = Lindenbaum::new(sig.len(), consts)?;
    let classes: Vec<String> = (0..lb.len()).map(|c| lb.representative(c).to_string_with(&sig)).collect();
    if out.json {
        out.emit_json(&LindenbaumDoc { vars: vars.to_vec(), constants: consts, classes })?;
    } else {
        out.line(format!("{} classes", classes.len()))?;
        for (i, c) in classes.iter().enumerate() {
            out.line(format!("{i:>4}  {c}"))?;
        }
    }
    Ok(Verdict::Yes)
}

pub fn canonical_model(vars: &[String], out: &mut Out<'_>) -> Result<Verdict> {
    let sig = signature(vars)?;
    if sig.is_empty() {
        bail!("give at least one variable");
    }
    let m = BDModel::canonical(sig.len())?;
    if out.json {
        out.emit_json(&ModelDoc::frame(&m, vars))?;
    } else {
        out.line(format!("{} states", m.num_states()))?;
        for w in 0..m.num_states() {
            let ls: Vec<String> = lits(m.state_lits(w)).map(|l| sig.lit_name(l)).collect();
            out.line(format!("{:>4}  {{{}}}", m.state_names()[w], ls.join(", ")))?;
        }
    }
    Ok(Verdict::Yes)
}
