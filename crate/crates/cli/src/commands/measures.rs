use anyhow::{bail, Result};
use lattice_measures::{
    check_measure, combine as combine_masses, dual_measure, mobius_transform, zeta, Algebra, Lattice, MassFunction,
    Role, Rule,
};
use num_traits::Signed;
use ratlp::{fmt_q, Q};
use serde::{Deserialize, Serialize};

use crate::json::{load, value_map, AlgebraDoc, FiniteSpace, FreeSpace, FunctionDoc, MassDoc, Num};
use crate::{usage, Out, Verdict};

pub fn mobius(input: &str, inverse: bool, out: &mut Out<'_>) -> Result<Verdict> {
    let doc: FunctionDoc = load(input)?;
    let space = FiniteSpace::new(&doc.lattice)?;
    let result = if inverse {
        let mass = doc.mass.as_ref().ok_or_else(|| usage("--inverse reads the `mass` field"))?;
        let values = zeta(&space.sparse(mass)?, &space.lat);
        FunctionDoc {
            lattice: doc.lattice.clone(),
            role: doc.role,
            values: Some(value_map(&space, &values, false)),
            mass: None,
        }
    } else {
        let values = doc.measure(&space)?.values;
        let mass = mobius_transform(&values, &space.lat);
        FunctionDoc {
            lattice: doc.lattice.clone(),
            role: doc.role,
            values: None,
            mass: Some(value_map(&space, &mass, true)),
        }
    };
    if out.json {
        out.emit_json(&result)?;
    } else {
        let (label, map) = match (&result.values, &result.mass) {
            (Some(v), _) => ("value", v),
            (None, Some(m)) => ("mass", m),
            (None, None) => unreachable!("one side is always filled"),
        };
        out.line(format!("{label} on {} elements", space.lat.len()))?;
        let mut rows: Vec<(usize, &Num)> =
            map.iter().map(|(k, v)| Ok((space.element(k)?, v))).collect::<Result<_>>()?;
        rows.sort_by_key(|(x, _)| *x);
        for (x, v) in rows {
            out.line(format!("  {:<24} {}", space.name(x), out.q(&v.value()?)))?;
        }
    }
    Ok(Verdict::Yes)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CheckDoc {
    pub ok: bool,
    pub kmax: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
    /// Whether the Möbius mass of the belief side is nonnegative, which
    /// certifies total monotonicity. Absent when no dual exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mobius_nonnegative: Option<bool>,
}

pub fn check(input: &str, kmax: usize, out: &mut Out<'_>) -> Result<Verdict> {
    let doc: FunctionDoc = load(input)?;
    let space = FiniteSpace::new(&doc.lattice)?;
    let f = doc.measure(&space)?;
    let report = check_measure(&f, &space.lat, kmax);
    let bel = match f.role {
        Role::Belief => Some(f.clone()),
        Role::Plausibility => dual_measure(&f, &space.lat).ok(),
    };
    let nonneg = bel.map(|b| mobius_transform(&b.values, &space.lat).iter().all(|m| !m.is_negative()));
    let ok = report.ok && nonneg != Some(false);
    let violation = match (&report.violation, nonneg) {
        (Some(_), _) => Some(report.describe(&space.lat)),
        (None, Some(false)) => Some("the Möbius mass has a negative entry".to_string()),
        _ => None,
    };
    if out.json {
        out.emit_json(&CheckDoc { ok, kmax, violation, mobius_nonnegative: nonneg })?;
    } else {
        let what = match f.role {
            Role::Belief => "belief",
            Role::Plausibility => "plausibility",
        };
        match violation {
            None => out.line(format!("ok: a {what} function (k-monotone up to {kmax}, nonnegative Möbius mass)"))?,
            Some(v) => out.line(format!("not a {what} function: {v}"))?,
        }
    }
    Ok(Verdict::from_bool(ok))
}

fn default_algebra(doc: &AlgebraDoc) -> Algebra {
    match doc {
        AlgebraDoc::Powerset { .. } => Algebra::Powerset,
        AlgebraDoc::DemorganFree { .. } | AlgebraDoc::Lindenbaum { constants: false, .. } => Algebra::DeMorganFree,
        _ => Algebra::DeMorganBounded,
    }
}

fn merge_algebras(a: &AlgebraDoc, b: &AlgebraDoc) -> Result<AlgebraDoc> {
    use AlgebraDoc::*;
    Ok(match (a, b) {
        (DemorganFree { vars: x }, DemorganFree { vars: y }) if x.is_empty() || y.is_empty() || x == y => {
            DemorganFree { vars: if x.is_empty() { y.clone() } else { x.clone() } }
        }
        (DemorganBounded { vars: x }, DemorganBounded { vars: y }) if x.is_empty() || y.is_empty() || x == y => {
            DemorganBounded { vars: if x.is_empty() { y.clone() } else { x.clone() } }
        }
        (x, y) if x == y => x.clone(),
        _ => bail!("the two mass functions live on different algebras"),
    })
}

fn run_combine<L: Lattice>(
    m1: &MassFunction<L::Elem>,
    m2: &MassFunction<L::Elem>,
    rule: Rule,
    algebra: Algebra,
    lat: &L,
    name: impl Fn(&L::Elem) -> String,
    queries: &[(String, L::Elem)],
) -> Result<(Vec<(String, Q)>, Vec<(String, Q)>)> {
    let m = combine_masses(m1, m2, rule, algebra, lat)?;
    let entries = m.iter().map(|(e, v)| (name(e), v.clone())).collect();
    let beliefs = queries.iter().map(|(t, e)| (t.clone(), m.belief(lat, e))).collect();
    Ok((entries, beliefs))
}

pub fn combine(
    m1: &str,
    m2: &str,
    rule: &str,
    algebra: Option<&str>,
    bel: &[String],
    out: &mut Out<'_>,
) -> Result<Verdict> {
    let rule: Rule = rule.parse().map_err(usage)?;
    let d1: MassDoc = load(m1)?;
    let d2: MassDoc = load(m2)?;
    let (p1, p2) = (d1.mass.pairs(), d2.mass.pairs());
    let texts: Vec<&str> =
        p1.iter().chain(&p2).map(|(k, _)| k.as_str()).chain(bel.iter().map(String::as_str)).collect();
    let mut doc = merge_algebras(&d1.algebra, &d2.algebra)?.with_inferred_vars(texts);
    let algebra = match algebra {
        Some(a) => a.parse::<Algebra>().map_err(usage)?,
        None => default_algebra(&doc),
    };
    // The flag picks between the free and the bounded De Morgan algebra.
    doc = match (doc, algebra) {
        (AlgebraDoc::DemorganBounded { vars }, Algebra::DeMorganFree) => AlgebraDoc::DemorganFree { vars },
        (AlgebraDoc::DemorganFree { vars }, Algebra::DeMorganBounded) => AlgebraDoc::DemorganBounded { vars },
        (d, _) => d,
    };
    let (entries, beliefs) = match &doc {
        AlgebraDoc::DemorganFree { .. } | AlgebraDoc::DemorganBounded { .. } => {
            let s = FreeSpace::new(&doc)?;
            let queries = bel.iter().map(|t| Ok((t.clone(), s.element(t)?))).collect::<Result<Vec<_>>>()?;
            run_combine(&s.mass(&p1)?, &s.mass(&p2)?, rule, algebra, &s.lat, |e| s.name(e), &queries)?
        }
        _ => {
            let s = FiniteSpace::new(&doc)?;
            let queries = bel.iter().map(|t| Ok((t.clone(), s.element(t)?))).collect::<Result<Vec<_>>>()?;
            run_combine(&s.mass(&p1)?, &s.mass(&p2)?, rule, algebra, &s.lat, |e| s.name(*e), &queries)?
        }
    };
    // The combined mass is a document in its own right, so it is JSON in
    // both output modes.
    let mut res = MassDoc::from_entries(doc, entries, out.decimals);
    res.belief = beliefs.iter().map(|(k, v)| (k.clone(), fmt_q(v))).collect();
    out.emit_json(&res)?;
    Ok(Verdict::Yes)
}
