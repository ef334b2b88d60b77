//! JSON documents read and written by the commands, with conversions to
//! and from the library types they describe.
//!
//! Rationals are written as `"num/den"` strings and read from such strings,
//! from decimal strings, or from JSON numbers (parsed exactly, so `0.9` is
//! `9/10`).

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use bd_core::{parse_bd, Formula, Idnf, Lindenbaum, Signature};
use lattice_measures::{FiniteLattice, FreeDeMorgan, MassFunction, Measure, Role};
use luk_two::{TwoPoint, Valuation};
use models::{BDModel, DSModel, DSplModel, ProbBDModel, StateSet};
use num_traits::Zero;
use ratlp::{fmt_q, parse_q, Q};
use serde::{Deserialize, Serialize};
use two_layered::AnyModel;

/// A rational as a string or a plain JSON number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Text(String),
    Number(serde_json::Number),
}

impl Num {
    pub fn of(v: &Q) -> Num {
        Num::Text(fmt_q(v))
    }

    pub fn value(&self) -> Result<Q> {
        let s = match self {
            Num::Text(s) => s.clone(),
            Num::Number(n) => n.to_string(),
        };
        parse_q(&s).map_err(|_| anyhow!("`{s}` is not a rational number"))
    }
}

/// Inline JSON is taken as is; anything else is read as a path.
pub fn load_text(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg)).with_context(|| format!("cannot read `{arg}`"))
}

pub fn load<T: for<'de> Deserialize<'de>>(arg: &str) -> Result<T> {
    let text = load_text(arg)?;
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in `{}`", short(arg)))
}

fn short(s: &str) -> String {
    if s.len() > 40 {
        format!("{}...", &s[..s.char_indices().nth(37).map_or(s.len(), |(i, _)| i)])
    } else {
        s.to_string()
    }
}

/// Identifiers of BD formula texts in order of first appearance; `T` and
/// `F` are constants.
pub fn infer_vars<'a>(texts: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for text in texts {
        let mut word = String::new();
        for ch in text.chars().chain(std::iter::once(' ')) {
            if ch.is_ascii_alphanumeric() || ch == '_' {
                word.push(ch);
                continue;
            }
            let w = std::mem::take(&mut word);
            let ident = w.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_');
            if ident && w != "T" && w != "F" && !names.contains(&w) {
                names.push(w);
            }
        }
    }
    names
}

pub fn signature(names: &[String]) -> Result<Signature> {
    Ok(Signature::new(names.iter().cloned())?)
}

// ---------------------------------------------------------------------------
// Algebras and the spaces they describe.

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraDoc {
    /// Subsets of `ground`; elements are written `{a,c}`.
    Powerset { ground: Vec<String> },
    /// `0 < 1 < ... < size-1`.
    Chain { size: usize },
    /// `bot < a, b < top`.
    Diamond,
    /// The finite Lindenbaum algebra; elements are BD formulas.
    Lindenbaum {
        vars: Vec<String>,
        #[serde(default)]
        constants: bool,
    },
    /// The free De Morgan algebra without constants, kept symbolic.
    DemorganFree {
        #[serde(default)]
        vars: Vec<String>,
    },
    /// The free bounded De Morgan algebra, kept symbolic.
    DemorganBounded {
        #[serde(default)]
        vars: Vec<String>,
    },
}

impl AlgebraDoc {
    pub fn kind(&self) -> &'static str {
        match self {
            AlgebraDoc::Powerset { .. } => "powerset",
            AlgebraDoc::Chain { .. } => "chain",
            AlgebraDoc::Diamond => "diamond",
            AlgebraDoc::Lindenbaum { .. } => "lindenbaum",
            AlgebraDoc::DemorganFree { .. } => "demorgan_free",
            AlgebraDoc::DemorganBounded { .. } => "demorgan_bounded",
        }
    }

    /// Fills an empty variable list from element texts.
    pub fn with_inferred_vars<'a>(self, texts: impl IntoIterator<Item = &'a str>) -> AlgebraDoc {
        match self {
            AlgebraDoc::DemorganFree { vars } if vars.is_empty() => {
                AlgebraDoc::DemorganFree { vars: infer_vars(texts) }
            }
            AlgebraDoc::DemorganBounded { vars } if vars.is_empty() => {
                AlgebraDoc::DemorganBounded { vars: infer_vars(texts) }
            }
            other => other,
        }
    }
}

enum Elements {
    Powerset(Vec<String>),
    Named,
    Lindenbaum(Lindenbaum, Signature, bool),
}

/// An explicit finite lattice plus the way its elements are written.
pub struct FiniteSpace {
    pub doc: AlgebraDoc,
    pub lat: FiniteLattice,
    elements: Elements,
}

impl FiniteSpace {
    /// Symbolic De Morgan algebras are materialized as Lindenbaum algebras.
    pub fn new(doc: &AlgebraDoc) -> Result<FiniteSpace> {
        let lindenbaum = |vars: &[String], constants: bool| -> Result<(FiniteLattice, Elements)> {
            let sig = signature(vars)?;
            let lb = Lindenbaum::new(vars.len(), constants)?;
            Ok((FiniteLattice::from_lindenbaum(&lb, &sig), Elements::Lindenbaum(lb, sig, constants)))
        };
        let (lat, elements) = match doc {
            AlgebraDoc::Powerset { ground } => {
                if ground.len() > 10 {
                    bail!("powerset ground sets are limited to 10 elements");
                }
                let names: Vec<&str> = ground.iter().map(String::as_str).collect();
                (FiniteLattice::powerset(&names), Elements::Powerset(ground.clone()))
            }
            AlgebraDoc::Chain { size } => {
                if *size == 0 {
                    bail!("a chain needs at least one element");
                }
                (FiniteLattice::chain(*size), Elements::Named)
            }
            AlgebraDoc::Diamond => (FiniteLattice::diamond(), Elements::Named),
            AlgebraDoc::Lindenbaum { vars, constants } => lindenbaum(vars, *constants)?,
            AlgebraDoc::DemorganFree { vars } => lindenbaum(vars, false)?,
            AlgebraDoc::DemorganBounded { vars } => lindenbaum(vars, true)?,
        };
        Ok(FiniteSpace { doc: doc.clone(), lat, elements })
    }

    pub fn element(&self, text: &str) -> Result<usize> {
        match &self.elements {
            Elements::Powerset(ground) => parse_set(text, ground).map(|m| m as usize),
            Elements::Named => self.lat.index(text.trim()).ok_or_else(|| anyhow!("no element `{text}`")),
            Elements::Lindenbaum(lb, sig, constants) => {
                let f = parse_bd(text, sig, *constants)?;
                lb.class_of(&f).ok_or_else(|| anyhow!("`{text}` is not in the algebra"))
            }
        }
    }

    pub fn name(&self, x: usize) -> String {
        self.lat.name(x).to_string()
    }

    /// A total function given by one value per element.
    pub fn function(&self, values: &BTreeMap<String, Num>) -> Result<Vec<Q>> {
        let mut out: Vec<Option<Q>> = vec![None; self.lat.len()];
        for (k, v) in values {
            let x = self.element(k)?;
            if out[x].is_some() {
                bail!("element `{}` is given twice", self.name(x));
            }
            out[x] = Some(v.value()?);
        }
        out.into_iter()
            .enumerate()
            .map(|(x, v)| v.ok_or_else(|| anyhow!("no value for element `{}`", self.name(x))))
            .collect()
    }

    /// A sparse function; missing elements are 0.
    pub fn sparse(&self, values: &BTreeMap<String, Num>) -> Result<Vec<Q>> {
        let mut out = vec![Q::zero(); self.lat.len()];
        for (k, v) in values {
            out[self.element(k)?] += v.value()?;
        }
        Ok(out)
    }

    pub fn mass(&self, pairs: &[(String, Num)]) -> Result<MassFunction<usize>> {
        let pairs: Vec<(usize, Q)> =
            pairs.iter().map(|(k, v)| Ok((self.element(k)?, v.value()?))).collect::<Result<_>>()?;
        Ok(MassFunction::from_pairs(pairs)?)
    }
}

/// `{a,c}`, `a,c`, `{}` over the given ground set, as a bitmask.
pub fn parse_set(text: &str, ground: &[String]) -> Result<u64> {
    let t = text.trim();
    let inner = t.strip_prefix('{').and_then(|s| s.strip_suffix('}')).unwrap_or(t);
    let mut set = 0u64;
    for part in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let i = ground.iter().position(|g| g == part).ok_or_else(|| anyhow!("`{part}` is not in the ground set"))?;
        set |= 1 << i;
    }
    Ok(set)
}

/// The symbolic free De Morgan algebra over a signature.
pub struct FreeSpace {
    pub doc: AlgebraDoc,
    pub lat: FreeDeMorgan,
    pub sig: Signature,
}

impl FreeSpace {
    pub fn new(doc: &AlgebraDoc) -> Result<FreeSpace> {
        let (vars, with_constants) = match doc {
            AlgebraDoc::DemorganFree { vars } => (vars, false),
            AlgebraDoc::DemorganBounded { vars } => (vars, true),
            other => bail!("`{}` is not a free De Morgan algebra", other.kind()),
        };
        Ok(FreeSpace { doc: doc.clone(), lat: FreeDeMorgan { with_constants }, sig: signature(vars)? })
    }

    pub fn element(&self, text: &str) -> Result<Idnf> {
        let f: Formula = parse_bd(text, &self.sig, self.lat.with_constants)?;
        Ok(Idnf::of(&f))
    }

    pub fn name(&self, x: &Idnf) -> String {
        x.display(&self.sig).to_string()
    }

    pub fn mass(&self, pairs: &[(String, Num)]) -> Result<MassFunction<Idnf>> {
        let pairs: Vec<(Idnf, Q)> =
            pairs.iter().map(|(k, v)| Ok((self.element(k)?, v.value()?))).collect::<Result<_>>()?;
        Ok(MassFunction::from_pairs(pairs)?)
    }
}

// ---------------------------------------------------------------------------
// Masses.

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassEntry {
    pub element: String,
    pub value: Num,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approx: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MassEntries {
    List(Vec<MassEntry>),
    Map(BTreeMap<String, Num>),
}

impl MassEntries {
    pub fn pairs(&self) -> Vec<(String, Num)> {
        match self {
            MassEntries::List(l) => l.iter().map(|e| (e.element.clone(), e.value.clone())).collect(),
            MassEntries::Map(m) => m.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }
}

/// `{"algebra": {...}, "mass": [{"element": "a & c", "value": "81/100"}]}`.
/// Output documents repeat the masses as an `element -> value` map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassDoc {
    pub algebra: AlgebraDoc,
    pub mass: MassEntries,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub by_element: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub belief: BTreeMap<String, String>,
}

impl MassDoc {
    pub fn from_entries(algebra: AlgebraDoc, entries: Vec<(String, Q)>, decimals: Option<usize>) -> MassDoc {
        let by_element = entries.iter().map(|(k, v)| (k.clone(), fmt_q(v))).collect();
        let mass = entries
            .into_iter()
            .map(|(element, v)| MassEntry {
                element,
                approx: decimals.map(|k| ratlp::fmt_decimal(&v, k)),
                value: Num::of(&v),
            })
            .collect();
        MassDoc { algebra, mass: MassEntries::List(mass), by_element, belief: BTreeMap::new() }
    }
}

// ---------------------------------------------------------------------------
// Functions on finite lattices.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum RoleDoc {
    #[default]
    Belief,
    Plausibility,
}

impl From<RoleDoc> for Role {
    fn from(r: RoleDoc) -> Role {
        match r {
            RoleDoc::Belief => Role::Belief,
            RoleDoc::Plausibility => Role::Plausibility,
        }
    }
}

impl From<Role> for RoleDoc {
    fn from(r: Role) -> RoleDoc {
        match r {
            Role::Belief => RoleDoc::Belief,
            Role::Plausibility => RoleDoc::Plausibility,
        }
    }
}

/// A function on a finite lattice given by `values` (total), or its
/// Möbius mass given by `mass` (sparse).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionDoc {
    pub lattice: AlgebraDoc,
    #[serde(default)]
    pub role: RoleDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<BTreeMap<String, Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass: Option<BTreeMap<String, Num>>,
}

impl FunctionDoc {
    pub fn measure(&self, space: &FiniteSpace) -> Result<Measure> {
        let values = self.values.as_ref().ok_or_else(|| anyhow!("the document has no `values`"))?;
        Ok(Measure::new(self.role.into(), space.function(values)?, &space.lat)?)
    }
}

pub fn value_map(space: &FiniteSpace, values: &[Q], skip_zero: bool) -> BTreeMap<String, Num> {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| !(skip_zero && v.is_zero()))
        .map(|(x, v)| (space.name(x), Num::of(v)))
        .collect()
}

// ---------------------------------------------------------------------------
// Models.

/// `{"kind": "prob", "vars": ["p"], "states": ["s0", "s1"], "vplus": {"p": [0]},
/// "vminus": {"p": [1]}, "mass": {"s0": "1/2", "s1": "1/2"}}`.
///
/// Probabilistic models key their masses by state; DS models by state sets
/// written `{s0,s1}`. DS_pl models add `mass_pl`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vars: Vec<String>,
    pub states: Vec<String>,
    pub vplus: BTreeMap<String, Vec<usize>>,
    pub vminus: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass: Option<BTreeMap<String, Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass_pl: Option<BTreeMap<String, Num>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub require_bel_leq_pl: bool,
}

#[derive(Debug, Clone)]
pub enum LoadedModel {
    Frame(BDModel),
    Uncertain(AnyModel),
}

fn indices(set: StateSet, n: usize) -> Vec<usize> {
    (0..n).filter(|w| set >> w & 1 == 1).collect()
}

pub fn set_key(m: &BDModel, set: StateSet) -> String {
    let names: Vec<&str> = indices(set, m.num_states()).into_iter().map(|w| m.state_names()[w].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

fn state_index(m: &BDModel, name: &str) -> Result<usize> {
    let name = name.trim();
    if let Some(w) = m.state_names().iter().position(|s| s == name) {
        return Ok(w);
    }
    match name.parse::<usize>() {
        Ok(w) if w < m.num_states() => Ok(w),
        _ => bail!("no state `{name}`"),
    }
}

fn parse_state_set(m: &BDModel, key: &str) -> Result<StateSet> {
    let t = key.trim();
    let inner = t
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| anyhow!("`{key}` is not a set `{{...}}`"))?;
    inner.split(',').map(str::trim).filter(|s| !s.is_empty()).try_fold(0u64, |acc, s| Ok(acc | 1 << state_index(m, s)?))
}

fn set_masses(m: &BDModel, mass: &BTreeMap<String, Num>) -> Result<BTreeMap<StateSet, Q>> {
    let mut out: BTreeMap<StateSet, Q> = BTreeMap::new();
    for (k, v) in mass {
        *out.entry(parse_state_set(m, k)?).or_insert_with(Q::zero) += v.value()?;
    }
    Ok(out)
}

fn set_mass_map(m: &BDModel, mass: &BTreeMap<StateSet, Q>) -> BTreeMap<String, Num> {
    mass.iter().map(|(s, v)| (set_key(m, *s), Num::of(v))).collect()
}

impl ModelDoc {
    pub fn frame(m: &BDModel, vars: &[String]) -> ModelDoc {
        let n = m.num_states();
        let var_names: Vec<String> =
            (0..m.num_vars()).map(|v| vars.get(v).cloned().unwrap_or_else(|| format!("p{v}"))).collect();
        let side = |sets: &[StateSet]| var_names.iter().zip(sets).map(|(v, s)| (v.clone(), indices(*s, n))).collect();
        ModelDoc {
            kind: Some("frame".into()),
            vars: var_names.clone(),
            states: m.state_names().to_vec(),
            vplus: side(m.vplus()),
            vminus: side(m.vminus()),
            mass: None,
            mass_pl: None,
            require_bel_leq_pl: false,
        }
    }

    pub fn of_model(m: &AnyModel, vars: &[String]) -> ModelDoc {
        match m {
            AnyModel::Prob(p) => {
                let mut d = ModelDoc::frame(&p.model, vars);
                d.kind = Some("prob".into());
                let names = p.model.state_names();
                d.mass = Some(
                    p.mass()
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(w, v)| (names[w].clone(), Num::of(v)))
                        .collect(),
                );
                d
            }
            AnyModel::Ds(ds) => {
                let mut d = ModelDoc::frame(&ds.model, vars);
                d.kind = Some("ds".into());
                d.mass = Some(set_mass_map(&ds.model, ds.mass()));
                d
            }
            AnyModel::DsPl(dp) => {
                let mut d = ModelDoc::frame(&dp.ds.model, vars);
                d.kind = Some("dspl".into());
                d.mass = Some(set_mass_map(&dp.ds.model, dp.ds.mass()));
                d.mass_pl = Some(set_mass_map(&dp.ds.model, dp.mass_pl()));
                d.require_bel_leq_pl = dp.requires_bel_leq_pl();
                d
            }
        }
    }

    /// The variable order: `vars` when given, else the sorted `vplus` keys.
    pub fn var_names(&self) -> Vec<String> {
        if !self.vars.is_empty() {
            return self.vars.clone();
        }
        let mut names: Vec<String> = self.vplus.keys().chain(self.vminus.keys()).cloned().collect();
        names.sort();
        names.dedup();
        names
    }

    pub fn signature(&self) -> Result<Signature> {
        signature(&self.var_names())
    }

    pub fn bd_model(&self) -> Result<BDModel> {
        let n = self.states.len();
        if n > 63 {
            bail!("at most 63 states are supported");
        }
        let side = |map: &BTreeMap<String, Vec<usize>>, what: &str| -> Result<Vec<StateSet>> {
            for k in map.keys() {
                if !self.var_names().contains(k) {
                    bail!("{what} names unknown variable `{k}`");
                }
            }
            self.var_names()
                .iter()
                .map(|v| {
                    map.get(v).map_or(Ok(0), |ws| {
                        ws.iter().try_fold(0u64, |acc, &w| {
                            if w >= n {
                                bail!("{what}[{v}] names state {w}, but there are {n}");
                            }
                            Ok(acc | 1 << w)
                        })
                    })
                })
                .collect()
        };
        let vplus = side(&self.vplus, "vplus")?;
        let vminus = side(&self.vminus, "vminus")?;
        let m = BDModel::new(self.states.clone(), vplus, vminus)?;
        // A document that spells out the canonical frame loads as one, so
        // operations reserved for canonical models keep working.
        let k = self.var_names().len();
        if k <= 3 && n == 1 << (2 * k) {
            if let Ok(c) = BDModel::canonical(k) {
                if c.state_names() == m.state_names() && c.vplus() == m.vplus() && c.vminus() == m.vminus() {
                    return Ok(c);
                }
            }
        }
        Ok(m)
    }

    fn inferred_kind(&self) -> &str {
        if let Some(k) = &self.kind {
            return k;
        }
        match (&self.mass, &self.mass_pl) {
            (_, Some(_)) => "dspl",
            (None, None) => "frame",
            (Some(m), None) if m.keys().all(|k| k.trim_start().starts_with('{')) && !m.is_empty() => "ds",
            (Some(_), None) => "prob",
        }
    }

    pub fn load(&self) -> Result<LoadedModel> {
        let frame = self.bd_model()?;
        let mass = || self.mass.as_ref().ok_or_else(|| anyhow!("a `{}` model needs `mass`", self.inferred_kind()));
        Ok(match self.inferred_kind() {
            "frame" => LoadedModel::Frame(frame),
            "prob" => {
                let mut v = vec![Q::zero(); frame.num_states()];
                for (k, x) in mass()? {
                    v[state_index(&frame, k)?] += x.value()?;
                }
                LoadedModel::Uncertain(AnyModel::Prob(ProbBDModel::new(frame, v)?))
            }
            "ds" => {
                let m = set_masses(&frame, mass()?)?;
                LoadedModel::Uncertain(AnyModel::Ds(DSModel::new(frame, m)?))
            }
            "dspl" => {
                let m = set_masses(&frame, mass()?)?;
                let pl = self.mass_pl.as_ref().map(|p| set_masses(&frame, p)).transpose()?;
                let ds = DSModel::new(frame, m)?;
                let dp = match pl {
                    Some(pl) => DSplModel::new(ds, pl, self.require_bel_leq_pl)?,
                    None => DSplModel::with_derived_pl(ds, self.require_bel_leq_pl)?,
                };
                LoadedModel::Uncertain(AnyModel::DsPl(dp))
            }
            other => bail!("unknown model kind `{other}` (expected frame, prob, ds or dspl)"),
        })
    }

    pub fn uncertain(&self) -> Result<AnyModel> {
        match self.load()? {
            LoadedModel::Uncertain(m) => Ok(m),
            LoadedModel::Frame(_) => bail!("the model has no mass"),
        }
    }
}

// ---------------------------------------------------------------------------
// Valuations of the twist product.

/// `{"p": ["3/5", "3/10"]}`.
pub type ValuationDoc = BTreeMap<String, [Num; 2]>;

pub fn valuation(doc: &ValuationDoc) -> Result<Valuation<String>> {
    doc.iter().map(|(k, [a, b])| Ok((k.clone(), TwoPoint::new(a.value()?, b.value()?)?))).collect()
}

pub fn valuation_doc(v: &Valuation<String>) -> ValuationDoc {
    v.iter().map(|(k, p)| (k.clone(), [Num::of(&p.first), Num::of(&p.second)])).collect()
}

pub fn point_doc(p: &TwoPoint) -> [String; 2] {
    [fmt_q(&p.first), fmt_q(&p.second)]
}
