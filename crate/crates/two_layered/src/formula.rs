use std::fmt;
use std::str::FromStr;

use bd_core::{parse_bd, BdError, Formula, Signature};
use luk_two::{parse_outer_with, Logic, LukError, Outer, TwoPoint};
use models::{measure_of, Kind, Sign, Uncertain};

use crate::TwoLayerError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modality {
    Pr,
    B,
    Pl,
}

impl Modality {
    pub fn name(self) -> &'static str {
        match self {
            Modality::Pr => "Pr",
            Modality::B => "B",
            Modality::Pl => "Pl",
        }
    }

    fn from_name(name: &str) -> Option<Modality> {
        match name {
            "Pr" => Some(Modality::Pr),
            "B" => Some(Modality::B),
            "Pl" => Some(Modality::Pl),
            _ => None,
        }
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which two-layered logic a formula belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    /// `Pr` over probabilistic models, outer logic Ł².
    PrL2,
    /// `B` over DS models, outer logic Ł².
    BelL2,
    /// `B` and `Pl` over DS_pl models, outer logic NŁ.
    BelNL,
}

impl Tag {
    pub const ALL: [Tag; 3] = [Tag::PrL2, Tag::BelL2, Tag::BelNL];

    pub fn logic(self) -> Logic {
        match self {
            Tag::PrL2 | Tag::BelL2 => Logic::L2,
            Tag::BelNL => Logic::NL,
        }
    }

    pub fn allows(self, m: Modality) -> bool {
        matches!(
            (self, m),
            (Tag::PrL2, Modality::Pr) | (Tag::BelL2, Modality::B) | (Tag::BelNL, Modality::B | Modality::Pl)
        )
    }

    /// The value of a modal atom from the two extensions of its formula.
    pub fn atom_value<M: Uncertain + ?Sized>(self, model: &M, atom: &ModalAtom) -> Result<TwoPoint, TwoLayerError> {
        let mo = |kind, sign| measure_of(model, &atom.inner, kind, sign);
        let (first, second) = match (self, atom.modality) {
            (Tag::PrL2, Modality::Pr) => (mo(Kind::Prob, Sign::Pos)?, mo(Kind::Prob, Sign::Neg)?),
            (Tag::BelL2, Modality::B) => (mo(Kind::Bel, Sign::Pos)?, mo(Kind::Bel, Sign::Neg)?),
            (Tag::BelNL, Modality::B) => (mo(Kind::Bel, Sign::Pos)?, mo(Kind::Pl, Sign::Neg)?),
            (Tag::BelNL, Modality::Pl) => (mo(Kind::Pl, Sign::Pos)?, mo(Kind::Bel, Sign::Neg)?),
            (tag, modality) => return Err(TwoLayerError::Modality { modality, tag }),
        };
        Ok(TwoPoint::new(first, second)?)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::PrL2 => "pr",
            Tag::BelL2 => "bel-l2",
            Tag::BelNL => "bel-nl",
        })
    }
}

impl FromStr for Tag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pr" | "pr-l2" => Ok(Tag::PrL2),
            "bel-l2" | "bel" => Ok(Tag::BelL2),
            "bel-nl" => Ok(Tag::BelNL),
            other => Err(format!("unknown logic `{other}` (expected pr, bel-l2 or bel-nl)")),
        }
    }
}

/// A modality applied to an inner formula. Inner formulas are plain BD
/// formulas, so modalities cannot nest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModalAtom {
    pub modality: Modality,
    pub inner: Formula,
}

impl ModalAtom {
    pub fn new(modality: Modality, inner: Formula) -> Self {
        ModalAtom { modality, inner }
    }

    pub fn render(&self, sig: &Signature) -> String {
        format!("{}[{}]", self.modality, self.inner.display(sig))
    }
}

/// Shorthands for outer atoms.
pub fn pr(f: Formula) -> Outer<ModalAtom> {
    Outer::atom(ModalAtom::new(Modality::Pr, f))
}

pub fn b(f: Formula) -> Outer<ModalAtom> {
    Outer::atom(ModalAtom::new(Modality::B, f))
}

pub fn pl(f: Formula) -> Outer<ModalAtom> {
    Outer::atom(ModalAtom::new(Modality::Pl, f))
}

/// `Pl φ` as defined in Bel^{Ł²}: `~B -φ`.
pub fn defined_pl(f: Formula) -> Outer<ModalAtom> {
    b(f.not()).sim()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoLayerFormula {
    tag: Tag,
    formula: Outer<ModalAtom>,
}

impl TwoLayerFormula {
    /// Checks the modalities and outer connectives against `tag`.
    pub fn new(tag: Tag, formula: Outer<ModalAtom>) -> Result<Self, TwoLayerError> {
        formula.check(tag.logic())?;
        if let Some(a) = formula.atoms().into_iter().find(|a| !tag.allows(a.modality)) {
            return Err(TwoLayerError::Modality { modality: a.modality, tag });
        }
        Ok(TwoLayerFormula { tag, formula })
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn outer(&self) -> &Outer<ModalAtom> {
        &self.formula
    }

    pub fn into_outer(self) -> Outer<ModalAtom> {
        self.formula
    }

    /// Number of inner variables needed to interpret the formula.
    pub fn var_bound(&self) -> usize {
        self.formula.atoms().iter().map(|a| a.inner.var_bound()).max().unwrap_or(0)
    }

    pub fn render(&self, sig: &Signature) -> String {
        self.formula.render(&|a: &ModalAtom| a.render(sig))
    }
}

/// Value of `f` in `model`.
pub fn eval_two_layer<M: Uncertain + ?Sized>(model: &M, f: &TwoLayerFormula) -> Result<TwoPoint, TwoLayerError> {
    let have = model.frame().num_vars();
    let needed = f.var_bound();
    if needed > have {
        return Err(TwoLayerError::Variables { needed, have });
    }
    f.formula.eval_with(f.tag.logic(), &|a: &ModalAtom| f.tag.atom_value(model, a))
}

/// Whether `f` takes a designated value in `model`.
pub fn holds_in<M: Uncertain + ?Sized>(model: &M, f: &TwoLayerFormula) -> Result<bool, TwoLayerError> {
    Ok(f.tag.logic().designated(&eval_two_layer(model, f)?))
}

fn shift(e: BdError, offset: usize) -> TwoLayerError {
    let pos = match &e {
        BdError::Syntax { pos, .. } | BdError::UnknownVariable { pos, .. } | BdError::ConstantNotAllowed { pos } => {
            offset + pos
        }
        _ => offset,
    };
    TwoLayerError::Inner { pos, source: e }
}

/// Parses an outer formula whose atoms are `Pr[..]`, `B[..]` or `Pl[..]`
/// around inner formulas over `sig`.
pub fn parse_two_layer(text: &str, tag: Tag, sig: &Signature) -> Result<TwoLayerFormula, TwoLayerError> {
    // The callback can only return LukError, so richer errors are parked here.
    let mut failure: Option<TwoLayerError> = None;
    let parsed = parse_outer_with(text, tag.logic(), &mut |name, body, pos| {
        let err = match (Modality::from_name(name), body) {
            (Some(m), Some(body)) if tag.allows(m) => match parse_bd(body, sig, true) {
                Ok(inner) => return Ok(ModalAtom::new(m, inner)),
                Err(e) => shift(e, pos),
            },
            (Some(modality), Some(_)) => TwoLayerError::Modality { modality, tag },
            _ => TwoLayerError::NotModal(name.to_string()),
        };
        failure = Some(err);
        Err(LukError::Syntax { pos, msg: "invalid modal atom".into() })
    });
    match (parsed, failure) {
        (_, Some(e)) => Err(e),
        (Ok(f), None) => TwoLayerFormula::new(tag, f),
        (Err(e), None) => Err(e.into()),
    }
}

/// Variable names of the inner formulas, in order of first occurrence.
pub fn infer_signature(text: &str, tag: Tag) -> Result<Signature, TwoLayerError> {
    let mut bodies: Vec<String> = Vec::new();
    parse_outer_with(text, tag.logic(), &mut |_, body, _| {
        bodies.extend(body.map(str::to_string));
        Ok(())
    })?;
    let mut names: Vec<String> = Vec::new();
    for body in &bodies {
        let mut word = String::new();
        for ch in body.chars().chain(std::iter::once(' ')) {
            if ch.is_ascii_alphanumeric() || ch == '_' {
                word.push(ch);
            } else if !word.is_empty() {
                let w = std::mem::take(&mut word);
                let is_ident = w.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_');
                if is_ident && w != "T" && w != "F" && !names.contains(&w) {
                    names.push(w);
                }
            }
        }
    }
    Signature::new(names).map_err(|e| TwoLayerError::Inner { pos: 0, source: e })
}

/// [`parse_two_layer`] over the signature found by [`infer_signature`].
pub fn parse_two_layer_auto(text: &str, tag: Tag) -> Result<(TwoLayerFormula, Signature), TwoLayerError> {
    let sig = infer_signature(text, tag)?;
    Ok((parse_two_layer(text, tag, &sig)?, sig))
}

#[cfg(test)]
mod tests {
    use super::*;
    use models::{BDModel, DSModel, ProbBDModel};
    use ratlp::{q, qi};
    use std::collections::BTreeMap;

    fn p() -> Formula {
        Formula::Var(0)
    }

    #[test]
    fn glut_state_gives_pr_one_one() {
        // One state that both supports and refutes p.
        let frame = BDModel::new(vec!["w".into()], vec![1], vec![1]).unwrap();
        let m = ProbBDModel::new(frame, vec![qi(1)]).unwrap();
        let f = TwoLayerFormula::new(Tag::PrL2, pr(p())).unwrap();
        assert_eq!(eval_two_layer(&m, &f).unwrap(), TwoPoint::new(qi(1), qi(1)).unwrap());
    }

    #[test]
    fn vacuous_belief_of_excluded_middle() {
        let frame = BDModel::canonical(1).unwrap();
        let mass = BTreeMap::from([(frame.all_states(), qi(1))]);
        let m = DSModel::new(frame, mass).unwrap();
        let f = TwoLayerFormula::new(Tag::BelL2, b(p().or(p().not()))).unwrap();
        assert_eq!(eval_two_layer(&m, &f).unwrap(), TwoPoint::new(qi(0), qi(0)).unwrap());
    }

    #[test]
    fn parse_and_render() {
        let (f, sig) = parse_two_layer_auto("Pr[p & q] -> Pr[p]", Tag::PrL2).unwrap();
        assert_eq!(f.outer(), &pr(p().and(Formula::Var(1))).imp(pr(p())));
        assert_eq!(f.render(&sig), "Pr[p & q] -> Pr[p]");
        let (g, sig) = parse_two_layer_auto("B[-x] <=> -Pl[x]", Tag::BelNL).unwrap();
        assert_eq!(parse_two_layer(&g.render(&sig), Tag::BelNL, &sig).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        let sig = Signature::numbered(1);
        let name = sig.name(0).to_string();
        assert!(matches!(
            parse_two_layer(&format!("Pl[{name}]"), Tag::BelL2, &sig),
            Err(TwoLayerError::Modality { modality: Modality::Pl, tag: Tag::BelL2 })
        ));
        assert!(matches!(parse_two_layer("x", Tag::PrL2, &sig), Err(TwoLayerError::NotModal(_))));
        assert!(matches!(parse_two_layer("Pr[zz]", Tag::PrL2, &sig), Err(TwoLayerError::Inner { pos: 3, .. })));
        assert!(matches!(
            parse_two_layer(&format!("B[{name}] ~> B[{name}]"), Tag::BelL2, &sig),
            Err(TwoLayerError::Outer(LukError::Connective { .. }))
        ));
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let frame = BDModel::canonical(1).unwrap();
        let n = frame.num_states();
        let m = ProbBDModel::new(frame, vec![q(1, n as i64); n]).unwrap();
        let f = TwoLayerFormula::new(Tag::BelL2, b(p())).unwrap();
        assert!(matches!(eval_two_layer(&m, &f), Err(TwoLayerError::Model(_))));
        let g = TwoLayerFormula::new(Tag::PrL2, pr(Formula::Var(3))).unwrap();
        assert_eq!(eval_two_layer(&m, &g), Err(TwoLayerError::Variables { needed: 4, have: 1 }));
    }
}
