//! Axiom schemas of the two outer calculi, over the metavariables `0`
//! (alpha), `1` (beta) and `2` (gamma).

use crate::{Logic, Outer};

fn a() -> Outer<usize> {
    Outer::Atom(0)
}

fn b() -> Outer<usize> {
    Outer::Atom(1)
}

fn c() -> Outer<usize> {
    Outer::Atom(2)
}

/// Named schemas for `L2` (implication `->`, equivalence `<->`).
pub fn l2_axioms() -> Vec<(&'static str, Outer<usize>)> {
    let d = |x: Outer<usize>| x.delta();
    vec![
        ("w", a().imp(b().imp(a()))),
        ("sf", a().imp(b()).imp(b().imp(c()).imp(a().imp(c())))),
        ("waj", a().imp(b()).imp(b()).imp(b().imp(a()).imp(a()))),
        ("co", b().sim().imp(a().sim()).imp(a().imp(b()))),
        ("dn-", a().neg().neg().equiv(a())),
        ("-~", a().sim().neg().equiv(a().neg().sim())),
        ("K~-", a().neg().sim().imp(b().neg().sim()).equiv(a().imp(b()).neg().sim())),
        ("or", a().or(b()).equiv(a().imp(b()).imp(b()))),
        ("D1", d(a()).or(d(a()).sim())),
        ("D2", d(a()).imp(a())),
        ("D3", d(a()).imp(d(d(a())))),
        ("D4", d(a().or(b())).imp(d(a()).or(d(b())))),
        ("D5", d(a().imp(b())).imp(d(a()).imp(d(b())))),
        ("-D", d(a()).neg().equiv(d(a().neg().sim()).sim())),
    ]
}

/// Named schemas for `NL` (weak implication `~>`).
pub fn nl_axioms() -> Vec<(&'static str, Outer<usize>)> {
    vec![
        ("w", a().wimp(b().wimp(a()))),
        ("sf", a().wimp(b()).wimp(b().wimp(c()).wimp(a().wimp(c())))),
        ("waj", a().wimp(b()).wimp(b()).wimp(b().wimp(a()).wimp(a()))),
        ("co", b().sim().wimp(a().sim()).wimp(a().wimp(b()))),
        ("dn-", a().neg().neg().sequiv(a())),
        ("-~>", a().wimp(b()).neg().equiv(a().fus(b().neg()))),
        ("or", a().wimp(b()).wimp(b()).equiv(a().or(b()))),
        ("&", a().fus(b()).sequiv(a().wimp(b().sim()).sim())),
        ("and", a().and(b()).equiv(a().wimp(b()).fus(a()))),
        ("-and", a().and(b()).neg().sequiv(a().neg().or(b().neg()))),
        ("-or", a().or(b()).neg().sequiv(a().neg().and(b().neg()))),
        ("-~", a().sim().neg().equiv(a())),
    ]
}

pub fn axioms(logic: Logic) -> Vec<(&'static str, Outer<usize>)> {
    match logic {
        Logic::L2 => l2_axioms(),
        Logic::NL => nl_axioms(),
    }
}

/// A rule as premises and conclusion over the metavariables.
pub struct Rule {
    pub name: &'static str,
    pub premises: Vec<Outer<usize>>,
    pub conclusion: Outer<usize>,
}

pub fn rules(logic: Logic) -> Vec<Rule> {
    match logic {
        Logic::L2 => vec![
            Rule { name: "MP", premises: vec![a(), a().imp(b())], conclusion: b() },
            Rule { name: "Nec", premises: vec![a()], conclusion: a().delta() },
            Rule { name: "Conf", premises: vec![a()], conclusion: a().neg().sim() },
        ],
        Logic::NL => vec![Rule { name: "MP", premises: vec![a(), a().wimp(b())], conclusion: b() }],
    }
}

/// Replaces metavariable `i` by `args[i]`.
pub fn instantiate<A: Clone>(schema: &Outer<usize>, args: &[Outer<A>]) -> Outer<A> {
    schema.substitute(&|i: &usize| args[*i].clone())
}
