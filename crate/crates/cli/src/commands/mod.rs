use anyhow::Result;

use crate::{Command, Global, Out, Verdict};

mod ineq;
mod logic;
mod luk;
mod measures;

pub fn dispatch(cmd: &Command, g: &Global, out: &mut Out<'_>) -> Result<Verdict> {
    match cmd {
        Command::Entail { premise, conclusion, vars } => logic::entail(premise, conclusion, &vars.vars, out),
        Command::Nf { formula, form, lits, consts, vars } => {
            logic::normal_form(formula, form, lits.as_deref(), *consts, &vars.vars, out)
        }
        Command::Lindenbaum { vars, consts } => logic::lindenbaum(vars, *consts, out),
        Command::CanonicalModel { vars } => logic::canonical_model(vars, out),
        Command::Mobius { input, inverse } => measures::mobius(input, *inverse, out),
        Command::CheckMeasure { input, kmax } => measures::check(input, *kmax, out),
        Command::Combine { m1, m2, rule, algebra, bel } => {
            measures::combine(m1, m2, rule, algebra.as_deref(), bel, out)
        }
        Command::SatWeight { formula, sat } => ineq::sat(formula, ineq_calculus::AtomKind::Weight, sat, out),
        Command::SatBelief { formula, sat } => ineq::sat(formula, ineq_calculus::AtomKind::Belief, sat, out),
        Command::EntailWeight { formulas, sat } => ineq::entail(formulas, ineq_calculus::AtomKind::Weight, sat, out),
        Command::EntailBelief { formulas, sat } => ineq::entail(formulas, ineq_calculus::AtomKind::Belief, sat, out),
        Command::EvalLuk { formula, logic, valuation } => luk::eval_luk(formula, logic, valuation, out),
        Command::EvalTwoLayer { formula, logic, model } => luk::eval_two_layer(formula, logic, model, out),
        Command::CheckAxioms { logic, trials, bel_leq_pl } => {
            luk::check_axioms(logic, *trials, *bel_leq_pl, g.seed, out)
        }
        Command::Translate { dir, input, formula } => luk::translate(dir, input.as_deref(), formula.as_deref(), out),
        Command::Classify { first, second } => luk::classify(first, second, out),
    }
}
