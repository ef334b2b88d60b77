//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary so the lines are printed even when the test
//! harness captures output. The process fails when a criterion fails that
//! is not listed in `KNOWN_FAILURES`; those are printed like the others.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use bd_core::{fdnf, parse_bd, Idnf, Lindenbaum, Signature};
use ineq_calculus::axioms::{validate_axioms, AxiomOptions};
use ineq_calculus::{entails_witness, eval as eval_combo, parse_combo_auto, sat_weight, AtomKind, SatOptions, Witness};
use lattice_measures::{
    belief_from_mass, check_measure, combine, mobius_transform, zeta, Algebra, FiniteLattice, FreeDeMorgan, Lattice,
    MassFunction, Measure, Role, Rule, Violation,
};
use luk_two::axioms::{axioms, instantiate};
use luk_two::{parse_outer, Logic, Outer, TwoPoint, Valuation};
use models::sample::{random_ds_model, random_dspl_model, random_prob_model};
use models::{
    induced_belief, induced_plausibility, induced_probability, model_from_belief, model_from_nsprob,
    model_from_plausibility,
};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratlp::{fmt_q, q, qi, Q};
use translations::harness::{belief_suite, equisat_harness, weight_suite, HarnessOptions};
use translations::{mcnaughton_clamped, ClampedAffine};
use two_layered::{
    eval_two_layer, gamma, inequality_terms, soundness_suite, SuiteOptions, Tag, TermKind, TwoLayerFormula,
};

/// Criteria whose failure is analysed in the decisions ledger: the second
/// coordinate of the αₙ belief axioms in Ł² and the weight/belief harness.
const KNOWN_FAILURES: [usize; 2] = [9, 10];

/// Absolute tolerance for the perturbed doctors example, whose reference
/// values are rounded.
const PERTURBED_TOL: f64 = 5e-4;

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Outcome { ok, detail: detail.into() }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// 1

fn doctors_classical() -> Outcome {
    let p = FiniteLattice::powerset(&["a", "b", "c"]);
    let (a, b, c) = (1usize, 2usize, 4usize);
    let m1 = MassFunction::normalized([(a, q(9, 10)), (b, q(1, 10))]).unwrap();
    let m2 = MassFunction::normalized([(c, q(9, 10)), (b, q(1, 10))]).unwrap();
    let m = combine(&m1, &m2, Rule::Dempster, Algebra::Powerset, &p).unwrap();
    let got: Vec<(usize, Q)> = m.iter().map(|(e, v)| (*e, v.clone())).collect();
    let shown: Vec<String> = got.iter().map(|(e, v)| format!("{}: {}", p.name(*e), fmt_q(v))).collect();
    Outcome::new(got == vec![(b, qi(1))], format!("m = {{{}}}", shown.join(", ")))
}

// 2

fn doctors_de_morgan() -> Outcome {
    let sig = Signature::new(["a", "b", "c"]).unwrap();
    let e = |t: &str| Idnf::of(&parse_bd(t, &sig, false).unwrap());
    let lat = FreeDeMorgan { with_constants: false };
    let m1 = MassFunction::normalized([(e("a"), q(9, 10)), (e("b"), q(1, 10))]).unwrap();
    let m2 = MassFunction::normalized([(e("c"), q(9, 10)), (e("b"), q(1, 10))]).unwrap();
    let m = combine(&m1, &m2, Rule::Dempster, Algebra::DeMorganFree, &lat).unwrap();
    let plain = m.len() == 4
        && m.get(&e("a & c")) == q(81, 100)
        && m.get(&e("a & b")) == q(9, 100)
        && m.get(&e("b & c")) == q(9, 100)
        && m.get(&e("b")) == q(1, 100)
        && m.belief(&lat, &e("a")) == q(9, 10)
        && m.belief(&lat, &e("b")) == q(19, 100);

    // Each expert also rules out the diseases they do not name.
    let n1 = MassFunction::normalized([(e("a & -b & -c"), q(9, 10)), (e("-a & b & -c"), q(1, 10))]).unwrap();
    let n2 = MassFunction::normalized([(e("-a & -b & c"), q(9, 10)), (e("-a & b & -c"), q(1, 10))]).unwrap();
    let n = combine(&n1, &n2, Rule::Dempster, Algebra::DeMorganFree, &lat).unwrap();
    let (ba, bb) = (n.belief(&lat, &e("a & -a")), n.belief(&lat, &e("b & -b")));
    let enriched = ba == q(9, 10)
        && n.belief(&lat, &e("c & -c")) == q(9, 10)
        && bb == q(18, 100)
        && n.get(&e("-a & b & -c")) == q(1, 100)
        && n.belief(&lat, &e("b")) == q(19, 100);
    Outcome::new(plain && enriched, format!("plain: {plain}; enriched: bel(a & -a) = {ba}, bel(b & -b) = {bb}"))
}

// 3

fn doctors_perturbed() -> Outcome {
    let p = FiniteLattice::powerset(&["a", "b", "c"]);
    let (a, b, c) = (1usize, 2usize, 4usize);
    let m1 = MassFunction::normalized([(a, q(89995, 100000)), (b, q(9995, 100000)), (c, q(1, 10000))]).unwrap();
    let m2 = MassFunction::normalized([(c, q(89995, 100000)), (b, q(9995, 100000)), (a, q(1, 10000))]).unwrap();
    let m = combine(&m1, &m2, Rule::Dempster, Algebra::Powerset, &p).unwrap();
    let f = |x: usize| m.get(&x).to_f64().unwrap();
    let ok = (f(b) - 0.9823).abs() < PERTURBED_TOL
        && (f(a) - 0.00885).abs() < PERTURBED_TOL
        && (f(c) - 0.00885).abs() < PERTURBED_TOL;
    Outcome::new(ok, format!("m(b) = {:.5}, m(a) = {:.5}, m(c) = {:.5}, tol {PERTURBED_TOL}", f(b), f(a), f(c)))
}

// 4

fn fdnf_golden() -> Outcome {
    let sig = Signature::new(["p", "q"]).unwrap();
    let x = sig.parse_lits("p, -p, q, -q").unwrap();
    let f = parse_bd("p & q", &sig, false).unwrap();
    let got = fdnf(&f, x, false, &sig).unwrap().to_formula().to_string_with(&sig);
    let want = "p & q | p & -p & q | p & q & -q | p & -p & q & -q";
    Outcome::new(got == want, got)
}

// 5

/// An intersection-closed family of subsets of {0..5} containing the full
/// set, at most `max` members.
fn random_lattice(r: &mut ChaCha8Rng, max: usize) -> FiniteLattice {
    loop {
        let mut fam: BTreeSet<u64> = (0..r.gen_range(0..6)).map(|_| r.gen_range(0..32)).collect();
        fam.insert(31);
        loop {
            let v: Vec<u64> = fam.iter().copied().collect();
            let before = fam.len();
            for a in &v {
                for b in &v {
                    fam.insert(a & b);
                }
            }
            if fam.len() == before {
                break;
            }
        }
        if fam.len() <= max {
            let sets: Vec<u64> = fam.into_iter().collect();
            return FiniteLattice::from_sets(&sets, None, true).unwrap();
        }
    }
}

/// The k-inequality for a belief function on `tuple`, recomputed directly.
fn inequality_fails(f: &[Q], l: &FiniteLattice, tuple: &[usize]) -> bool {
    let k = tuple.len();
    let join = tuple[1..].iter().fold(tuple[0], |acc, x| l.join(&acc, x));
    let mut rhs = Q::zero();
    for j in 1u32..(1 << k) {
        let idx: Vec<usize> = (0..k).filter(|i| j >> i & 1 == 1).map(|i| tuple[i]).collect();
        let meet = idx[1..].iter().fold(idx[0], |acc, x| l.meet(&acc, x));
        if j.count_ones() % 2 == 1 {
            rhs += &f[meet];
        } else {
            rhs -= &f[meet];
        }
    }
    f[join] < rhs
}

fn mobius_inversion() -> Outcome {
    let mut r = rng(5);
    let mut bad_round_trip = 0;
    let mut bad_check = 0;
    for _ in 0..200 {
        let l = random_lattice(&mut r, 20);
        let n = l.len();
        let w: Vec<u32> = (0..n).map(|_| r.gen_range(0..8)).collect();
        let total = w.iter().sum::<u32>() + r.gen_range(0..4) + 1;
        let m = MassFunction::from_pairs(w.iter().enumerate().map(|(i, &x)| (i, q(x as i64, total as i64)))).unwrap();
        let bel = belief_from_mass(&m, &l);
        let dense: Vec<Q> = (0..n).map(|x| m.get(&x)).collect();
        if mobius_transform(&bel.values, &l) != dense || zeta(&dense, &l) != bel.values {
            bad_round_trip += 1;
        }
        if !check_measure(&bel, &l, 3).ok {
            bad_check += 1;
        }
    }

    let (mut rejected, mut tries) = (0, 0);
    let mut wrong_tuple = 0;
    while rejected < 100 {
        tries += 1;
        assert!(tries < 100_000, "could not sample monotone non-belief functions");
        let l = random_lattice(&mut r, 12);
        let n = l.len();
        let g: Vec<Q> = (0..n).map(|_| qi(r.gen_range(-3..6))).collect();
        let f = zeta(&g, &l);
        let monotone = (0..n).all(|a| (0..n).all(|b| !l.leq(&a, &b) || f[a] <= f[b]));
        let hi = f.iter().max().unwrap().clone();
        if !monotone || f.iter().any(|x| x.is_negative()) || !hi.is_positive() {
            continue;
        }
        let f: Vec<Q> = f.iter().map(|x| x / &hi).collect();
        if !mobius_transform(&f, &l).iter().any(|x| x.is_negative()) {
            continue;
        }
        let kmax = (0..n).map(|x| l.lower_covers(x)).max().unwrap_or(0).max(3);
        let report = check_measure(&Measure { role: Role::Belief, values: f.clone() }, &l, kmax);
        match &report.violation {
            Some(Violation::Inequality { tuple, .. }) if !report.ok && inequality_fails(&f, &l, tuple) => {}
            _ => wrong_tuple += 1,
        }
        rejected += 1;
    }
    Outcome::new(
        bad_round_trip == 0 && bad_check == 0 && wrong_tuple == 0,
        format!(
            "200 masses: {bad_round_trip} round-trip failures, {bad_check} k-monotonicity failures; \
             100 non-belief functions: {wrong_tuple} without a genuine violating tuple"
        ),
    )
}

// 6

fn completeness_round_trip() -> Outcome {
    let mut r = rng(6);
    let mut failures = Vec::new();
    for n in 1..=2 {
        let lb = Lindenbaum::new(n, false).unwrap();
        for i in 0..25 {
            let ns = r.gen_range(1..7);
            let hidden = random_prob_model(&mut r, n, ns);
            let p = induced_probability(&hidden, &lb);
            if induced_probability(&model_from_nsprob(&p, &lb).unwrap(), &lb) != p {
                failures.push(format!("prob n={n} #{i}"));
            }
            let hidden = random_ds_model(&mut r, n, ns, 4);
            let bel = induced_belief(&hidden, &lb).unwrap();
            if induced_belief(&model_from_belief(&bel, &lb).unwrap(), &lb).unwrap() != bel {
                failures.push(format!("bel n={n} #{i}"));
            }
            let hidden = random_dspl_model(&mut r, n, ns, 4, false);
            let pl = induced_plausibility(&hidden, &lb).unwrap();
            if induced_plausibility(&model_from_plausibility(&pl, &lb).unwrap(), &lb).unwrap() != pl {
                failures.push(format!("pl n={n} #{i}"));
            }
        }
    }
    Outcome::new(failures.is_empty(), format!("150 hidden models, failures: {failures:?}"))
}

// 7

fn decision_procedures() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for nvars in [1, 2] {
        for kind in [AtomKind::Weight, AtomKind::Belief] {
            for k in [2, 3] {
                let samples = 20;
                let opts = AxiomOptions { samples, seed: 70 + k as u64, nvars, k, refute: true };
                let rep = validate_axioms(kind, &opts).unwrap();
                if !rep.ok() || rep.schemas.iter().any(|s| s.refuted != samples) {
                    ok = false;
                    notes.push(format!("{kind:?} nvars={nvars} k={k} failed"));
                }
            }
        }
    }
    let (glut, _) = parse_combo_auto("w+[p & -p] >= 1").unwrap();
    let glut_sat = match sat_weight(&glut, &SatOptions::default()).unwrap().witness() {
        Some(Witness::Weight(m)) => eval_combo(m, &glut).unwrap(),
        _ => false,
    };
    let (clash, _) = parse_combo_auto("w+[p] >= 1 and w+[p] < 1").unwrap();
    let clash_unsat = !sat_weight(&clash, &SatOptions::default()).unwrap().is_sat();
    let (bound, _) = parse_combo_auto("w+[p] + w+[-p] <= 1").unwrap();
    let para = match entails_witness(&[], &bound, &SatOptions::default()).unwrap() {
        Some(Witness::Weight(m)) => !eval_combo(&m, &bound).unwrap(),
        _ => false,
    };
    ok &= glut_sat && clash_unsat && para;
    notes.push(format!("glut sat with witness: {glut_sat}, clash unsat: {clash_unsat}, paraconsistency: {para}"));
    Outcome::new(ok, format!("W1-W4/B1-B4 refuted over 1-2 vars; {}", notes.join("; ")))
}

// 8

const ATOMS: [&str; 3] = ["p", "q", "r"];

fn random_point(r: &mut ChaCha8Rng) -> TwoPoint {
    let mut c = || match r.gen_range(0..6) {
        0 => Q::zero(),
        1 => Q::one(),
        _ => {
            let d = r.gen_range(1..=12);
            q(r.gen_range(0..=d), d)
        }
    };
    let (x, y) = (c(), c());
    TwoPoint::new(x, y).unwrap()
}

fn random_valuation(r: &mut ChaCha8Rng) -> Valuation<String> {
    ATOMS.iter().map(|a| (a.to_string(), random_point(r))).collect()
}

fn random_outer(r: &mut ChaCha8Rng, logic: Logic, depth: usize) -> Outer<String> {
    if depth == 0 || r.gen_bool(0.25) {
        return match r.gen_range(0..10) {
            0 => Outer::Top,
            1 => Outer::Bot,
            _ => Outer::Atom(ATOMS[r.gen_range(0..3)].to_string()),
        };
    }
    let x = random_outer(r, logic, depth - 1);
    let y = random_outer(r, logic, depth - 1);
    match (r.gen_range(0..11), logic) {
        (0, _) => x.neg(),
        (1, _) => x.sim(),
        (2, Logic::L2) => x.delta(),
        (3, Logic::L2) => x.delta_top(),
        (2 | 3, Logic::NL) => x.neg().sim(),
        (4, _) => x.and(y),
        (5, _) => x.or(y),
        (6, _) => x.fus(y),
        (7, _) => x.oplus(y),
        (8, _) => x.ominus(y),
        (_, Logic::L2) => x.imp(y),
        (_, Logic::NL) => x.wimp(y),
    }
}

fn ev(f: &Outer<String>, logic: Logic, v: &Valuation<String>) -> TwoPoint {
    f.eval_with(logic, &|a: &String| v.get(a).cloned().ok_or(())).unwrap()
}

fn conflate(v: &TwoPoint) -> TwoPoint {
    TwoPoint::new(Q::one() - &v.second, Q::one() - &v.first).unwrap()
}

fn outer_soundness() -> Outcome {
    let mut r = rng(8);
    let mut undesignated = 0;
    let mut schemas = 0;
    for logic in [Logic::L2, Logic::NL] {
        for (_, schema) in axioms(logic) {
            schemas += 1;
            for _ in 0..1000 {
                let args: Vec<Outer<String>> = (0..3).map(|_| random_outer(&mut r, logic, 2)).collect();
                let v = random_valuation(&mut r);
                if !logic.designated(&ev(&instantiate(&schema, &args), logic, &v)) {
                    undesignated += 1;
                }
            }
        }
    }

    let (mut conflation, mut crisp, mut image) = (0, 0, 0);
    let mut seen = BTreeSet::new();
    for _ in 0..1000 {
        let f = random_outer(&mut r, Logic::L2, 3);
        let v = random_valuation(&mut r);
        let cv: Valuation<String> = v.iter().map(|(a, x)| (a.clone(), conflate(x))).collect();
        if ev(&f, Logic::L2, &cv) != conflate(&ev(&f, Logic::L2, &v)) {
            conflation += 1;
        }
        let dt = ev(&f.clone().delta_top(), Logic::L2, &v);
        if dt != TwoPoint::top() && dt != TwoPoint::bottom() {
            crisp += 1;
        }
        let d = ev(&f.delta(), Logic::L2, &v);
        let bit = |c: &Q| c.is_zero() || c.is_one();
        if !bit(&d.first) || !bit(&d.second) {
            image += 1;
        }
        seen.insert((d.first.to_string(), d.second.to_string()));
    }

    let lhs = parse_outer("-(a -> b)", Logic::L2).unwrap();
    let rhs = parse_outer("-b (-) -a", Logic::L2).unwrap();
    let mut typo = 0;
    for _ in 0..500 {
        let v: Valuation<String> = ["a", "b"].iter().map(|a| (a.to_string(), random_point(&mut r))).collect();
        if ev(&lhs, Logic::L2, &v) != ev(&rhs, Logic::L2, &v) {
            typo += 1;
        }
    }
    let ok = undesignated == 0 && conflation == 0 && crisp == 0 && image == 0 && seen.len() == 4 && typo == 0;
    Outcome::new(
        ok,
        format!(
            "{schemas} schemas x 1000: {undesignated} undesignated; conflation {conflation}, Dt crispness {crisp}, \
             D image {image} off-grid with {} of 4 values hit; -(a->b) vs -b(-)-a: {typo} mismatches",
            seen.len()
        ),
    )
}

// 9

fn two_layered_soundness() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    let runs = [
        (Tag::PrL2, false, "Pr-L2"),
        (Tag::BelL2, false, "Bel-L2"),
        (Tag::BelNL, false, "Bel-NL"),
        (Tag::BelNL, true, "Bel-NL bel<=pl"),
    ];
    for (tag, bel_leq_pl, name) in runs {
        let rep = soundness_suite(tag, &SuiteOptions { bel_leq_pl, ..SuiteOptions::default() }, 200).unwrap();
        ok &= rep.ok();
        let failing: BTreeMap<&str, usize> =
            rep.stats.iter().filter(|(_, s)| s.violations > 0).map(|(l, s)| (l.as_str(), s.violations)).collect();
        parts.push(if failing.is_empty() { format!("{name} ok") } else { format!("{name} violations {failing:?}") });
    }

    let mut r = rng(9);
    let (mut t_bad, mut s_bad) = (0, 0);
    for _ in 0..200 {
        let (ns, foc) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let m = random_ds_model(&mut r, 3, ns, foc);
        for n in 1..=3 {
            let g = eval_two_layer(&m, &TwoLayerFormula::new(Tag::BelL2, gamma(n).unwrap()).unwrap()).unwrap();
            if inequality_terms(TermKind::T, n).unwrap().eval(&m, TermKind::T).unwrap() != g.first {
                t_bad += 1;
            }
            if inequality_terms(TermKind::S, n).unwrap().eval(&m, TermKind::S).unwrap() != g.second {
                s_bad += 1;
            }
        }
    }
    ok &= t_bad == 0 && s_bad == 0;
    parts.push(format!("t_n/gamma_n mismatches {t_bad}, s_n/gamma_n mismatches {s_bad} of 600"));
    Outcome::new(ok, parts.join("; "))
}

// 10

/// Common denominator of the grid with denominators up to 8.
const D: i64 = 840;

/// First coordinate of a synthesized formula at `x / D`, in integers.
fn first_scaled(f: &Outer<usize>, x: &[i64]) -> i64 {
    match f {
        Outer::Atom(i) => x[*i],
        Outer::Top => D,
        Outer::Bot => 0,
        Outer::Sim(a) => D - first_scaled(a, x),
        Outer::Oplus(a, b) => (first_scaled(a, x) + first_scaled(b, x)).min(D),
        Outer::Fus(a, b) => (first_scaled(a, x) + first_scaled(b, x) - D).max(0),
        other => panic!("unexpected connective {:?}", other.connective()),
    }
}

fn translation_faithfulness() -> Outcome {
    let mut axis: Vec<i64> = (1..=8).flat_map(|d| (0..=d).map(move |k| k * D / d)).collect();
    axis.sort();
    axis.dedup();
    let mut r = rng(10);
    let mut grid_bad = 0;
    for _ in 0..100 {
        let n = r.gen_range(1..=3);
        let a: Vec<i64> = (0..n).map(|_| r.gen_range(-3..=3)).collect();
        let c = r.gen_range(-3..=3);
        let atoms: Vec<usize> = (0..n).collect();
        let beta = mcnaughton_clamped(&ClampedAffine::new(a.clone(), c), &atoms);
        let points = (0..n).fold(vec![vec![]], |acc: Vec<Vec<i64>>, _| {
            acc.into_iter().flat_map(|p| axis.iter().map(move |&x| [p.clone(), vec![x]].concat())).collect()
        });
        for x in points {
            let want = (a.iter().zip(&x).map(|(a, x)| a * x).sum::<i64>() + c * D).clamp(0, D);
            if first_scaled(&beta, &x) != want {
                grid_bad += 1;
            }
        }
    }

    let opts = HarnessOptions::default();
    let mut ok = grid_bad == 0;
    let mut parts = vec![format!("McNaughton grid mismatches {grid_bad}")];
    for (name, suite) in [("weight/Pr", weight_suite()), ("belief/Bel", belief_suite())] {
        let mut disagree = Vec::new();
        for case in &suite {
            let v = equisat_harness(case, &opts).unwrap();
            if !v.agree() || v.ineq_valid != case.expect_valid {
                disagree.push(case.label.clone());
            }
        }
        ok &= disagree.is_empty();
        parts.push(format!(
            "{name}: {} of {} agree, disagreeing {disagree:?}",
            suite.len() - disagree.len(),
            suite.len()
        ));
    }
    Outcome::new(ok, parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("doctors example, classical Dempster", doctors_classical),
        ("doctors example, free De Morgan algebra", doctors_de_morgan),
        ("doctors example, perturbed classical masses", doctors_perturbed),
        ("fDNF golden output", fdnf_golden),
        ("Möbius inversion and k-monotonicity", mobius_inversion),
        ("completeness constructions round-trip", completeness_round_trip),
        ("weight/belief decision procedures", decision_procedures),
        ("L2/NL soundness and value identities", outer_soundness),
        ("two-layered soundness and term values", two_layered_soundness),
        ("translation faithfulness", translation_faithfulness),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let out = run();
        let status = if out.ok { "PASS" } else { "FAIL" };
        let known = if !out.ok && KNOWN_FAILURES.contains(&id) { " [known failure]" } else { "" };
        println!("{status} {id:>2} {name}{known} ({:.1}s): {}", start.elapsed().as_secs_f64(), out.detail);
        if !out.ok && known.is_empty() {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
