use std::collections::BTreeMap;

use luk_two::axioms::{axioms, instantiate, rules};
use luk_two::{classify, falsify, parse_outer, Classification, FalsifyOptions, Logic, Outer, TwoPoint, Valuation};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratlp::{q, Q};

const ATOMS: [&str; 3] = ["p", "q", "r"];

fn tp(a: (i64, i64), b: (i64, i64)) -> TwoPoint {
    TwoPoint::new(q(a.0, a.1), q(b.0, b.1)).unwrap()
}

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
    TwoPoint::new(x, y).unwrap()
}

fn random_valuation(rng: &mut ChaCha8Rng) -> Valuation<String> {
    ATOMS.iter().map(|a| (a.to_string(), random_point(rng))).collect()
}

fn random_formula(rng: &mut ChaCha8Rng, logic: Logic, depth: usize) -> Outer<String> {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => Outer::Top,
            1 => Outer::Bot,
            _ => Outer::Atom(ATOMS[rng.gen_range(0..3)].to_string()),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_formula(rng, logic, depth - 1);
    let x = sub(rng);
    let pick = rng.gen_range(0..14);
    match (pick, logic) {
        (0, _) => x.neg(),
        (1, _) => x.sim(),
        (2, Logic::L2) => x.delta(),
        (3, Logic::L2) => x.delta_top(),
        (2 | 3, Logic::NL) => x.neg(),
        (4, _) => x.and(sub(rng)),
        (5, _) => x.or(sub(rng)),
        (6, _) => x.fus(sub(rng)),
        (7, _) => x.oplus(sub(rng)),
        (8, _) => x.ominus(sub(rng)),
        (9, _) => x.equiv(sub(rng)),
        (10 | 11, Logic::L2) => x.imp(sub(rng)),
        (10, Logic::NL) => x.wimp(sub(rng)),
        (11, Logic::NL) => x.simp(sub(rng)),
        (12, Logic::NL) => x.sequiv(sub(rng)),
        _ => x.neg().sim(),
    }
}

fn ev(f: &Outer<String>, logic: Logic, v: &Valuation<String>) -> TwoPoint {
    f.eval_with(logic, &|a: &String| v.get(a).cloned().ok_or(())).unwrap()
}

fn logic_of(nl: bool) -> Logic {
    if nl {
        Logic::NL
    } else {
        Logic::L2
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    /// The closed coordinate formulas agree with expansion into primitives.
    #[test]
    fn desugaring_preserves_values(seed in any::<u64>(), nl in any::<bool>()) {
        let logic = logic_of(nl);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, logic, 4);
        let v = random_valuation(&mut rng);
        prop_assert_eq!(ev(&f, logic, &v), ev(&f.desugar(logic), logic, &v));
    }

    #[test]
    fn nnf_shape_and_value(seed in any::<u64>(), nl in any::<bool>()) {
        let logic = logic_of(nl);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, logic, 4);
        let n = f.nnf(logic);
        prop_assert!(n.is_nnf());
        prop_assert!(n.check(logic).is_ok());
        let v = random_valuation(&mut rng);
        let (a, b) = (ev(&f, logic, &v), ev(&n, logic, &v));
        match logic {
            Logic::L2 => prop_assert_eq!(a, b),
            Logic::NL => prop_assert_eq!(a.first, b.first, "{} ~~> {} at {:?}", f, n, v),
        }
    }

    /// On the lattice fragment every NL rewrite is a strong equivalence.
    #[test]
    fn nl_lattice_nnf_is_exact(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        fn lattice(rng: &mut ChaCha8Rng, depth: usize) -> Outer<String> {
            if depth == 0 || rng.gen_bool(0.3) {
                return Outer::Atom(ATOMS[rng.gen_range(0..3)].to_string());
            }
            match rng.gen_range(0..3) {
                0 => lattice(rng, depth - 1).neg(),
                1 => lattice(rng, depth - 1).and(lattice(rng, depth - 1)),
                _ => lattice(rng, depth - 1).or(lattice(rng, depth - 1)),
            }
        }
        let f = lattice(&mut rng, 5);
        let v = random_valuation(&mut rng);
        prop_assert_eq!(ev(&f, Logic::NL, &v), ev(&f.nnf(Logic::NL), Logic::NL, &v));
    }

    #[test]
    fn conflation_distributes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_valuation(&mut rng);
        let l = Logic::L2;
        let conf = |f: Outer<String>| f.neg().sim();
        let (x, y) = (random_formula(&mut rng, l, 2), random_formula(&mut rng, l, 2));
        let bin: [fn(Outer<String>, Outer<String>) -> Outer<String>; 7] =
            [Outer::imp, Outer::and, Outer::or, Outer::fus, Outer::oplus, Outer::ominus, Outer::equiv];
        for op in bin {
            let lhs = conf(op(x.clone(), y.clone()));
            let rhs = op(conf(x.clone()), conf(y.clone()));
            prop_assert_eq!(ev(&lhs, l, &v), ev(&rhs, l, &v));
        }
        prop_assert_eq!(ev(&conf(x.clone().sim()), l, &v), ev(&conf(x.clone()).sim(), l, &v));
        prop_assert_eq!(ev(&conf(x.clone().delta()), l, &v), ev(&conf(x.clone()).delta(), l, &v));
    }

    #[test]
    fn negations_and_deltas(seed in any::<u64>(), nl in any::<bool>()) {
        let logic = logic_of(nl);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_formula(&mut rng, logic, 3);
        let v = random_valuation(&mut rng);
        let a = ev(&x, logic, &v);
        prop_assert_eq!(&ev(&x.clone().neg().neg(), logic, &v), &a);
        let ss = ev(&x.clone().sim().sim(), logic, &v);
        match logic {
            Logic::L2 => prop_assert_eq!(&ss, &a),
            Logic::NL => prop_assert_eq!(&ss.first, &a.first),
        }
        if logic == Logic::L2 {
            let d = ev(&x.clone().delta(), logic, &v);
            let crisp = |c: &Q| *c == q(0, 1) || *c == q(1, 1);
            prop_assert!(crisp(&d.first) && crisp(&d.second));
            let dt = ev(&x.clone().delta_top(), logic, &v);
            prop_assert!(dt == TwoPoint::top() || dt == TwoPoint::bottom());
            prop_assert_eq!(&ev(&x.clone().delta_top().neg().sim(), logic, &v), &dt);
        }
    }
}

#[test]
fn axioms_are_designated_and_rules_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for logic in [Logic::L2, Logic::NL] {
        for (name, schema) in axioms(logic) {
            for _ in 0..1000 {
                let args: Vec<Outer<String>> = (0..3).map(|_| random_formula(&mut rng, logic, 2)).collect();
                let inst = instantiate(&schema, &args);
                let v = random_valuation(&mut rng);
                assert!(logic.designated(&ev(&inst, logic, &v)), "{logic} axiom {name}: {inst} at {v:?}");
            }
        }
        // Premises are rarely designated at random points, so rules are
        // checked on the crisp-and-half grid.
        let grid: Vec<TwoPoint> = [0, 1, 2].iter().flat_map(|&x| [0, 1, 2].map(move |y| tp((x, 2), (y, 2)))).collect();
        for rule in rules(logic) {
            for _ in 0..200 {
                let args: Vec<Outer<String>> = (0..2).map(|_| random_formula(&mut rng, logic, 2)).collect();
                let prem: Vec<Outer<String>> = rule.premises.iter().map(|p| instantiate(p, &args)).collect();
                let concl = instantiate(&rule.conclusion, &args);
                for _ in 0..30 {
                    let v: Valuation<String> =
                        ATOMS.iter().map(|a| (a.to_string(), grid[rng.gen_range(0..grid.len())].clone())).collect();
                    if prem.iter().all(|p| logic.designated(&ev(p, logic, &v))) {
                        assert!(logic.designated(&ev(&concl, logic, &v)), "{} {logic}", rule.name);
                    }
                }
            }
        }
    }
}

#[test]
fn implication_example_and_co_implication_dual() {
    let v: Valuation<String> =
        BTreeMap::from([("a".to_string(), tp((3, 5), (3, 10))), ("b".to_string(), tp((2, 5), (1, 2)))]);
    let imp = parse_outer("a -> b", Logic::L2).unwrap();
    let val = ev(&imp, Logic::L2, &v);
    assert_eq!(val, tp((4, 5), (1, 5)));
    // -(a -> b) must equal -b (-) -a, the swap of the value.
    let dual = parse_outer("-b (-) -a", Logic::L2).unwrap();
    assert_eq!(ev(&dual, Logic::L2, &v), val.swap());
}

#[test]
fn delta_top_detects_the_top() {
    let f = parse_outer("Dt p", Logic::L2).unwrap();
    let at = |p: TwoPoint| ev(&f, Logic::L2, &BTreeMap::from([("p".to_string(), p)]));
    assert_eq!(at(tp((1, 1), (0, 1))), TwoPoint::top());
    assert_eq!(at(tp((1, 1), (1, 5))), TwoPoint::bottom());
    // The defining abbreviation gives the same values.
    let long = parse_outer("D p & ~-D p", Logic::L2).unwrap();
    for p in [tp((1, 1), (0, 1)), tp((1, 1), (1, 5)), tp((0, 1), (0, 1)), tp((1, 2), (1, 2))] {
        assert_eq!(ev(&long, Logic::L2, &BTreeMap::from([("p".to_string(), p.clone())])), at(p));
    }
}

#[test]
fn nl_detects_contradictory_region() {
    let f = parse_outer("~p ~> -p", Logic::NL).unwrap();
    let at = |p: TwoPoint| Logic::NL.designated(&ev(&f, Logic::NL, &BTreeMap::from([("p".to_string(), p)])));
    assert!(at(tp((4, 5), (2, 5))));
    assert!(!at(tp((1, 5), (2, 5))));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let p = random_point(&mut rng);
        assert_eq!(at(p.clone()), classify(&p) != Classification::Incomplete);
    }
}

#[test]
fn classification_matches_delta_tests() {
    let d = parse_outer("D(p -> ~-p)", Logic::L2).unwrap();
    let dt = parse_outer("Dt(p <-> ~-p)", Logic::L2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut points = vec![tp((1, 2), (1, 2)), tp((1, 5), (1, 5)), tp((9, 10), (9, 10))];
    points.extend((0..300).map(|_| random_point(&mut rng)));
    for p in points {
        let v = BTreeMap::from([("p".to_string(), p.clone())]);
        let c = classify(&p);
        let d1 = ev(&d, Logic::L2, &v).first;
        assert_eq!(d1 == q(1, 1), c != Classification::Contradictory, "{p}");
        assert_eq!(ev(&dt, Logic::L2, &v) == TwoPoint::top(), c == Classification::Classical, "{p}");
    }
    assert_eq!(classify(&tp((1, 2), (1, 2))), Classification::Classical);
    assert_eq!(classify(&tp((1, 5), (1, 5))), Classification::Incomplete);
    assert_eq!(classify(&tp((9, 10), (9, 10))), Classification::Contradictory);
}

#[test]
fn falsification() {
    let o = FalsifyOptions::default();
    let waj = parse_outer("((p -> q) -> q) -> ((q -> p) -> p)", Logic::L2).unwrap();
    assert!(falsify(&[], &waj, Logic::L2, &o).unwrap().is_none());
    let waj_nl = parse_outer("((p ~> q) ~> q) ~> ((q ~> p) ~> p)", Logic::NL).unwrap();
    assert!(falsify(&[], &waj_nl, Logic::NL, &o).unwrap().is_none());
    let pq = parse_outer("p -> q", Logic::L2).unwrap();
    let cv = falsify(&[], &pq, Logic::L2, &o).unwrap().expect("p -> q is not valid");
    assert!(!Logic::L2.designated(&ev(&pq, Logic::L2, &cv)));
    let p = parse_outer("p", Logic::L2).unwrap();
    let conf = parse_outer("~-p", Logic::L2).unwrap();
    assert!(falsify(std::slice::from_ref(&p), &conf, Logic::L2, &o).unwrap().is_none());
    // Conflation is not valid on its own.
    assert!(falsify(&[], &conf.clone().imp(p), Logic::L2, &o).unwrap().is_some());
}
