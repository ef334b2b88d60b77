use std::collections::BTreeSet;

use bd_core::{Idnf, Lindenbaum, Signature};
use lattice_measures::*;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use ratlp::{q, qi, Q};

/// Intersection-closed families of subsets of a 5-element set that contain
/// the full set; ordered by inclusion these are lattices.
fn random_lattice(max: usize) -> impl Strategy<Value = FiniteLattice> {
    proptest::collection::vec(0u64..32, 0..6)
        .prop_map(|gens| {
            let mut fam: BTreeSet<u64> = gens.into_iter().collect();
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
            fam.into_iter().collect::<Vec<u64>>()
        })
        .prop_filter("small enough", move |f| f.len() <= max)
        .prop_map(|f| FiniteLattice::from_sets(&f, None, true).expect("closure systems are lattices"))
}

/// Weights scaled to a total of `w / (w + slack)`.
fn random_masses(n: usize, normalized: bool) -> impl Strategy<Value = Vec<Q>> {
    let slack = if normalized { 0..1u32 } else { 0..4u32 };
    (proptest::collection::vec(0u32..8, n), slack).prop_map(|(w, s)| {
        let t: u32 = w.iter().sum::<u32>() + s;
        if t == 0 {
            return vec![Q::zero(); w.len()];
        }
        w.iter().map(|&x| q(x as i64, t as i64)).collect()
    })
}

fn lattice_with_mass(max: usize) -> impl Strategy<Value = (FiniteLattice, MassFunction<usize>)> {
    random_lattice(max).prop_flat_map(|l| {
        let n = l.len();
        (Just(l), random_masses(n, false))
            .prop_map(|(l, m)| (l, MassFunction::from_pairs(m.into_iter().enumerate()).unwrap()))
    })
}

fn de_morgan_lattices() -> Vec<FiniteLattice> {
    vec![
        FiniteLattice::powerset(&["a", "b", "c"]),
        FiniteLattice::diamond(),
        FiniteLattice::chain(4),
        FiniteLattice::from_lindenbaum(&Lindenbaum::new(1, true).unwrap(), &Signature::new(["p"]).unwrap()),
        FiniteLattice::from_lindenbaum(&Lindenbaum::new(1, false).unwrap(), &Signature::new(["p"]).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mobius_inversion_is_exact(
        l in random_lattice(20),
        nums in proptest::collection::vec(-12i64..12, 20),
    ) {
        let f: Vec<Q> = nums[..l.len()].iter().map(|&x| q(x, 7)).collect();
        let g = mobius_transform(&f, &l);
        prop_assert_eq!(&mobius_by_function(&f, &l), &g);
        prop_assert_eq!(&zeta(&g, &l), &f);
        prop_assert_eq!(mobius_transform(&zeta(&f, &l), &l), f);
    }

    #[test]
    fn beliefs_from_masses_pass_the_check((l, m) in lattice_with_mass(20)) {
        let bel = belief_from_mass(&m, &l);
        let r = check_measure(&bel, &l, 3);
        prop_assert!(r.ok, "{}", r.describe(&l));
        let back = mobius_transform(&bel.values, &l);
        let dense: Vec<Q> = (0..l.len()).map(|x| m.get(&x)).collect();
        prop_assert_eq!(back, dense);
    }

    // A monotone function with a negative Möbius mass at x violates the
    // inequality over the lower covers of x.
    #[test]
    fn negative_mobius_mass_is_detected(
        l in random_lattice(8),
        nums in proptest::collection::vec(-3i64..6, 8),
    ) {
        let n = l.len();
        let g: Vec<Q> = nums[..n].iter().map(|&x| qi(x)).collect();
        let f = zeta(&g, &l);
        let monotone = (0..n).all(|a| (0..n).all(|b| !Lattice::leq(&l, &a, &b) || f[a] <= f[b]));
        let lo = f.iter().min().unwrap().clone();
        let hi = f.iter().max().unwrap().clone();
        prop_assume!(monotone && lo >= Q::zero() && hi > Q::zero());
        let f: Vec<Q> = f.iter().map(|x| x / &hi).collect();
        let has_negative = mobius_transform(&f, &l).iter().any(|x| x.is_negative());
        let kmax = (0..n).map(|x| l.lower_covers(x)).max().unwrap_or(0).max(3);
        let report = check_measure(&Measure { role: Role::Belief, values: f }, &l, kmax);
        prop_assert_eq!(report.ok, !has_negative);
    }

    #[test]
    fn dual_is_an_involution(which in 0usize..5, w in proptest::collection::vec(0u32..8, 16), slack in 0u32..3) {
        let l = &de_morgan_lattices()[which];
        let n = l.len();
        let t: u32 = w[..n].iter().sum::<u32>() + slack + 1;
        let m = MassFunction::from_pairs(w[..n].iter().enumerate().map(|(i, &x)| (i, q(x as i64, t as i64)))).unwrap();
        let bel = belief_from_mass(&m, l);
        let pl = dual_measure(&bel, l).unwrap();
        let r = check_measure(&pl, l, 3);
        prop_assert!(r.ok, "{}", r.describe(l));
        prop_assert_eq!(dual_measure(&pl, l).unwrap(), bel);
        prop_assert_eq!(plausibility_from_mass(&m, l).unwrap(), pl);
    }

    #[test]
    fn classical_plausibility_counts_intersections(w in random_masses(8, true)) {
        prop_assume!(w.iter().any(|x| !x.is_zero()));
        let p = FiniteLattice::powerset(&["a", "b", "c"]);
        let m = MassFunction::normalized(w.iter().cloned().enumerate()).unwrap();
        let pl = dual_measure(&belief_from_mass(&m, &p), &p).unwrap();
        for a in 0..8usize {
            let direct: Q = (0..8usize).filter(|b| a & b != 0).map(|b| w[b].clone()).sum();
            prop_assert_eq!(&pl.values[a], &direct);
        }
    }

    #[test]
    fn classical_dempster_is_commutative_and_associative(
        a in random_masses(7, true), b in random_masses(7, true), c in random_masses(7, true),
    ) {
        let p = FiniteLattice::powerset(&["a", "b", "c"]);
        let mk = |w: &Vec<Q>| MassFunction::from_pairs(w.iter().cloned().enumerate().map(|(i, v)| (i + 1, v))).unwrap();
        let (ma, mb, mc) = (mk(&a), mk(&b), mk(&c));
        prop_assume!(ma.is_normalized() && mb.is_normalized() && mc.is_normalized());
        let comb = |x: &MassFunction<usize>, y: &MassFunction<usize>| combine(x, y, Rule::Dempster, Algebra::Powerset, &p);
        prop_assert_eq!(comb(&ma, &mb), comb(&mb, &ma));
        if let (Ok(ab), Ok(bc)) = (comb(&ma, &mb), comb(&mb, &mc)) {
            prop_assert_eq!(comb(&ab, &mc), comb(&ma, &bc));
        }
    }

    #[test]
    fn free_rule_multiplies_totals(
        a in proptest::collection::vec((0usize..166, 0u32..5), 1..5),
        b in proptest::collection::vec((0usize..166, 0u32..5), 1..5),
        s in 0u32..4,
    ) {
        let lb = Lindenbaum::new(2, false).unwrap();
        let lat = FreeDeMorgan { with_constants: false };
        let mk = |v: &Vec<(usize, u32)>| {
            let t: u32 = v.iter().map(|x| x.1).sum::<u32>() + s + 1;
            MassFunction::from_pairs(v.iter().map(|&(i, w)| (lb.idnf(i), q(w as i64, t as i64)))).unwrap()
        };
        let (m1, m2) = (mk(&a), mk(&b));
        let m = combine(&m1, &m2, Rule::Dempster, Algebra::DeMorganFree, &lat).unwrap();
        prop_assert_eq!(m.total(), &(m1.total() * m2.total()));
        prop_assert_eq!(&m, &combine(&m2, &m1, Rule::Dempster, Algebra::DeMorganFree, &lat).unwrap());
        prop_assert_eq!(&m, &combine(&m1, &m2, Rule::DuboisPrade, Algebra::DeMorganFree, &lat).unwrap());
        // The explicit algebra gives the same answer.
        let fl = FiniteLattice::from_lindenbaum(&lb, &Signature::numbered(2));
        let e1 = m1.map_elements(|x| lb.class_of_key(key(&lb, x)).unwrap());
        let e2 = m2.map_elements(|x| lb.class_of_key(key(&lb, x)).unwrap());
        let em = combine(&e1, &e2, Rule::Dempster, Algebra::DeMorganFree, &fl).unwrap();
        prop_assert_eq!(em.map_elements(|&i| lb.idnf(i)), m);
    }

    #[test]
    fn bounded_rule_on_free_algebra_needs_no_normalization(a in random_masses(5, true), b in random_masses(5, true)) {
        let lb = Lindenbaum::new(1, true).unwrap();
        let fl = FiniteLattice::from_lindenbaum(&lb, &Signature::new(["p"]).unwrap());
        let bot = fl.bottom().unwrap();
        let others: Vec<usize> = (0..6).filter(|&x| x != bot).collect();
        let mk = |w: &Vec<Q>| MassFunction::from_pairs(others.iter().copied().zip(w.iter().cloned())).unwrap();
        let (m1, m2) = (mk(&a), mk(&b));
        prop_assume!(m1.is_normalized() && m2.is_normalized());
        let bounded = combine(&m1, &m2, Rule::Dempster, Algebra::DeMorganBounded, &fl).unwrap();
        let free = combine(&m1, &m2, Rule::Dempster, Algebra::DeMorganFree, &fl).unwrap();
        prop_assert_eq!(bounded, free);
    }

    #[test]
    fn extension_agrees_on_upsets(w in random_masses(6, false)) {
        // Upsets of P(Lit) for one variable, as sets of the 4 states.
        let lb = Lindenbaum::new(1, true).unwrap();
        let dom: Vec<u64> = lb.keys().to_vec();
        let l = FiniteLattice::from_sets(&dom, None, true).unwrap();
        let m = MassFunction::from_pairs(w.iter().cloned().enumerate()).unwrap();
        let bel = belief_from_mass(&m, &l);
        let ext = extend_to_powerset(&dom, &bel.values, 4).unwrap();
        for (i, d) in dom.iter().enumerate() {
            prop_assert_eq!(&ext[d], &bel.values[i]);
        }
        prop_assert_eq!(&ext[&15], m.total());
        let full = FiniteLattice::powerset(&["s0", "s1", "s2", "s3"]);
        let ext_values: Vec<Q> = (0..16u64).map(|y| ext[&y].clone()).collect();
        let ext_bel = Measure { role: Role::Belief, values: ext_values };
        prop_assert!(check_measure(&ext_bel, &full, 3).ok);
    }
}

fn key(lb: &Lindenbaum, x: &Idnf) -> u64 {
    lb.key_of(&x.to_formula())
}

#[test]
fn extension_of_a_full_powerset_is_the_identity() {
    let dom: Vec<u64> = (0..8).collect();
    let bel: Vec<Q> = vec![qi(0), q(1, 10), q(1, 5), q(2, 5), q(1, 10), q(3, 10), q(1, 2), qi(1)];
    let ext = extend_to_powerset(&dom, &bel, 3).unwrap();
    assert_eq!(ext.into_values().collect::<Vec<_>>(), bel);
}

#[test]
fn perturbed_doctors() {
    let p = FiniteLattice::powerset(&["a", "b", "c"]);
    let (a, b, c) = (1usize, 2usize, 4usize);
    let m1 = MassFunction::normalized([(a, q(89995, 100000)), (b, q(9995, 100000)), (c, q(1, 10000))]).unwrap();
    let m2 = MassFunction::normalized([(c, q(89995, 100000)), (b, q(9995, 100000)), (a, q(1, 10000))]).unwrap();
    let m = combine(&m1, &m2, Rule::Dempster, Algebra::Powerset, &p).unwrap();
    let f = |x: usize| m.get(&x).to_f64().unwrap();
    assert!((f(b) - 0.9823).abs() < 5e-4, "{}", f(b));
    assert!((f(a) - 0.00885).abs() < 5e-4 && (f(c) - 0.00885).abs() < 5e-4);
    assert_eq!(m.get(&a), m.get(&c));
}
