use std::path::PathBuf;
use std::process::Command;

use cli::json::{FiniteSpace, FreeSpace, FunctionDoc, LoadedModel, MassDoc, ModelDoc};
use cli::{run_captured, EXIT_INPUT, EXIT_NO, EXIT_OK, EXIT_USAGE};
use ineq_calculus::{eval, parse_combo_auto, sat_weight, SatOptions};
use lattice_measures::{mobius_transform, zeta};
use models::sample::{random_ds_model, random_dspl_model, random_prob_model};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ratlp::{q, Q};
use serde_json::Value;
use two_layered::AnyModel;

fn bdu(args: &[&str]) -> (i32, String, String) {
    run_captured(std::iter::once("bdu").chain(args.iter().copied()))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

const DOCTOR_1: &str = r#"{"algebra": {"kind": "demorgan_free", "vars": ["a", "b", "c"]},
  "mass": [{"element": "a", "value": "9/10"}, {"element": "b", "value": "0.1"}]}"#;
const DOCTOR_2: &str = r#"{"algebra": {"kind": "demorgan_free", "vars": ["a", "b", "c"]},
  "mass": [{"element": "c", "value": 0.9}, {"element": "b", "value": "1/10"}]}"#;

#[test]
fn entailment_of_a_conjunct() {
    let (code, out, _) = bdu(&["entail", "p & q", "p"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "valid");
    let (code, out, _) = bdu(&["entail", "p", "p & q"]);
    assert_eq!(code, EXIT_NO);
    assert!(out.starts_with("invalid"));
}

#[test]
fn doctors_combination_through_the_binary() {
    let m1 = scratch("m1.json", DOCTOR_1);
    let m2 = scratch("m2.json", DOCTOR_2);
    let out = Command::new(env!("CARGO_BIN_EXE_bdu"))
        .args(["combine", "--rule", "dempster", "--algebra", "demorgan_free"])
        .arg(&m1)
        .arg(&m2)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(r#""a & c": "81/100""#), "{text}");
    assert!(text.contains(r#""a & b": "9/100""#) && text.contains(r#""b & c": "9/100""#));
    assert!(text.contains(r#""b": "1/100""#));
}

#[test]
fn weight_witness_is_the_decision_procedure_model() {
    let (code, out, _) = bdu(&["--json", "sat-weight", "w+[p & -p] >= 1"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"], "sat");
    let doc: ModelDoc = serde_json::from_value(v["model"].clone()).unwrap();
    let AnyModel::Prob(m) = doc.uncertain().unwrap() else { panic!("expected a probabilistic model") };
    let (c, _) = parse_combo_auto("w+[p & -p] >= 1").unwrap();
    assert!(eval(&m, &c).unwrap());
    let direct = sat_weight(&c, &SatOptions::default()).unwrap();
    match direct.witness() {
        Some(ineq_calculus::Witness::Weight(w)) => assert_eq!(w, &m),
        other => panic!("{other:?}"),
    }
    // Text mode prints the verdict, then the same model document.
    let (code, text, _) = bdu(&["sat-weight", "w+[p & -p] >= 1"]);
    assert_eq!(code, EXIT_OK);
    let (head, body) = text.split_once('\n').unwrap();
    assert_eq!(head, "sat");
    assert_eq!(serde_json::from_str::<ModelDoc>(body).unwrap(), doc);
}

#[test]
fn exit_codes() {
    assert_eq!(bdu(&["sat-weight", "w+[p] >= 1 and w+[p] < 1"]).0, EXIT_NO);
    assert_eq!(bdu(&["no-such-command"]).0, EXIT_USAGE);
    assert_eq!(bdu(&["nf", "p", "--form", "xnf"]).0, EXIT_USAGE);
    assert_eq!(bdu(&["sat-weight", "b+[p] >= 1"]).0, EXIT_USAGE);
    assert_eq!(bdu(&["entail", "p &", "p"]).0, EXIT_INPUT);
    assert_eq!(bdu(&["mobius", "/nonexistent/file.json"]).0, EXIT_INPUT);
    assert_eq!(bdu(&["eval-luk", "p", "--val", r#"{"p": ["2", "0"]}"#]).0, EXIT_INPUT);
    assert_eq!(bdu(&["--help"]).0, EXIT_OK);
}

#[test]
fn paraconsistent_weights() {
    let (code, out, _) = bdu(&["--json", "entail-weight", "w+[p] + w+[-p] <= 1"]);
    assert_eq!(code, EXIT_NO);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"], "invalid");
    let m = serde_json::from_value::<ModelDoc>(v["model"].clone()).unwrap().uncertain().unwrap();
    let (c, _) = parse_combo_auto("w+[p] + w+[-p] <= 1").unwrap();
    assert!(!eval(&m, &c).unwrap());
}

#[test]
fn luk_values() {
    let val = r#"{"p": ["3/5", "3/10"], "q": ["1/2", "1/2"]}"#;
    let (code, out, _) = bdu(&["eval-luk", "p -> q", "--logic", "l2", "--val", val]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("(9/10, 1/5)"));
    let (_, out, _) = bdu(&["eval-luk", "-p", "--logic", "nl", "--val", val, "--decimals", "2"]);
    assert_eq!(out.lines().next(), Some("(3/10 (0.30), 3/5 (0.60))"));
    assert_eq!(bdu(&["classify", "1/2", "1/2"]).1.lines().last(), Some("classical"));
    assert_eq!(bdu(&["classify", "3/5", "3/10"]).1.lines().last(), Some("incomplete"));
}

#[test]
fn two_layer_evaluation_on_a_model_file() {
    let model = r#"{"kind": "ds", "vars": ["p"], "states": ["s0", "s1"],
        "vplus": {"p": [0]}, "vminus": {"p": [0, 1]}, "mass": {"{s0}": "1/3", "{s0,s1}": "2/3"}}"#;
    let path = scratch("ds.json", model);
    let (code, out, _) =
        bdu(&["--json", "eval-two-layer", "B[p]", "--logic", "bel-l2", "--model", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], serde_json::json!(["1/3", "1"]));
    assert_eq!(v["class"], "contradictory");
}

#[test]
fn normal_forms_and_lindenbaum() {
    assert_eq!(bdu(&["nf", "-(p & q)", "--form", "nnf"]).1.trim(), "-p | -q");
    let (_, out, _) = bdu(&["nf", "p & q", "--form", "fdnf", "--lits", "p,-p,q,-q"]);
    assert_eq!(out.trim(), "p & q | p & -p & q | p & q & -q | p & -p & q & -q");
    let (_, out, _) = bdu(&["--json", "lindenbaum", "--vars", "p"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
    let (_, out, _) = bdu(&["lindenbaum", "--vars", "p,q"]);
    assert_eq!(out.lines().next(), Some("166 classes"));
}

#[test]
fn axioms_and_translations() {
    assert_eq!(bdu(&["check-axioms", "--logic", "nl", "--trials", "50"]).0, EXIT_OK);
    assert_eq!(bdu(&["check-axioms", "--logic", "weight", "--trials", "10"]).0, EXIT_OK);
    let (code, out, _) = bdu(&["translate", "--dir", "w2l", "w+(p) >= 1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "Dt Pr[p]");
    let f = scratch("b.txt", "b+[p] < 1\n");
    let (_, out, _) = bdu(&["translate", "--dir", "b2l", "--in", f.to_str().unwrap()]);
    assert_eq!(out.trim(), "~Dt B[p]");
    assert_eq!(bdu(&["translate", "--dir", "w2l"]).0, EXIT_USAGE);
}

#[test]
fn same_seed_same_bytes() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_bdu"))
            .args(["--json", "--seed", seed, "check-axioms", "--logic", "bel-nl", "--trials", "20", "--bel-leq-pl"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("7"), run("7"));
    let a = bdu(&["--seed", "3", "check-axioms", "--logic", "l2", "--trials", "30"]);
    let b = bdu(&["--seed", "3", "check-axioms", "--logic", "l2", "--trials", "30"]);
    assert_eq!(a, b);
}

// Round trips: every JSON document re-parses into the types it came from
// and prints the same again.

fn reemit_model(text: &str) -> String {
    let doc: ModelDoc = serde_json::from_str(text).unwrap();
    let again = match doc.load().unwrap() {
        LoadedModel::Frame(m) => ModelDoc::frame(&m, &doc.var_names()),
        LoadedModel::Uncertain(m) => ModelDoc::of_model(&m, &doc.var_names()),
    };
    serde_json::to_string_pretty(&again).unwrap()
}

#[test]
fn model_documents_round_trip() {
    let (_, out, _) = bdu(&["--json", "canonical-model", "--vars", "p,q"]);
    assert_eq!(reemit_model(&out), out.trim_end());
    for cmd in [["sat-weight", "w+[p] >= 1 and w-[q] > 0"], ["sat-belief", "b+[p | q] >= 1 and b+[p] < 1"]] {
        let (code, out, _) = bdu(&["--json", cmd[0], cmd[1]]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        let model = serde_json::to_string(&v["model"]).unwrap();
        assert_eq!(serde_json::from_str::<Value>(&reemit_model(&model)).unwrap(), v["model"]);
    }
}

#[test]
fn mass_documents_round_trip() {
    let (_, out, _) = bdu(&["combine", DOCTOR_1, DOCTOR_2]);
    let doc: MassDoc = serde_json::from_str(&out).unwrap();
    let space = FreeSpace::new(&doc.algebra).unwrap();
    let m = space.mass(&doc.mass.pairs()).unwrap();
    let entries = m.iter().map(|(e, v)| (space.name(e), v.clone())).collect();
    let again = MassDoc::from_entries(doc.algebra.clone(), entries, None);
    assert_eq!(serde_json::to_string_pretty(&again).unwrap(), out.trim_end());
    assert_eq!(m.total(), &q(1, 1));
}

#[test]
fn function_documents_round_trip() {
    let input = r#"{"lattice": {"kind": "lindenbaum", "vars": ["p"]},
        "values": {"p & -p": "1/10", "p": "1/4", "-p": "1/3", "p | -p": "1"}}"#;
    let (_, out, _) = bdu(&["mobius", "--json", input]);
    let doc: FunctionDoc = serde_json::from_str(&out).unwrap();
    let space = FiniteSpace::new(&doc.lattice).unwrap();
    let mass = space.sparse(doc.mass.as_ref().unwrap()).unwrap();
    let (_, back, _) = bdu(&["mobius", "--json", "--inverse", &out]);
    let back: FunctionDoc = serde_json::from_str(&back).unwrap();
    let values = back.measure(&space).unwrap().values;
    assert_eq!(values, zeta(&mass, &space.lat));
    assert_eq!(mobius_transform(&values, &space.lat), mass);
    let orig: FunctionDoc = serde_json::from_str(input).unwrap();
    assert_eq!(orig.measure(&space).unwrap().values, values);
}

#[test]
fn formula_outputs_reparse() {
    let (_, out, _) = bdu(&["--json", "nf", "-(p | -q) & r", "--form", "cnf"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let sig = bd_core::Signature::new(["p", "q", "r"]).unwrap();
    let f = bd_core::parse_bd(v["formula"].as_str().unwrap(), &sig, false).unwrap();
    assert!(bd_core::equivalent(&f, &bd_core::parse_bd("-(p | -q) & r", &sig, false).unwrap()));
    let (_, out, _) = bdu(&["--json", "translate", "--dir", "l2w", "Dt Pr[p] & ~Dt Pr[q]"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let shown = v["output"].as_str().unwrap();
    let (c, sig) = parse_combo_auto(shown).unwrap();
    assert_eq!(c.display(&sig).to_string(), shown);
    assert_eq!(c.kind(), Some(ineq_calculus::AtomKind::Weight));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_models_round_trip(seed in any::<u64>(), nvars in 1usize..=3, nstates in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vars: Vec<String> = ["p", "q", "r"][..nvars].iter().map(|s| s.to_string()).collect();
        let models = [
            AnyModel::Prob(random_prob_model(&mut rng, nvars, nstates)),
            AnyModel::Ds(random_ds_model(&mut rng, nvars, nstates, 3)),
            AnyModel::DsPl(random_dspl_model(&mut rng, nvars, nstates, 3, seed % 2 == 0)),
        ];
        for m in models {
            let doc = ModelDoc::of_model(&m, &vars);
            let text = serde_json::to_string(&doc).unwrap();
            let back = serde_json::from_str::<ModelDoc>(&text).unwrap().uncertain().unwrap();
            prop_assert_eq!(format!("{back:?}"), format!("{m:?}"));
        }
    }

    #[test]
    fn decimal_and_fraction_inputs_agree(num in 0u32..=1000) {
        let frac = format!(r#"{{"lattice": {{"kind": "chain", "size": 2}}, "mass": {{"1": "{num}/1000"}}}}"#);
        let dec = format!(r#"{{"lattice": {{"kind": "chain", "size": 2}}, "mass": {{"1": {}}}}}"#, f64::from(num) / 1000.0);
        let a: FunctionDoc = serde_json::from_str(&frac).unwrap();
        let b: FunctionDoc = serde_json::from_str(&dec).unwrap();
        let s = FiniteSpace::new(&a.lattice).unwrap();
        let va: Vec<Q> = s.sparse(a.mass.as_ref().unwrap()).unwrap();
        prop_assert_eq!(va, s.sparse(b.mass.as_ref().unwrap()).unwrap());
    }
}
