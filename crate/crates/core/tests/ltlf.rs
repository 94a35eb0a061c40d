mod common;

use common::atoms;
use common::strategies::{formula, trace};
use mpsynth::ltlf::{desugar, evaluate, parse_formula, parse_spec, satisfies, Kind};
use mpsynth::{Error, Formula, Trace};
use proptest::prelude::*;

fn p(s: &str) -> Formula {
    parse_formula(s, None).unwrap()
}

fn a(name: &str) -> Formula {
    Formula::atom(name)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn desugaring_preserves_satisfaction(f in formula(atoms(3)), t in trace(atoms(3), 6)) {
        let core = desugar(&f);
        prop_assert!(core.is_core());
        for pos in 0..t.len() {
            prop_assert_eq!(evaluate(&t, &f, pos).unwrap(), evaluate(&t, &core, pos).unwrap());
        }
    }

    #[test]
    fn weak_next_is_dual_of_next(f in formula(atoms(2)), t in trace(atoms(2), 6)) {
        let weak = Formula::weak_next(f.clone());
        let dual = Formula::not(Formula::next(Formula::not(f.clone())));
        for pos in 0..t.len() {
            prop_assert_eq!(evaluate(&t, &weak, pos).unwrap(), evaluate(&t, &dual, pos).unwrap());
        }
        let last = t.len() - 1;
        prop_assert!(!evaluate(&t, &Formula::next(f.clone()), last).unwrap());
        prop_assert!(evaluate(&t, &weak, last).unwrap());
    }

    #[test]
    fn printing_round_trips(f in formula(atoms(3))) {
        prop_assert_eq!(parse_formula(&f.to_string(), None).unwrap(), f);
    }
}

#[test]
fn precedence_and_associativity() {
    assert_eq!(p("!a U b"), Formula::until(Formula::not(a("a")), a("b")));
    assert_eq!(p("F (y1 & x1)"), Formula::eventually(Formula::and(a("y1"), a("x1"))));
    assert_eq!(p("a | b & c"), Formula::or(a("a"), Formula::and(a("b"), a("c"))));
    assert_eq!(p("a -> b -> c"), Formula::implies(a("a"), Formula::implies(a("b"), a("c"))));
    assert_eq!(p("a U b U c"), Formula::until(a("a"), Formula::until(a("b"), a("c"))));
    assert_eq!(p("a R b & c"), Formula::and(Formula::release(a("a"), a("b")), a("c")));
    assert_eq!(p("a -> b <-> c"), Formula::iff(Formula::implies(a("a"), a("b")), a("c")));
    assert_eq!(p("X WX G F a"), Formula::next(Formula::weak_next(Formula::globally(Formula::eventually(a("a"))))));
    assert!(matches!(p("true").kind(), Kind::True));
}

#[test]
fn derived_operators_rewrite_to_the_core() {
    assert_eq!(desugar(&p("F a")), p("true U a"));
    assert_eq!(desugar(&p("G a")), p("!(true U !a)"));
    assert_eq!(desugar(&p("a R b")), p("!(!a U !b)"));
    let iff = desugar(&p("a <-> b"));
    for t in [&[][..], &["a"][..], &["b"][..], &["a", "b"][..]] {
        let tr = Trace::from_atoms(&[t]);
        assert_eq!(satisfies(&tr, &iff), t.len() != 1);
    }
}

#[test]
fn evaluator_examples() {
    let single = Trace::from_atoms(&[&["a"]]);
    assert!(evaluate(&single, &p("a"), 0).unwrap());
    assert!(!evaluate(&single, &p("X a"), 0).unwrap());
    let two = Trace::from_atoms(&[&["a"], &["b"]]);
    assert!(evaluate(&two, &p("a U b"), 0).unwrap());
    assert!(evaluate(&two, &p("a R !b"), 1).is_ok());
    assert!(matches!(evaluate(&two, &p("a"), 2), Err(Error::PositionOutOfRange { .. })));
    assert!(!satisfies(&Trace::default(), &p("true")));
}

#[test]
fn syntax_errors_carry_positions() {
    match parse_formula("a & (b | )", None) {
        Err(Error::Syntax { line: 1, column, .. }) => assert!(column > 1),
        other => panic!("{other:?}"),
    }
    let declared = ["a".to_string()].into_iter().collect();
    assert!(matches!(parse_formula("a & zz", Some(&declared)), Err(Error::UndeclaredAtom(z)) if z == "zz"));
}

#[test]
fn mpl_files() {
    let spec = parse_spec("INPUTS: x\nOUTPUTS: y\nGOAL g1: F y").unwrap();
    assert_eq!((spec.inputs.len(), spec.outputs.len(), spec.num_goals()), (1, 1, 1));

    let three = "# comment\nINPUTS: x\nOUTPUTS: y z  # trailing\n\
        GOAL g1: F y\nGOAL g2: G z\nGOAL g3: x U y\n";
    assert_eq!(parse_spec(three).unwrap().labels(), ["g1", "g2", "g3"]);

    assert!(matches!(parse_spec("INPUTS: x\nOUTPUTS: x\nGOAL g: F x"), Err(Error::Partition(x)) if x == "x"));
    assert!(matches!(parse_spec("INPUTS: x\nOUTPUTS: y\nGOAL g: F w"), Err(Error::UndeclaredAtom(w)) if w == "w"));
    assert!(matches!(
        parse_spec("INPUTS: x\nOUTPUTS: y\nGOAL g: F y\nGOAL g: G y"),
        Err(Error::DuplicateLabel(g)) if g == "g"
    ));
}
