use std::collections::BTreeMap;

use mpsynth::bdd::BddError;
use mpsynth::{BoolFn, Engine, VarId};
use proptest::prelude::*;

const VARS: usize = 6;

#[derive(Clone, Debug)]
enum Expr {
    Var(usize),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Xor(Box<Expr>, Box<Expr>),
}

fn expr() -> impl Strategy<Value = Expr> {
    (0..VARS).prop_map(Expr::Var).prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Not(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Or(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Xor(Box::new(a), Box::new(b))),
        ]
    })
}

fn eval(e: &Expr, bits: u32) -> bool {
    match e {
        Expr::Var(i) => bits >> i & 1 == 1,
        Expr::Not(a) => !eval(a, bits),
        Expr::And(a, b) => eval(a, bits) && eval(b, bits),
        Expr::Or(a, b) => eval(a, bits) || eval(b, bits),
        Expr::Xor(a, b) => eval(a, bits) != eval(b, bits),
    }
}

/// Truth table over all `2^VARS` assignments.
fn table(e: &Expr) -> u64 {
    (0..1u32 << VARS).fold(0, |acc, bits| acc | (eval(e, bits) as u64) << bits)
}

fn setup() -> (Engine, Vec<VarId>) {
    let mut e = Engine::new();
    let vars = (0..VARS).map(|i| e.new_var(format!("v{i}"))).collect();
    (e, vars)
}

fn build(e: &mut Engine, vars: &[VarId], x: &Expr) -> BoolFn {
    match x {
        Expr::Var(i) => e.var(vars[*i]),
        Expr::Not(a) => {
            let a = build(e, vars, a);
            e.not(a).unwrap()
        }
        Expr::And(a, b) | Expr::Or(a, b) | Expr::Xor(a, b) => {
            let (a, b) = (build(e, vars, a), build(e, vars, b));
            match x {
                Expr::And(..) => e.and(a, b),
                Expr::Or(..) => e.or(a, b),
                _ => e.xor(a, b),
            }
            .unwrap()
        }
    }
}

fn assignment(vars: &[VarId], bits: u32) -> BTreeMap<VarId, bool> {
    vars.iter().enumerate().map(|(i, &v)| (v, bits >> i & 1 == 1)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn identity_is_semantic_equality(a in expr(), b in expr()) {
        let (mut e, vars) = setup();
        let (fa, fb) = (build(&mut e, &vars, &a), build(&mut e, &vars, &b));
        prop_assert_eq!(fa == fb, table(&a) == table(&b));
        let ta = table(&a);
        let from_table = e.from_truth_table(&vars, &|bits| ta >> bits & 1 == 1).unwrap();
        prop_assert_eq!(from_table, fa);
        for bits in 0..1u32 << VARS {
            prop_assert_eq!(e.evaluate(fa, &assignment(&vars, bits)).unwrap(), eval(&a, bits));
        }
    }

    #[test]
    fn boolean_laws_hold_as_identities(a in expr(), b in expr()) {
        let (mut e, vars) = setup();
        let (f, g) = (build(&mut e, &vars, &a), build(&mut e, &vars, &b));
        let nf = e.not(f).unwrap();
        let ng = e.not(g).unwrap();
        let and = e.and(f, g).unwrap();
        let or = e.or(f, g).unwrap();
        let lhs = e.not(and).unwrap();
        prop_assert_eq!(lhs, e.or(nf, ng).unwrap());
        let lhs = e.not(or).unwrap();
        prop_assert_eq!(lhs, e.and(nf, ng).unwrap());
        prop_assert_eq!(e.not(nf).unwrap(), f);
        prop_assert_eq!(e.or(f, and).unwrap(), f);
        prop_assert_eq!(e.and(f, or).unwrap(), f);
        prop_assert!(e.node_count(and) <= e.node_count(f) * e.node_count(g));
    }

    #[test]
    fn quantifiers_are_dual(a in expr(), mask in 0u32..1 << VARS) {
        let (mut e, vars) = setup();
        let f = build(&mut e, &vars, &a);
        let qv: Vec<VarId> = vars.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
        let all = e.forall(f, &qv).unwrap();
        let nf = e.not(f).unwrap();
        let ex = e.exists(nf, &qv).unwrap();
        prop_assert_eq!(all, e.not(ex).unwrap());
        let ex = e.exists(f, &qv).unwrap();
        for bits in 0..1u32 << VARS {
            let free = bits & !mask;
            let any = (0..1u32 << VARS).filter(|b| b & !mask == free).any(|b| eval(&a, b));
            prop_assert_eq!(e.evaluate(ex, &assignment(&vars, bits)).unwrap(), any);
        }
    }

    #[test]
    fn picked_assignments_satisfy(a in expr()) {
        let (mut e, vars) = setup();
        let f = build(&mut e, &vars, &a);
        match e.pick_over(f, &vars) {
            Some(asg) => {
                prop_assert_eq!(asg.len(), VARS);
                prop_assert!(e.evaluate(f, &asg).unwrap());
            }
            None => prop_assert_eq!(table(&a), 0),
        }
    }
}

#[test]
fn constants_and_variables() {
    let (mut e, vars) = setup();
    assert!(e.is_true(e.tt()));
    assert_eq!(e.var(vars[0]), e.var(vars[0]));
    assert_eq!(e.try_var(VarId(99)), Err(BddError::UnknownVar(99)));
    let x = e.var(vars[0]);
    let nx = e.not(x).unwrap();
    let contradiction = e.and(x, nx).unwrap();
    assert!(e.is_false(contradiction));
    let ff = e.ff();
    assert_eq!(e.or(x, ff).unwrap(), x);
}

#[test]
fn quantifier_examples() {
    let (mut e, vars) = setup();
    let (x, y) = (e.var(vars[0]), e.var(vars[1]));
    let and = e.and(x, y).unwrap();
    assert_eq!(e.exists(and, &[vars[0]]).unwrap(), y);
    let or = e.or(x, y).unwrap();
    assert_eq!(e.forall(or, &[vars[0]]).unwrap(), y);
}

#[test]
fn substitution_is_simultaneous() {
    let (mut e, vars) = setup();
    let (x, y) = (e.var(vars[0]), e.var(vars[1]));
    let ny = e.not(y).unwrap();
    let f = e.and(x, ny).unwrap();
    // Swapping x and y must give y & !x; sequential substitution would give false.
    let swapped = e.vector_compose(f, &[(vars[0], y), (vars[1], x)]).unwrap();
    let nx = e.not(x).unwrap();
    assert_eq!(swapped, e.and(y, nx).unwrap());
    assert_eq!(e.vector_compose(f, &[]).unwrap(), f);
    let z = e.var(vars[2]);
    assert_eq!(e.vector_compose(z, &[(vars[2], f)]).unwrap(), f);
    assert_eq!(
        e.vector_compose(f, &[(vars[0], y), (vars[0], x)]),
        Err(BddError::DuplicateBinding(vars[0].0))
    );
}

#[test]
fn handles_are_tied_to_their_engine() {
    let (mut a, va) = setup();
    let (b, vb) = setup();
    let fa = a.var(va[0]);
    let fb = b.var(vb[0]);
    assert_eq!(a.and(fa, fb), Err(BddError::EngineMismatch));
}

#[test]
fn node_ceiling_aborts() {
    let (mut e, vars) = setup();
    e.set_ceiling(e.stats().nodes + 2);
    let fns: Vec<BoolFn> = vars.iter().map(|&v| e.var(v)).collect();
    let mut acc = e.ff();
    let mut failed = false;
    for pair in fns.chunks(2) {
        match e.and(pair[0], pair[1]).and_then(|c| e.xor(acc, c)) {
            Ok(f) => acc = f,
            Err(BddError::NodeCeiling { .. }) => {
                failed = true;
                break;
            }
            Err(other) => panic!("{other:?}"),
        }
    }
    assert!(failed);
}
