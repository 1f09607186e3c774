use proptest::prelude::*;

use super::*;
use crate::models::sym::{sym_model, SymCaps};
use crate::scalars::Rig;

fn sym() -> Model<ModCat> {
    sym_model(Rig::Rationals, 2, SymCaps::new(3, 2))
}

fn eval(m: &Model<ModCat>, text: &str) -> OArr {
    evaluate(&ArrowExpr::parse(text).unwrap(), m, &Env::from_model(m)).unwrap()
}

fn agrees(m: &Model<ModCat>, f: &OArr, g: &OArr) -> bool {
    matches!(compare_graded(&m.cat, f, g, None).unwrap().0, Graded::Agree | Graded::Limited(Some(_)))
}

#[test]
fn unit_then_dereliction_is_zero() {
    let m = sym();
    let f = eval(&m, "compose(u[A], eps[A])");
    assert!(agrees(&m, &f, &eval(&m, "zero[K, A]")));
}

#[test]
fn codereliction_then_dereliction_is_identity() {
    let m = sym();
    assert!(agrees(&m, &eval(&m, "compose(eta[A], eps[A])"), &eval(&m, "id[A]")));
}

#[test]
fn flipping_twice_is_the_identity() {
    let m = sym();
    assert_eq!(m.cat.flipped().flipped(), m.cat);
    assert_ne!(m.cat.flipped(), m.cat);
    assert_eq!(m.opposite_wrap().opposite_wrap().cat, m.cat);
}

#[test]
fn unknown_symbols_and_objects_are_errors() {
    let m = sym();
    let env = Env::from_model(&m);
    let e = ArrowExpr::parse("nosuch[A]").unwrap();
    assert!(matches!(evaluate(&e, &m, &env), Err(ModalityError::Unregistered(_))));
    let e = ArrowExpr::parse("id[Q]").unwrap();
    assert!(matches!(evaluate(&e, &m, &env), Err(ModalityError::UnknownObject(_))));
}

#[test]
fn ill_typed_composites_are_rejected() {
    let m = sym();
    let e = ArrowExpr::parse("compose(eps[A], eps[A])").unwrap();
    assert!(evaluate(&e, &m, &Env::from_model(&m)).is_err());
}

fn obj() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![Just("A".to_string()), Just("B".to_string()), Just("K".to_string())];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|o| format!("!{}", wrap(&o))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{}*{}", wrap(&a), wrap(&b))),
            (inner.clone(), inner).prop_map(|(a, b)| format!("({a}+{b})")),
        ]
    })
}

fn wrap(o: &str) -> String {
    if o.contains('+') || o.contains('*') {
        format!("({o})")
    } else {
        o.to_string()
    }
}

fn arrow() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        obj().prop_map(|o| format!("id[{o}]")),
        obj().prop_map(|o| format!("delta[{o}]")),
        (obj(), obj()).prop_map(|(a, b)| format!("f[{a}, {b}]")),
        Just("mK[]".to_string()),
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..3).prop_map(|v| format!("compose({})", v.join(", "))),
            prop::collection::vec(inner.clone(), 1..3).prop_map(|v| format!("tensor({})", v.join(", "))),
            prop::collection::vec(inner.clone(), 1..3).prop_map(|v| format!("sum({})", v.join(", "))),
            inner.prop_map(|a| format!("lift({a})")),
        ]
    })
}

proptest! {
    #[test]
    fn rendering_reparses_to_the_same_tree(text in arrow()) {
        let e = ArrowExpr::parse(&text).unwrap();
        prop_assert_eq!(ArrowExpr::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn object_rendering_reparses(text in obj()) {
        let o = ObjExpr::parse(&text).unwrap();
        prop_assert_eq!(ObjExpr::parse(&o.to_string()).unwrap(), o);
    }

    #[test]
    fn parser_never_panics(text in "\\PC{0,40}") {
        let _ = ArrowExpr::parse(&text);
        let _ = ObjExpr::parse(&text);
    }
}
