use modcheck::scalars::{Rig, RigElement};
use proptest::prelude::*;

fn rig() -> impl Strategy<Value = Rig> {
    prop_oneof![
        Just(Rig::Rationals),
        Just(Rig::Integers),
        (2u64..50).prop_map(Rig::IntegersMod),
        Just(Rig::Booleans),
        Just(Rig::Naturals),
    ]
}

fn element(r: Rig) -> BoxedStrategy<RigElement> {
    match r {
        Rig::Rationals => (-50i64..50, 1i64..20)
            .prop_map(move |(n, d)| RigElement::parse(&format!("{n}/{d}"), r).unwrap())
            .boxed(),
        Rig::Integers => (-1000i64..1000).prop_map(move |n| r.from_i64(n).unwrap()).boxed(),
        _ => (0u64..1000).prop_map(move |n| r.from_u64(n)).boxed(),
    }
}

fn triple() -> impl Strategy<Value = (RigElement, RigElement, RigElement)> {
    rig().prop_flat_map(|r| (element(r), element(r), element(r)))
}

proptest! {
    #[test]
    fn addition_is_a_commutative_monoid((a, b, c) in triple()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&a.rig().zero()).unwrap(), a);
    }

    #[test]
    fn multiplication_is_a_commutative_monoid((a, b, c) in triple()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&a.rig().one()).unwrap(), a.clone());
        prop_assert!(a.mul(&a.rig().zero()).unwrap().is_zero());
    }

    #[test]
    fn multiplication_distributes((a, b, c) in triple()) {
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn negation_is_additive_inverse((a, _, _) in triple()) {
        match a.negate() {
            Ok(n) => prop_assert!(a.add(&n).unwrap().is_zero()),
            Err(_) => prop_assert!(!a.rig().has_negatives()),
        }
    }

    #[test]
    fn rendering_reparses((a, _, _) in triple()) {
        prop_assert_eq!(RigElement::parse(&a.to_string(), a.rig()).unwrap(), a);
    }

    #[test]
    fn parse_never_panics(text in "\\PC{0,24}", r in rig()) {
        let _ = RigElement::parse(&text, r);
        let _ = Rig::parse_descriptor(&text);
    }
}
