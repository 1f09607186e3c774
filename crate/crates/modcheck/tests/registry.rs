use modcheck::lawcheck::{Property, RunParams, Verdict};
use modcheck::models::registry::{build_model, AnyModel, Modifier, ModelConfig, ModelSpec, RegistryError};

#[test]
fn parses_names_with_modifiers() {
    let s = ModelSpec::parse("diff+derived-m+opB:2+biprod").unwrap();
    assert_eq!(s.base, "diff");
    assert_eq!(s.modifiers, [Modifier::DerivedM, Modifier::OpB(2), Modifier::Biprod]);
    assert_eq!(ModelSpec::parse("sym+opB").unwrap().modifiers, [Modifier::OpB(1)]);
    assert!(matches!(ModelSpec::parse("nosuch"), Err(RegistryError::UnknownModel(_))));
    assert!(matches!(ModelSpec::parse("sym+opB:0"), Err(RegistryError::UnknownModifier(_))));
    assert!(matches!(ModelSpec::parse("sym+biprod+derived-m"), Err(RegistryError::UnknownModifier(_))));
    assert!(matches!(ModelSpec::parse("sym+"), Err(RegistryError::UnknownModifier(_))));
}

#[test]
fn builds_every_base_model_small() {
    let cfg = ModelConfig { dim: 1, degree: 2, nested: 2, copies: 2, ..ModelConfig::default() };
    for name in ["sym", "diff", "rb", "rb-diff", "sym+biprod", "sym+derived-m", "diff+opB:1"] {
        let m = build_model(name, &cfg).unwrap();
        assert_eq!(m.name, name);
        assert!(m.symbols().contains(&"delta".to_string()), "{name}");
    }
    assert!(matches!(build_model("sym+biprod", &cfg).unwrap().model, AnyModel::Biprod(_)));
    assert!(build_model("sym", &ModelConfig { dim: 0, ..cfg }).is_err());
}

#[test]
fn derived_m_keeps_sym_monoidal() {
    let cfg = ModelConfig { dim: 1, degree: 3, nested: 2, ..ModelConfig::default() };
    let c = build_model("sym+derived-m", &cfg).unwrap().classify(&RunParams::default());
    assert_eq!(c.verdict(Property::Monoidal), Verdict::Yes);
}

#[test]
fn rb_models_carry_obstruction_notes() {
    let cfg = ModelConfig { dim: 1, degree: 2, nested: 2, ..ModelConfig::default() };
    let m = build_model("rb", &cfg).unwrap();
    let props: Vec<Property> = m.notes().iter().map(|(p, _)| *p).collect();
    assert!(props.contains(&Property::Bialgebra) && props.contains(&Property::Monoidal));
    let c = m.classify(&RunParams::default());
    assert_eq!(c.members(), [Property::Coalgebra, Property::Deriving]);
}
