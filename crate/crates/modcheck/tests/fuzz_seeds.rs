//! Replays the checked-in fuzz corpus through the fuzz targets' assertions.

use std::fs;
use std::path::PathBuf;

use modcheck::lawcheck::parse_catalog;
use modcheck::modality::{ArrowExpr, ObjExpr};
use modcheck::scalars::{Rig, RigElement};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn scalar_seeds() {
    let mut parsed = 0;
    for s in seeds("scalar_parse") {
        for rig in [Rig::Rationals, Rig::Integers, Rig::IntegersMod(6), Rig::Booleans, Rig::Naturals] {
            if let Ok(x) = RigElement::parse(&s, rig) {
                assert_eq!(RigElement::parse(&x.to_string(), rig).unwrap(), x);
                parsed += 1;
            }
        }
    }
    assert!(parsed > 0);
}

#[test]
fn expr_seeds() {
    for s in seeds("expr_parse") {
        let arrow = ArrowExpr::parse(&s).map(|e| assert_eq!(ArrowExpr::parse(&e.to_string()).unwrap(), e));
        let obj = ObjExpr::parse(&s).map(|o| assert_eq!(ObjExpr::parse(&o.to_string()).unwrap(), o));
        assert!(arrow.is_ok() || obj.is_ok(), "{s}");
    }
}

#[test]
fn catalog_seeds() {
    let ok = seeds("catalog_parse").iter().filter(|s| parse_catalog(s).is_ok()).count();
    assert!(ok >= 2);
}

#[test]
fn rig_descriptor_seeds() {
    for s in seeds("rig_descriptor") {
        if let Ok(r) = Rig::parse_descriptor(&s) {
            assert_eq!(Rig::parse_descriptor(&r.to_string()).unwrap(), r);
        }
    }
}
