use super::*;
use crate::constructions::m_from_additive_at;
use crate::lawcheck::{run_named, run_suite, RunParams};
use crate::linalg::maps_equal;
use crate::modality::{compare_graded, Graded};

const CAPS: DiffCaps = DiffCaps { copies: 3, n: 3, n_nested: 3 };

fn setup() -> (Rig, FreeModule, FreeModule) {
    let rig = Rig::Integers;
    let m = FreeModule::base(rig, 0, "A", 2);
    let dm = CAPS.carrier(&m);
    (rig, m, dm)
}

fn x() -> BasisLabel {
    BasisLabel::Gen(0, 0)
}

fn y() -> BasisLabel {
    BasisLabel::Gen(0, 1)
}

fn c(n: u32, l: BasisLabel) -> BasisLabel {
    BasisLabel::copy(n, l)
}

fn mono(v: Vec<BasisLabel>) -> BasisLabel {
    BasisLabel::multiset(v)
}

fn basis(rig: Rig, l: BasisLabel) -> Vector {
    Vector::basis(rig, l)
}

#[test]
fn shift_raises_the_tag() {
    let (rig, m, _) = setup();
    let cm = CAPS.copies_of(&m);
    let phi = shift(&cm);
    assert_eq!(*phi.apply(&c(0, x())).unwrap(), basis(rig, c(1, x())));
    let twice = LinearMap::compose(&phi, &phi).unwrap();
    assert_eq!(*twice.apply(&c(0, x())).unwrap(), basis(rig, c(2, x())));
    assert!(phi.apply(&c(2, x())).unwrap_err().is_frontier());
}

#[test]
fn d_circ_multiplies_in() {
    let (rig, _, dm) = setup();
    let dc = d_circ(&dm);
    let l = BasisLabel::pair(mono(vec![]), c(0, x()));
    assert_eq!(*dc.apply(&l).unwrap(), basis(rig, mono(vec![c(0, x())])));
    let l = BasisLabel::pair(mono(vec![c(0, x())]), c(1, y()));
    assert_eq!(*dc.apply(&l).unwrap(), basis(rig, mono(vec![c(0, x()), c(1, y())])));
    let full = BasisLabel::pair(mono(vec![c(0, x()); 3]), c(0, y()));
    assert!(dc.apply(&full).unwrap_err().is_frontier());
}

#[test]
fn differential_values() {
    let (rig, _, dm) = setup();
    let d = differential(&dm);
    assert!(d.apply(&mono(vec![])).unwrap().is_zero());
    assert_eq!(*d.apply(&mono(vec![c(0, x())])).unwrap(), basis(rig, mono(vec![c(1, x())])));
    let mut want = basis(rig, mono(vec![c(1, x()), c(0, y())]));
    want.add_term(mono(vec![c(0, x()), c(1, y())]), rig.one());
    assert_eq!(*d.apply(&mono(vec![c(0, x()), c(0, y())])).unwrap(), want);
}

#[test]
fn alpha_then_d_is_iota1_then_eta() {
    let (rig, m, dm) = setup();
    let lhs = LinearMap::compose(&alpha(&dm), &differential(&dm)).unwrap();
    let rhs = LinearMap::compose(&copy_injection(&CAPS.copies_of(&m), 1), &singleton(&dm)).unwrap();
    assert!(crate::linalg::compare_maps(&lhs, &rhs, 1).unwrap().agrees());
    let back = LinearMap::compose_all(&[
        alpha(&dm),
        crate::models::sym::degree_one(&dm),
        copy_projection(&CAPS.copies_of(&m), 0),
    ])
    .unwrap();
    assert!(crate::linalg::compare_maps(&back, &LinearMap::identity(&m), 1).unwrap().agrees());
    assert_eq!(*alpha(&dm).apply(&x()).unwrap(), basis(rig, mono(vec![c(0, x())])));
}

#[test]
fn psi_iterates_the_differential() {
    let (rig, _, dm) = setup();
    let ddm = CAPS.carrier(&dm);
    let outer = CAPS.copies_of(&dm);
    let p = psi(&outer);
    let a = mono(vec![c(0, x())]);
    assert_eq!(*p.apply(&c(0, a.clone())).unwrap(), basis(rig, a.clone()));
    assert_eq!(*p.apply(&c(1, a.clone())).unwrap(), basis(rig, mono(vec![c(1, x())])));
    assert_eq!(*p.apply(&c(2, a.clone())).unwrap(), basis(rig, mono(vec![c(2, x())])));
    let n = nu(&ddm);
    let w = mono(vec![c(0, x()), c(0, y())]);
    assert_eq!(*n.apply(&mono(vec![c(0, w.clone())])).unwrap(), basis(rig, w.clone()));
    let dw = differential(&dm).apply(&w).unwrap();
    assert_eq!(*n.apply(&mono(vec![c(1, w)])).unwrap(), *dw);
}

#[test]
fn nu_after_diff_alpha_is_identity() {
    let (_, _, dm) = setup();
    let ddm = CAPS.carrier(&dm);
    let lifted = diff_lift(&alpha(&dm), CAPS);
    assert_eq!(lifted.codomain(), &ddm);
    let round = LinearMap::compose(&lifted, &nu(&ddm)).unwrap();
    let c = crate::linalg::compare_maps(&round, &LinearMap::identity(&dm), 3).unwrap();
    assert!(c.mismatch.is_none());
}

#[test]
fn refutation_reproduces_one_plus_sigma_and_zero() {
    let (rig, m, _) = setup();
    let r = refutation_witness(&m, CAPS, &pi0_section()).unwrap();
    let xy = BasisLabel::pair(x(), y());
    let mut want = basis(rig, xy.clone());
    want.add_term(BasisLabel::pair(y(), x()), rig.one());
    assert_eq!(*r.lhs.apply(&xy).unwrap(), want);
    let xx = BasisLabel::pair(x(), x());
    assert_eq!(*r.lhs.apply(&xx).unwrap(), basis(rig, xx.clone()).scaled(&rig.from_u64(2)));
    for l in m.basis().iter().flat_map(|a| m.basis().iter().map(move |b| BasisLabel::pair(a.clone(), b.clone())).collect::<Vec<_>>()) {
        assert!(r.rhs.apply(&l).unwrap().is_zero());
    }
    let w = r.witness.expect("the composites differ");
    assert_eq!(maps_equal(&r.lhs, &r.rhs, 2).unwrap(), Some(w.clone()));
    assert_eq!(w.label, xx.to_string());
    assert!(w.rhs.is_zero());
}

#[test]
fn refutation_rejects_a_bad_section() {
    let (_, m, _) = setup();
    let bad = weighted_section(vec![Rig::Integers.zero(), Rig::Integers.one()]);
    assert!(matches!(refutation_witness(&m, CAPS, &bad), Err(LinalgError::InvalidCandidate(_))));
}

#[test]
fn native_m_matches_derived_m() {
    let rig = Rig::Integers;
    let model = diff_model(rig, 1, DiffCaps::new(2, 2, 2));
    let (a, b) = (model.base("A").unwrap(), model.base("B").unwrap());
    let derived = m_from_additive_at(&model, &a, &b).unwrap();
    let native = model.structural("m", &[a, b]).unwrap();
    let (g, _) = compare_graded(&model.cat, &derived, &native, None).unwrap();
    assert!(matches!(g, Graded::Agree | Graded::Limited(Some(1..))), "{g:?}");
}

#[test]
fn leibniz_and_monad_laws_hold() {
    let model = diff_model(Rig::Integers, 2, CAPS);
    let p = RunParams::default();
    for r in run_named(&model, &["diff.leibniz"], &p).into_iter().chain(run_suite(&model, "monad", &p).unwrap()) {
        assert!(r.status.passes_within_frontier(), "{} {:?}", r.name, r.status);
    }
}
