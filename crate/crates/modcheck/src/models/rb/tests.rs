use super::*;
use crate::lawcheck::{run_named, run_suite, RunParams};
use crate::linalg::{compare_maps, maps_equal};

const CAPS: RbCaps = RbCaps { word_len: 2, n: 2, n_nested: 2, inner: Inner::Sym };

fn gen(i: u32) -> BasisLabel {
    BasisLabel::Gen(0, i)
}

fn w(v: Vec<BasisLabel>) -> BasisLabel {
    BasisLabel::word(v)
}

fn mono(v: Vec<BasisLabel>) -> BasisLabel {
    BasisLabel::multiset(v)
}

fn terms(rig: Rig, ls: Vec<BasisLabel>) -> Vector {
    Vector::from_terms(rig, ls.into_iter().map(|l| (l, rig.one())))
}

fn letters() -> (Rig, FreeModule) {
    let rig = Rig::Integers;
    (rig, FreeModule::sh(&FreeModule::base(rig, 0, "A", 3), 3))
}

#[test]
fn shuffle_examples() {
    let (rig, s) = letters();
    let sh = shuffle(&s);
    let (a, b, c) = (gen(0), gen(1), gen(2));
    let v = sh.apply(&BasisLabel::pair(w(vec![a.clone()]), w(vec![]))).unwrap();
    assert_eq!(*v, terms(rig, vec![w(vec![a.clone()])]));
    let v = sh.apply(&BasisLabel::pair(w(vec![a.clone()]), w(vec![b.clone()]))).unwrap();
    assert_eq!(*v, terms(rig, vec![w(vec![a.clone(), b.clone()]), w(vec![b.clone(), a.clone()])]));
    let v = sh.apply(&BasisLabel::pair(w(vec![a.clone()]), w(vec![b.clone(), c.clone()]))).unwrap();
    let want = terms(
        rig,
        vec![
            w(vec![a.clone(), b.clone(), c.clone()]),
            w(vec![b.clone(), a.clone(), c.clone()]),
            w(vec![b.clone(), c.clone(), a.clone()]),
        ],
    );
    assert_eq!(*v, want);
    let v = sh.apply(&BasisLabel::pair(w(vec![a.clone(), a.clone()]), w(vec![a.clone()]))).unwrap();
    assert_eq!(v.coeff(&w(vec![a.clone(); 3])), rig.from_u64(3));
}

#[test]
fn deconcatenation_examples_and_asymmetry() {
    let (rig, s) = letters();
    let dc = deconcatenation(&s);
    let e = w(vec![]);
    assert_eq!(*dc.apply(&e).unwrap(), terms(rig, vec![BasisLabel::pair(e.clone(), e.clone())]));
    let ab = w(vec![gen(0), gen(1)]);
    let want = terms(
        rig,
        vec![
            BasisLabel::pair(ab.clone(), e.clone()),
            BasisLabel::pair(w(vec![gen(0)]), w(vec![gen(1)])),
            BasisLabel::pair(e.clone(), ab.clone()),
        ],
    );
    assert_eq!(*dc.apply(&ab).unwrap(), want);
    let flipped = LinearMap::compose(&dc, &LinearMap::symmetry(&s, &s)).unwrap();
    let wit = maps_equal(&dc, &flipped, 2).unwrap().expect("not cocommutative");
    assert_eq!(wit.label, ab.to_string());
}

struct Rb {
    rig: Rig,
    t: FreeModule,
}

fn rb() -> Rb {
    let rig = Rig::Rationals;
    let a = FreeModule::base(rig, 0, "A", 2);
    Rb { rig, t: CAPS.carrier(&a) }
}

fn tl(word: Vec<BasisLabel>, m: Vec<BasisLabel>) -> BasisLabel {
    BasisLabel::pair(w(word), mono(m))
}

fn x() -> BasisLabel {
    mono(vec![gen(0)])
}

fn y() -> BasisLabel {
    mono(vec![gen(1)])
}

#[test]
fn diamond_examples() {
    let Rb { rig, t } = rb();
    let dm = diamond(&t);
    let at = |a: BasisLabel, b: BasisLabel| (*dm.apply(&BasisLabel::concat(&[(&a, 2), (&b, 2)])).unwrap()).clone();
    let wb = tl(vec![x()], vec![gen(1)]);
    assert_eq!(at(tl(vec![], vec![]), wb.clone()), terms(rig, vec![wb]));
    let v = at(tl(vec![x()], vec![]), tl(vec![y()], vec![]));
    assert_eq!(v, terms(rig, vec![tl(vec![x(), y()], vec![]), tl(vec![y(), x()], vec![])]));
    let v = at(tl(vec![], vec![gen(0)]), tl(vec![], vec![gen(1)]));
    assert_eq!(v, terms(rig, vec![tl(vec![], vec![gen(0), gen(1)])]));
}

#[test]
fn rota_baxter_examples() {
    let Rb { rig, t } = rb();
    let p = rota_baxter(&t);
    let b = mono(vec![gen(1)]);
    assert_eq!(*p.apply(&tl(vec![], vec![gen(1)])).unwrap(), terms(rig, vec![tl(vec![b.clone()], vec![])]));
    assert_eq!(
        *p.apply(&tl(vec![x()], vec![gen(1)])).unwrap(),
        terms(rig, vec![tl(vec![x(), b], vec![])])
    );
    assert!(p.apply(&tl(vec![x(), x()], vec![])).unwrap_err().is_frontier());
}

#[test]
fn rota_baxter_equation_on_basis_pairs() {
    let rig = Rig::Rationals;
    let t = RbCaps::new(4, 2, 2).carrier(&FreeModule::base(rig, 0, "A", 2));
    let (p, dm) = (rota_baxter(&t), diamond(&t));
    let basis: Vec<BasisLabel> = t.basis_up_to(1).iter().cloned().collect();
    let mut checked = 0;
    for a in &basis {
        for b in &basis {
            let (va, vb) = (Vector::basis(rig, a.clone()), Vector::basis(rig, b.clone()));
            let eval = || -> Result<(Vector, Vector), LinalgError> {
                let (pa, pb) = (p.apply_vec(&va)?, p.apply_vec(&vb)?);
                let lhs = product(&dm, &pa, &pb)?;
                let mut rhs = p.apply_vec(&product(&dm, &va, &pb)?)?;
                rhs.add_vec(&p.apply_vec(&product(&dm, &pa, &vb)?)?);
                Ok((lhs, rhs))
            };
            match eval() {
                Ok((l, r)) => {
                    assert_eq!(l, r, "{a} {b}");
                    checked += 1;
                }
                Err(e) => assert!(e.is_frontier()),
            }
        }
    }
    assert_eq!(checked, basis.len() * basis.len());
}

#[test]
fn omega_examples() {
    let Rb { rig, t } = rb();
    let om = omega(&t, 2);
    let (p, dm) = (rota_baxter(&t), diamond(&t));
    let b = tl(vec![], vec![gen(1)]);
    let b1 = tl(vec![], vec![gen(0)]);
    let b2 = tl(vec![], vec![]);
    let at = |ws: Vec<BasisLabel>| (*om.apply(&BasisLabel::concat(&[(&w(ws), 1), (&b, 2)])).unwrap()).clone();
    assert_eq!(at(vec![]), terms(rig, vec![b.clone()]));
    let basis = |l: &BasisLabel| Vector::basis(rig, l.clone());
    let qb1 = p.apply_vec(&basis(&b1)).unwrap();
    assert_eq!(at(vec![b1.clone()]), product(&dm, &qb1, &basis(&b)).unwrap());
    let inner = p.apply_vec(&product(&dm, &qb1, &basis(&b2)).unwrap()).unwrap();
    assert_eq!(at(vec![b1.clone(), b2.clone()]), product(&dm, &inner, &basis(&b)).unwrap());
    assert_eq!(at(vec![b1, b2]), terms(rig, vec![tl(vec![x(), mono(vec![])], vec![gen(1)])]));
}

#[test]
fn monad_mult_unwraps_a_free_generator() {
    let rig = Rig::Rationals;
    let a = FreeModule::base(rig, 0, "A", 1);
    let mu = monad_mult(&a, CAPS).unwrap();
    let inner = tl(vec![mono(vec![gen(0)])], vec![gen(0)]);
    let l = BasisLabel::pair(w(vec![]), mono(vec![inner.clone()]));
    assert_eq!(*mu.apply(&l).unwrap(), terms(rig, vec![inner]));
    let tt = CAPS.carrier(&CAPS.carrier(&a));
    let unit_then_mult = LinearMap::compose(&monad_unit(&CAPS.carrier(&a), CAPS), &mu).unwrap();
    assert!(compare_maps(&unit_then_mult, &LinearMap::identity(&CAPS.carrier(&a)), 2).unwrap().agrees());
    let lifted = LinearMap::compose(&lift(&monad_unit(&a, CAPS), CAPS), &mu).unwrap();
    let c = compare_maps(&lifted, &LinearMap::identity(&CAPS.carrier(&a)), 2).unwrap();
    assert!(c.mismatch.is_none());
    assert_eq!(mu.domain(), &tt);
}

#[test]
fn deriving_examples() {
    let Rb { rig, t } = rb();
    let a = FreeModule::base(rig, 0, "A", 2);
    let d = deriving(&a, CAPS);
    assert_eq!(d.domain(), &t);
    assert!(d.apply(&tl(vec![x()], vec![])).unwrap().is_zero());
    let got = d.apply(&tl(vec![x()], vec![gen(0)])).unwrap();
    assert_eq!(*got, terms(rig, vec![BasisLabel::join(vec![w(vec![x()]), mono(vec![]), gen(0)])]));
    let got = d.apply(&tl(vec![x()], vec![gen(0), gen(1)])).unwrap();
    let want = terms(
        rig,
        vec![
            BasisLabel::join(vec![w(vec![x()]), mono(vec![gen(0)]), gen(1)]),
            BasisLabel::join(vec![w(vec![x()]), mono(vec![gen(1)]), gen(0)]),
        ],
    );
    assert_eq!(*got, want);
}

#[test]
fn rb_derivation_inverts_p() {
    let rig = Rig::Rationals;
    let caps = RbCaps::over_diff(2, 2, 2, 2);
    let t = caps.carrier(&FreeModule::base(rig, 0, "A", 1));
    let pd = LinearMap::compose(&rota_baxter(&t), &rb_derivation(&t)).unwrap();
    let c = compare_maps(&pd, &LinearMap::identity(&t), 2).unwrap();
    assert!(c.mismatch.is_none() && c.checked > 5, "{c:?}");
    let dm = diamond(&t);
    let d = rb_derivation(&t);
    let lhs = LinearMap::compose(&dm, &d).unwrap();
    let tt = FreeModule::tensor(&[t.clone(), t.clone()]);
    let one = LinearMap::identity(&t);
    let rhs = LinearMap::sum(
        &[
            LinearMap::compose(&LinearMap::tensor(&[d.clone(), one.clone()], rig), &dm).unwrap(),
            LinearMap::compose(&LinearMap::tensor(&[one, d], rig), &dm).unwrap(),
        ],
        &tt,
        &t,
    )
    .unwrap();
    let c = compare_maps(&lhs, &rhs, 2).unwrap();
    assert!(c.mismatch.is_none(), "{c:?}");
}

#[test]
fn rb_suite_and_deriving_laws_pass() {
    let m = rb_model(Rig::Rationals, 1, CAPS);
    for r in run_suite(&m, "rb", &RunParams::default()).unwrap() {
        assert!(r.status.passes_within_frontier(), "{} {:?}", r.name, r.status);
    }
    for r in run_named(&m, &["d.1", "d.2", "d.3", "d.4", "d.5", "nat.d"], &RunParams::default()) {
        assert!(r.status.passes_within_frontier(), "{} {:?}", r.name, r.status);
    }
}

#[test]
fn rb_obstruction_witness() {
    let m = rb_model(Rig::Rationals, 1, CAPS);
    let r = &run_suite(&m, "rb-obstruction", &RunParams::default()).unwrap()[0];
    assert!(r.status.is_fail(), "{:?}", r.status);
    let (a, b) = (m.base("A").unwrap(), m.base("B").unwrap());
    let (g, l, r) = seely_dimension_gap(&a, &b, CAPS).unwrap();
    assert_eq!((g, l, r), (1, 5, 6));
}
