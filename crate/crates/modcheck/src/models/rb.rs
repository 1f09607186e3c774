//! Shuffle algebras and the free Rota-Baxter algebra modality
//! `T X = Sh(A X) ⊗ A X`, where `A` is `Sym` (model `rb`) or `Diff`
//! (model `rb-diff`). Registered in the opposite category.

use std::sync::Arc;

use super::diff::{self, DiffCaps};
use super::sym;
use crate::linalg::{BasisLabel, FreeModule, LinalgError, LinearMap, Vector};
use crate::modality::{Model, ModCat, ModalityError, OArr, Orientation};
use crate::scalars::Rig;

/// The free algebra under the shuffle factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inner {
    Sym,
    /// `Diff X = Sym(⊕_{k<copies} X)` with its derivation.
    Diff { copies: u32 },
}

/// Word length `word_len` and inner truncation caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RbCaps {
    pub word_len: usize,
    pub n: usize,
    pub n_nested: usize,
    pub inner: Inner,
}

impl RbCaps {
    pub fn new(word_len: usize, n: usize, n_nested: usize) -> RbCaps {
        RbCaps { word_len, n, n_nested, inner: Inner::Sym }
    }

    pub fn over_diff(word_len: usize, copies: u32, n: usize, n_nested: usize) -> RbCaps {
        RbCaps { word_len, n, n_nested, inner: Inner::Diff { copies } }
    }

    fn cap(&self, x: &FreeModule) -> usize {
        if x.has_algebra() {
            self.n_nested
        } else {
            self.n
        }
    }

    fn diff_caps(&self, copies: u32) -> DiffCaps {
        DiffCaps::new(copies, self.n, self.n_nested)
    }

    /// `A X`.
    pub fn inner_of(&self, x: &FreeModule) -> FreeModule {
        match self.inner {
            Inner::Sym => FreeModule::sym(x, self.cap(x)),
            Inner::Diff { copies } => self.diff_caps(copies).carrier(x),
        }
    }

    pub fn sh(&self, x: &FreeModule) -> FreeModule {
        FreeModule::sh(x, self.word_len)
    }

    /// `T X = Sh(A X) ⊗ A X`.
    pub fn carrier(&self, x: &FreeModule) -> FreeModule {
        let a = self.inner_of(x);
        FreeModule::tensor(&[self.sh(&a), a])
    }

    fn inner_lift(&self, f: &LinearMap) -> LinearMap {
        match self.inner {
            Inner::Sym => sym::lift_map(f, &self.inner_of(f.domain()), &self.inner_of(f.codomain())),
            Inner::Diff { copies } => diff::diff_lift(f, self.diff_caps(copies)),
        }
    }
}

fn word(l: &BasisLabel) -> &[BasisLabel] {
    l.as_word().expect("word label")
}

fn ms(l: &BasisLabel) -> &[BasisLabel] {
    l.as_multiset().expect("multiset label")
}

fn t_parts(t: &FreeModule) -> (FreeModule, FreeModule) {
    let f = t.factors();
    assert_eq!(f.len(), 2, "{t} is not a Rota-Baxter carrier");
    (f[0].clone(), f[1].clone())
}

/// All interleavings of `u` and `v`, with repetition.
fn interleavings(u: &[BasisLabel], v: &[BasisLabel]) -> Vec<Vec<BasisLabel>> {
    if u.is_empty() {
        return vec![v.to_vec()];
    }
    if v.is_empty() {
        return vec![u.to_vec()];
    }
    let mut out = Vec::new();
    for mut w in interleavings(&u[1..], v) {
        w.insert(0, u[0].clone());
        out.push(w);
    }
    for mut w in interleavings(u, &v[1..]) {
        w.insert(0, v[0].clone());
        out.push(w);
    }
    out
}

fn shuffle_words(rig: Rig, u: &[BasisLabel], v: &[BasisLabel]) -> Vector {
    let mut out = Vector::zero(rig);
    for w in interleavings(u, v) {
        out.add_term(BasisLabel::word(w), rig.one());
    }
    out
}

/// Shuffle product `Sh X ⊗ Sh X → Sh X`.
pub fn shuffle(s: &FreeModule) -> LinearMap {
    let rig = s.rig();
    let ss = FreeModule::tensor(&[s.clone(), s.clone()]);
    LinearMap::from_fn(ss, s.clone(), 0, move |l| {
        let p = l.split(2).expect("pair");
        Ok(shuffle_words(rig, word(&p[0]), word(&p[1])))
    })
}

/// Deconcatenation `Sh X → Sh X ⊗ Sh X`, summing over cut positions.
pub fn deconcatenation(s: &FreeModule) -> LinearMap {
    let rig = s.rig();
    let ss = FreeModule::tensor(&[s.clone(), s.clone()]);
    LinearMap::from_fn(s.clone(), ss, 0, move |l| {
        let w = word(l);
        let mut out = Vector::zero(rig);
        for k in 0..=w.len() {
            out.add_term(
                BasisLabel::pair(BasisLabel::word(w[..k].to_vec()), BasisLabel::word(w[k..].to_vec())),
                rig.one(),
            );
        }
        Ok(out)
    })
}

/// `Sh g` acting letter by letter.
pub fn sh_lift(g: &LinearMap, dom: &FreeModule, cod: &FreeModule) -> LinearMap {
    let rig = g.rig();
    let g2 = g.clone();
    let shift = g.shift() * dom.max_grade().max(1);
    LinearMap::from_fn(dom.clone(), cod.clone(), shift, move |l| {
        let mut acc: Vec<(Vec<BasisLabel>, crate::scalars::RigElement)> = vec![(Vec::new(), rig.one())];
        for a in word(l) {
            let img = g2.image(a)?;
            let mut next = Vec::new();
            for (w, c) in &acc {
                for (y, d) in img.iter() {
                    let mut w2 = w.clone();
                    w2.push(y.clone());
                    next.push((w2, c.mul_same(d)));
                }
            }
            acc = next;
        }
        let mut out = Vector::zero(rig);
        for (w, c) in acc {
            out.add_term(BasisLabel::word(w), c);
        }
        Ok(out)
    })
}

fn t_label(w: BasisLabel, m: BasisLabel) -> BasisLabel {
    BasisLabel::join(vec![w, m])
}

/// `◊: T ⊗ T → T`, `(w⊗a) ◊ (v⊗b) = (w ⧢ v) ⊗ (a·b)`.
pub fn diamond(t: &FreeModule) -> LinearMap {
    let rig = t.rig();
    let tt = FreeModule::tensor(&[t.clone(), t.clone()]);
    LinearMap::from_fn(tt, t.clone(), 0, move |l| {
        let p = l.split(4).expect("four factors");
        let mut m = ms(&p[1]).to_vec();
        m.extend_from_slice(ms(&p[3]));
        let m = BasisLabel::multiset(m);
        Ok(shuffle_words(rig, word(&p[0]), word(&p[2])).map_labels(|w| t_label(w.clone(), m.clone())))
    })
}

/// Unit `K → T`, `1 ↦ ()⊗∅`.
pub fn diamond_unit(t: &FreeModule) -> LinearMap {
    let rig = t.rig();
    LinearMap::from_fn(FreeModule::unit(rig), t.clone(), 0, move |_| {
        Ok(Vector::basis(rig, t_label(BasisLabel::word(Vec::new()), BasisLabel::empty_multiset())))
    })
}

/// Rota-Baxter operator `P(w⊗b) = (w,b)⊗1`; on the empty word `(b)⊗1`.
pub fn rota_baxter(t: &FreeModule) -> LinearMap {
    let rig = t.rig();
    LinearMap::from_fn(t.clone(), t.clone(), 1, move |l| {
        let p = l.split(2).expect("pair");
        let mut w = word(&p[0]).to_vec();
        w.push(p[1].clone());
        Ok(Vector::basis(rig, t_label(BasisLabel::word(w), BasisLabel::empty_multiset())))
    })
}

/// Derivation on `T` over a differential inner algebra:
/// `D((a₁…aₙ)⊗b) = (a₁…aₙ)⊗D b + (a₁…aₙ₋₁)⊗(aₙ·b)`.
pub fn rb_derivation(t: &FreeModule) -> LinearMap {
    let (_, a) = t_parts(t);
    let da = diff::differential(&a);
    let mult = sym::multiplication(&a);
    LinearMap::from_fn(t.clone(), t.clone(), 1, move |l| {
        let p = l.split(2).expect("pair");
        let w = word(&p[0]);
        let mut out = da.image(&p[1])?.map_labels(|m| t_label(p[0].clone(), m.clone()));
        if let Some((last, rest)) = w.split_last() {
            let prod = mult.image(&BasisLabel::pair(last.clone(), p[1].clone()))?;
            let rest = BasisLabel::word(rest.to_vec());
            out.add_vec(&prod.map_labels(|m| t_label(rest.clone(), m.clone())));
        }
        Ok(out)
    })
}

fn product(mult: &LinearMap, a: &Vector, b: &Vector) -> Result<Vector, LinalgError> {
    let rig = mult.rig();
    let mut out = Vector::zero(rig);
    for (l1, c1) in a.iter() {
        for (l2, c2) in b.iter() {
            let l = BasisLabel::concat(&[(l1, 2), (l2, 2)]);
            out.add_scaled(&c1.mul_same(c2), &*mult.image(&l)?);
        }
    }
    Ok(out)
}

/// Counit `ω: Sh(T)⊗T → T` for the Rota-Baxter algebra `(T, P)`:
/// `ω((b₁…bₙ)⊗b) = P(⋯P(P(b₁)◊b₂)⋯◊bₙ)◊b`.
pub fn omega(t: &FreeModule, cap: usize) -> LinearMap {
    let rig = t.rig();
    let sh_t = FreeModule::sh(t, cap);
    let dom = FreeModule::tensor(&[sh_t, t.clone()]);
    let (mult, p) = (diamond(t), rota_baxter(t));
    LinearMap::from_fn(dom, t.clone(), cap, move |l| {
        let parts = l.split(3).expect("three factors");
        let last = Vector::basis(rig, t_label(parts[1].clone(), parts[2].clone()));
        let mut acc: Option<Vector> = None;
        for b in word(&parts[0]) {
            let v = Vector::basis(rig, b.clone());
            let x = match acc {
                None => v,
                Some(a) => product(&mult, &a, &v)?,
            };
            acc = Some(p.apply_vec(&x)?);
        }
        match acc {
            None => Ok(last),
            Some(a) => product(&mult, &a, &last),
        }
    })
}

/// Evaluation `A T → T` of the free inner algebra into `(T, ◊)`, applying
/// the derivation `D` to tagged copies when `A = Diff`.
pub fn evaluation(at: &FreeModule, t: &FreeModule, inner: Inner) -> LinearMap {
    let rig = t.rig();
    let mult = diamond(t);
    let unit = Vector::basis(rig, t_label(BasisLabel::word(Vec::new()), BasisLabel::empty_multiset()));
    let d = matches!(inner, Inner::Diff { .. }).then(|| rb_derivation(t));
    LinearMap::from_fn(at.clone(), t.clone(), 0, move |l| {
        let mut acc = unit.clone();
        for e in ms(l) {
            let v = match &d {
                None => Vector::basis(rig, e.clone()),
                Some(d) => {
                    let (n, x) = e.as_copy().expect("copy label");
                    let mut v = Vector::basis(rig, x.clone());
                    for _ in 0..n {
                        v = d.apply_vec(&v)?;
                    }
                    v
                }
            };
            acc = product(&mult, &acc, &v)?;
        }
        Ok(acc)
    })
}

/// Monad multiplication `T T X → T X`: the composite-adjunction counit
/// `(Sh(ev) ⊗ ev);ω` at the free algebra `T X`.
pub fn monad_mult(x: &FreeModule, caps: RbCaps) -> Result<LinearMap, LinalgError> {
    let t = caps.carrier(x);
    let at = caps.inner_of(&t);
    let ev = evaluation(&at, &t, caps.inner);
    let sh_ev = sh_lift(&ev, &caps.sh(&at), &caps.sh(&t));
    let rig = x.rig();
    LinearMap::compose(&LinearMap::tensor(&[sh_ev, ev], rig), &omega(&t, caps.word_len))
}

/// Monad unit `X → T X`, `x ↦ ()⊗{x}` (or `()⊗{Copy(0, x)}` over `Diff`).
pub fn monad_unit(x: &FreeModule, caps: RbCaps) -> LinearMap {
    let rig = x.rig();
    let tag = matches!(caps.inner, Inner::Diff { .. });
    LinearMap::from_fn(x.clone(), caps.carrier(x), 1, move |l| {
        let g = if tag { BasisLabel::copy(0, l.clone()) } else { l.clone() };
        Ok(Vector::basis(rig, t_label(BasisLabel::word(Vec::new()), BasisLabel::singleton(g))))
    })
}

/// Functorial action `T f = Sh(A f) ⊗ A f`.
pub fn lift(f: &LinearMap, caps: RbCaps) -> LinearMap {
    let g = caps.inner_lift(f);
    let sg = sh_lift(&g, &caps.sh(g.domain()), &caps.sh(g.codomain()));
    LinearMap::tensor(&[sg, g], f.rig())
}

/// Deriving map `1 ⊗ d: T X → T X ⊗ X`, with `d` the `Sym` deriving map or,
/// over `Diff`, the candidate `d;(1⊗π₀)`.
pub fn deriving(x: &FreeModule, caps: RbCaps) -> LinearMap {
    let a = caps.inner_of(x);
    let d = match caps.inner {
        Inner::Sym => sym::deriving(&a),
        Inner::Diff { .. } => diff::candidate_b(&a, &diff::pi0_section()),
    };
    LinearMap::tensor(&[LinearMap::identity(&caps.sh(&a)), d], x.rig())
}

/// Dimensions of the grade-`g` parts of `m` for `g = 0..=top`.
pub fn graded_dims(m: &FreeModule, top: usize) -> Vec<usize> {
    let mut dims = vec![0; top + 1];
    for l in m.basis_up_to(top).iter() {
        if let Some(g) = m.grade(l) {
            dims[g] += 1;
        }
    }
    dims
}

/// First grade, within both truncations, where `T(A⊕B)` and `T A ⊗ T B`
/// have different dimensions, with the two dimensions.
pub fn seely_dimension_gap(a: &FreeModule, b: &FreeModule, caps: RbCaps) -> Option<(usize, usize, usize)> {
    let lhs = caps.carrier(&FreeModule::direct_sum(&[a.clone(), b.clone()]));
    let rhs = FreeModule::tensor(&[caps.carrier(a), caps.carrier(b)]);
    let top = lhs.complete_grade()?.min(rhs.complete_grade()?);
    let (dl, dr) = (graded_dims(&lhs, top), graded_dims(&rhs, top));
    (0..=top).find(|&g| dl[g] != dr[g]).map(|g| (g, dl[g], dr[g]))
}

fn one(objs: &[FreeModule]) -> Result<&FreeModule, ModalityError> {
    objs.first().ok_or_else(|| ModalityError::Unsupported("missing object argument".into()))
}

fn rb_like(name: &str, rig: Rig, dim: u32, caps: RbCaps) -> Model<ModCat> {
    let mut m = Model::new(
        name,
        ModCat::new(rig, Orientation::Opposite),
        Arc::new(move |x: &FreeModule| Ok(caps.carrier(x))),
        Arc::new(move |f: &OArr| Ok(OArr(lift(f.map(), caps)))),
    );
    m.register_linear("delta", move |o| monad_mult(one(o)?, caps).map_err(ModalityError::Linalg));
    m.register_linear("eps", move |o| Ok(monad_unit(one(o)?, caps)));
    m.register_linear("Delta", move |o| Ok(diamond(&caps.carrier(one(o)?))));
    m.register_linear("e", move |o| Ok(diamond_unit(&caps.carrier(one(o)?))));
    m.register_linear("alg.mult", move |o| Ok(diamond(&caps.carrier(one(o)?))));
    m.register_linear("rb.P", move |o| Ok(rota_baxter(&caps.carrier(one(o)?))));
    m.register_linear("rb.omega", move |o| Ok(omega(&caps.carrier(one(o)?), caps.word_len)));
    m.register_linear("d", move |o| Ok(deriving(one(o)?, caps)));
    let sym_cap = move |x: &FreeModule| FreeModule::sym(x, caps.cap(x));
    m.register_linear("rb.decon", move |o| Ok(deconcatenation(&caps.sh(&sym_cap(one(o)?)))));
    m.register_functor("Sh", Arc::new(move |x: &FreeModule| Ok(caps.sh(x))));
    m.register_functor("Sym", Arc::new(move |x: &FreeModule| Ok(sym_cap(x))));
    if matches!(caps.inner, Inner::Diff { .. }) {
        m.register_linear("diff.D", move |o| Ok(rb_derivation(&caps.carrier(one(o)?))));
    }
    sym::set_base_objects(&mut m, rig, dim);
    m
}

/// The `rb` model: `T = Sh(Sym −) ⊗ Sym −` with `d = 1 ⊗ d_Sym`.
pub fn rb_model(rig: Rig, dim: u32, caps: RbCaps) -> Model<ModCat> {
    rb_like("rb", rig, dim, RbCaps { inner: Inner::Sym, ..caps })
}

/// The `rb-diff` model over the differential carrier `Diff`, with candidate
/// deriving map `1 ⊗ d;(1⊗π₀)` and derivation `diff.D` on `T`.
pub fn rb_diff_model(rig: Rig, dim: u32, caps: RbCaps) -> Model<ModCat> {
    assert!(matches!(caps.inner, Inner::Diff { .. }), "rb-diff needs a Diff inner algebra");
    rb_like("rb-diff", rig, dim, caps)
}

#[cfg(test)]
mod tests;
