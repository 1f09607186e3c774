//! The free symmetric algebra `Sym(M)`, registered in the opposite category.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::linalg::{BasisLabel, FreeModule, LinalgError, LinearMap, ModuleKind, Vector};
use crate::modality::{Model, ModCat, ModalityError, OArr, Orientation};
use crate::scalars::{Rig, RigElement};

/// Truncation caps: `n` for `Sym` of a plain module, `n_nested` once the
/// argument already contains an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymCaps {
    pub n: usize,
    pub n_nested: usize,
}

impl SymCaps {
    pub fn new(n: usize, n_nested: usize) -> SymCaps {
        SymCaps { n, n_nested }
    }

    pub fn bang(&self, x: &FreeModule) -> FreeModule {
        let cap = if x.has_algebra() { self.n_nested } else { self.n };
        FreeModule::sym(x, cap)
    }
}

pub(crate) fn sym_parts(s: &FreeModule) -> (FreeModule, usize) {
    match s.kind() {
        ModuleKind::Sym { inner, cap } => (inner.clone(), *cap),
        _ => panic!("{s} is not a symmetric algebra"),
    }
}

/// Runs of equal entries in a sorted multiset.
fn runs(m: &[BasisLabel]) -> Vec<(&BasisLabel, usize)> {
    let mut out: Vec<(&BasisLabel, usize)> = Vec::new();
    for e in m {
        match out.last_mut() {
            Some((l, k)) if *l == e => *k += 1,
            _ => out.push((e, 1)),
        }
    }
    out
}

fn binom(n: usize, k: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..k {
        c = c * (n - i) as u64 / (i + 1) as u64;
    }
    c
}

fn union(a: &[BasisLabel], b: &[BasisLabel]) -> BasisLabel {
    let mut v = Vec::with_capacity(a.len() + b.len());
    v.extend_from_slice(a);
    v.extend_from_slice(b);
    BasisLabel::multiset(v)
}

fn ms(l: &BasisLabel) -> &[BasisLabel] {
    l.as_multiset().expect("multiset label")
}

/// Multiset union `Sym X ⊗ Sym X → Sym X`.
pub fn multiplication(s: &FreeModule) -> LinearMap {
    let rig = s.rig();
    let ss = FreeModule::tensor(&[s.clone(), s.clone()]);
    LinearMap::from_fn(ss, s.clone(), 0, move |l| {
        let p = l.split(2).expect("pair");
        Ok(Vector::basis(rig, union(ms(&p[0]), ms(&p[1]))))
    })
}

/// Unshuffle `Sym X → Sym X ⊗ Sym X`, summing over sub-multisets.
pub fn comultiplication(s: &FreeModule) -> LinearMap {
    let rig = s.rig();
    let ss = FreeModule::tensor(&[s.clone(), s.clone()]);
    LinearMap::from_fn(s.clone(), ss, 0, move |l| {
        let groups = runs(ms(l));
        let mut out = Vector::zero(rig);
        let mut left = Vec::new();
        let mut right = Vec::new();
        split_rec(&groups, 0, 1, &mut left, &mut right, &mut |a, b, c| {
            out.add_term(
                BasisLabel::pair(BasisLabel::Multiset(a.to_vec().into()), BasisLabel::Multiset(b.to_vec().into())),
                rig.from_u64(c),
            );
        });
        Ok(out)
    })
}

fn split_rec(
    groups: &[(&BasisLabel, usize)],
    i: usize,
    coeff: u64,
    left: &mut Vec<BasisLabel>,
    right: &mut Vec<BasisLabel>,
    emit: &mut impl FnMut(&[BasisLabel], &[BasisLabel], u64),
) {
    if i == groups.len() {
        emit(left, right, coeff);
        return;
    }
    let (e, k) = groups[i];
    for j in 0..=k {
        let (nl, nr) = (left.len(), right.len());
        left.extend(std::iter::repeat_n(e.clone(), j));
        right.extend(std::iter::repeat_n(e.clone(), k - j));
        split_rec(groups, i + 1, coeff * binom(k, j), left, right, emit);
        left.truncate(nl);
        right.truncate(nr);
    }
}

/// `K → Sym X`, `1 ↦ ∅`.
pub fn unit(s: &FreeModule) -> LinearMap {
    let rig = s.rig();
    LinearMap::from_fn(FreeModule::unit(rig), s.clone(), 0, move |_| {
        Ok(Vector::basis(rig, BasisLabel::empty_multiset()))
    })
}

/// `Sym X → K`, projection onto the empty monomial.
pub fn counit(s: &FreeModule) -> LinearMap {
    let rig = s.rig();
    LinearMap::from_fn(s.clone(), FreeModule::unit(rig), 0, move |l| {
        Ok(if ms(l).is_empty() { Vector::basis(rig, BasisLabel::Unit) } else { Vector::zero(rig) })
    })
}

/// Monad unit `X → Sym X`, `x ↦ {x}`.
pub fn singleton(s: &FreeModule) -> LinearMap {
    let rig = s.rig();
    let (inner, _) = sym_parts(s);
    LinearMap::from_fn(inner, s.clone(), 1, move |l| Ok(Vector::basis(rig, BasisLabel::singleton(l.clone()))))
}

/// Monad multiplication `Sym Sym X → Sym X`, flattening.
pub fn flatten(ss: &FreeModule) -> LinearMap {
    let rig = ss.rig();
    let (s, _) = sym_parts(ss);
    LinearMap::from_fn(ss.clone(), s, 0, move |l| {
        let mut v = Vec::new();
        for m in ms(l) {
            v.extend_from_slice(ms(m));
        }
        Ok(Vector::basis(rig, BasisLabel::multiset(v)))
    })
}

/// Degree-one projection `Sym X → X`.
pub fn degree_one(s: &FreeModule) -> LinearMap {
    let rig = s.rig();
    let (inner, _) = sym_parts(s);
    LinearMap::from_fn(s.clone(), inner, 0, move |l| {
        let m = ms(l);
        Ok(if m.len() == 1 { Vector::basis(rig, m[0].clone()) } else { Vector::zero(rig) })
    })
}

/// Deriving map `Sym X → Sym X ⊗ X`, `a₁⋯aₙ ↦ Σᵢ (a₁⋯âᵢ⋯aₙ) ⊗ aᵢ`.
pub fn deriving(s: &FreeModule) -> LinearMap {
    let rig = s.rig();
    let (inner, _) = sym_parts(s);
    let n = inner.factor_count();
    let cod = FreeModule::tensor(&[s.clone(), inner]);
    LinearMap::from_fn(s.clone(), cod, 0, move |l| {
        let m = ms(l);
        let mut out = Vector::zero(rig);
        let mut pos = 0;
        for (e, k) in runs(m) {
            let mut rest = m.to_vec();
            rest.remove(pos);
            pos += k;
            out.add_term(
                BasisLabel::concat(&[(&BasisLabel::Multiset(rest.into()), 1), (e, n)]),
                rig.from_u64(k as u64),
            );
        }
        Ok(out)
    })
}

/// `Sym(X ⊗ Y) → Sym X ⊗ Sym Y`, `(a₁⊗b₁)⋯(aₖ⊗bₖ) ↦ (a₁⋯aₖ) ⊗ (b₁⋯bₖ)`.
pub fn monoidal(sx: &FreeModule, sy: &FreeModule, sxy: &FreeModule) -> LinearMap {
    let rig = sx.rig();
    let (x, _) = sym_parts(sx);
    let (xy, _) = sym_parts(sxy);
    let kx = x.factor_count();
    let kxy = xy.factor_count();
    let cap = sxy.max_grade();
    let cod = FreeModule::tensor(&[sx.clone(), sy.clone()]);
    LinearMap::from_fn(sxy.clone(), cod, cap, move |l| {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for e in ms(l) {
            let parts = e.split(kxy).expect("tensor entry");
            left.push(BasisLabel::join(parts[..kx].to_vec()));
            right.push(BasisLabel::join(parts[kx..].to_vec()));
        }
        Ok(Vector::basis(rig, BasisLabel::pair(BasisLabel::multiset(left), BasisLabel::multiset(right))))
    })
}

/// `Sym K → K`, every monomial to 1.
pub fn monoidal_unit(sk: &FreeModule) -> LinearMap {
    let rig = sk.rig();
    LinearMap::from_fn(sk.clone(), FreeModule::unit(rig), 0, move |_| Ok(Vector::basis(rig, BasisLabel::Unit)))
}

/// Functorial action `Sym f` for `f: X → Y`.
pub fn lift_map(f: &LinearMap, dom: &FreeModule, cod: &FreeModule) -> LinearMap {
    let rig = f.rig();
    let f2 = f.clone();
    let shift = f.shift() * dom.max_grade().max(1);
    LinearMap::from_fn(dom.clone(), cod.clone(), shift, move |l| {
        let mut acc: BTreeMap<Vec<BasisLabel>, RigElement> = BTreeMap::new();
        acc.insert(Vec::new(), rig.one());
        for a in ms(l) {
            let img = f2.image(a)?;
            if img.is_zero() {
                return Ok(Vector::zero(rig));
            }
            let mut next: BTreeMap<Vec<BasisLabel>, RigElement> = BTreeMap::new();
            for (m, c) in &acc {
                for (y, d) in img.iter() {
                    let mut v = m.clone();
                    let at = v.partition_point(|z| z < y);
                    v.insert(at, y.clone());
                    let t = c.mul_same(d);
                    match next.get_mut(&v) {
                        Some(s) => *s = s.add_same(&t),
                        None => {
                            next.insert(v, t);
                        }
                    }
                }
            }
            acc = next;
        }
        Ok(Vector::from_terms(rig, acc.into_iter().map(|(m, c)| (BasisLabel::Multiset(m.into()), c))))
    })
}

/// Splits monomials over a binary direct sum by copy tag.
pub fn seely_split(s_sum: &FreeModule, s0: &FreeModule, s1: &FreeModule) -> LinearMap {
    let rig = s_sum.rig();
    let cod = FreeModule::tensor(&[s0.clone(), s1.clone()]);
    LinearMap::from_fn(s_sum.clone(), cod, 0, move |l| {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for e in ms(l) {
            match e.as_copy() {
                Some((0, x)) => a.push(x.clone()),
                Some((1, x)) => b.push(x.clone()),
                _ => return Err(LinalgError::InvalidCandidate(format!("{e} is not a summand label"))),
            }
        }
        Ok(Vector::basis(rig, BasisLabel::pair(BasisLabel::multiset(a), BasisLabel::multiset(b))))
    })
}

/// Inverse of [`seely_split`].
pub fn seely_merge(s_sum: &FreeModule, s0: &FreeModule, s1: &FreeModule) -> LinearMap {
    let rig = s_sum.rig();
    let dom = FreeModule::tensor(&[s0.clone(), s1.clone()]);
    LinearMap::from_fn(dom, s_sum.clone(), 0, move |l| {
        let p = l.split(2).expect("pair");
        let mut v: Vec<BasisLabel> = ms(&p[0]).iter().map(|x| BasisLabel::copy(0, x.clone())).collect();
        v.extend(ms(&p[1]).iter().map(|x| BasisLabel::copy(1, x.clone())));
        Ok(Vector::basis(rig, BasisLabel::multiset(v)))
    })
}

fn one(objs: &[FreeModule]) -> Result<&FreeModule, ModalityError> {
    objs.first().ok_or_else(|| ModalityError::Unsupported("missing object argument".into()))
}

/// Registers the full Sym structure on a model whose `!` is `caps.bang`.
pub fn register_sym_structure(model: &mut Model<ModCat>, caps: SymCaps) {
    let rig = model.cat.rig;
    model.register_linear("delta", move |o| Ok(flatten(&caps.bang(&caps.bang(one(o)?)))));
    model.register_linear("eps", move |o| Ok(singleton(&caps.bang(one(o)?))));
    model.register_linear("Delta", move |o| Ok(multiplication(&caps.bang(one(o)?))));
    model.register_linear("e", move |o| Ok(unit(&caps.bang(one(o)?))));
    model.register_linear("nabla", move |o| Ok(comultiplication(&caps.bang(one(o)?))));
    model.register_linear("u", move |o| Ok(counit(&caps.bang(one(o)?))));
    model.register_linear("d", move |o| Ok(deriving(&caps.bang(one(o)?))));
    model.register_linear("eta", move |o| Ok(degree_one(&caps.bang(one(o)?))));
    model.register_linear("m", move |o| {
        if o.len() != 2 {
            return Err(ModalityError::Unsupported("m takes two objects".into()));
        }
        let xy = FreeModule::tensor(&[o[0].clone(), o[1].clone()]);
        Ok(monoidal(&caps.bang(&o[0]), &caps.bang(&o[1]), &caps.bang(&xy)))
    });
    model.register_linear("mK", move |_| Ok(monoidal_unit(&caps.bang(&FreeModule::unit(rig)))));
}

/// Base objects `A`, `B`, `C` of dimension `dim`.
pub fn set_base_objects(model: &mut Model<ModCat>, rig: Rig, dim: u32) {
    for (i, n) in ["A", "B", "C"].iter().enumerate() {
        model.set_base(n, FreeModule::base(rig, i as u32, n, dim));
    }
}

/// A bare model whose `!` is truncated `Sym`, with no structural maps.
pub fn sym_functor_model(name: &str, rig: Rig, caps: SymCaps) -> Model<ModCat> {
    Model::new(
        name,
        ModCat::new(rig, Orientation::Opposite),
        Arc::new(move |x: &FreeModule| Ok(caps.bang(x))),
        Arc::new(move |f: &OArr| {
            let m = f.map();
            Ok(OArr(lift_map(m, &caps.bang(m.domain()), &caps.bang(m.codomain()))))
        }),
    )
}

/// The `sym` model over `rig` with base objects of dimension `dim`.
pub fn sym_model(rig: Rig, dim: u32, caps: SymCaps) -> Model<ModCat> {
    let mut m = sym_functor_model("sym", rig, caps);
    register_sym_structure(&mut m, caps);
    set_base_objects(&mut m, rig, dim);
    m
}
