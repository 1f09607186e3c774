//! The free differential algebra `Diff(M) = Sym(⊕ M)`, registered in the
//! opposite category, and the chain-rule refutation for it.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::sym::{comultiplication, counit, deriving, flatten, lift_map, multiplication, singleton, unit};
use crate::linalg::{compare_maps, BasisLabel, FreeModule, LinalgError, LinearMap, ModuleKind, Vector, Witness};
use crate::modality::{Model, ModCat, ModalityError, OArr, Orientation};
use crate::scalars::{Rig, RigElement};

/// Copy depth `copies` and truncation caps, as for [`super::sym::SymCaps`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiffCaps {
    pub copies: u32,
    pub n: usize,
    pub n_nested: usize,
}

impl DiffCaps {
    pub fn new(copies: u32, n: usize, n_nested: usize) -> DiffCaps {
        DiffCaps { copies, n, n_nested }
    }

    /// `⊕_{k<K} X`.
    pub fn copies_of(&self, x: &FreeModule) -> FreeModule {
        FreeModule::copies(x, self.copies)
    }

    /// `Diff(X) = Sym(⊕ X)`.
    pub fn carrier(&self, x: &FreeModule) -> FreeModule {
        let cap = if x.has_algebra() { self.n_nested } else { self.n };
        FreeModule::sym(&self.copies_of(x), cap)
    }
}

fn copies_parts(c: &FreeModule) -> (FreeModule, u32) {
    match c.kind() {
        ModuleKind::Copies { inner, count } => (inner.clone(), *count),
        _ => panic!("{c} is not a module of copies"),
    }
}

fn sym_inner(s: &FreeModule) -> FreeModule {
    match s.kind() {
        ModuleKind::Sym { inner, .. } => inner.clone(),
        _ => panic!("{s} is not a symmetric algebra"),
    }
}

fn ms(l: &BasisLabel) -> &[BasisLabel] {
    l.as_multiset().expect("multiset label")
}

fn tag(l: &BasisLabel) -> (u32, &BasisLabel) {
    l.as_copy().expect("copy label")
}

/// Shift `φ`: `Copy(n, g) ↦ Copy(n+1, g)`.
pub fn shift(c: &FreeModule) -> LinearMap {
    let rig = c.rig();
    LinearMap::from_fn(c.clone(), c.clone(), 1, move |l| {
        let (n, g) = tag(l);
        Ok(Vector::basis(rig, BasisLabel::copy(n + 1, g.clone())))
    })
}

/// `d° = (1⊗η);∇`: multiplies a generator into a monomial.
pub fn d_circ(s: &FreeModule) -> LinearMap {
    let rig = s.rig();
    let dom = FreeModule::tensor(&[s.clone(), sym_inner(s)]);
    LinearMap::from_fn(dom, s.clone(), 1, move |l| {
        let p = l.split(2).expect("pair");
        let mut v = ms(&p[0]).to_vec();
        v.push(p[1].clone());
        Ok(Vector::basis(rig, BasisLabel::multiset(v)))
    })
}

/// The derivation `D = d;(1⊗φ);d°` on `Sym(⊕X)`.
pub fn differential(s: &FreeModule) -> LinearMap {
    let rig = s.rig();
    let c = sym_inner(s);
    let step = LinearMap::tensor(&[LinearMap::identity(s), shift(&c)], rig);
    LinearMap::compose_all(&[deriving(s), step, d_circ(s)]).expect("types line up")
}

/// Monad unit `α = ι₀;η`: `x ↦ {Copy(0, x)}`.
pub fn alpha(s: &FreeModule) -> LinearMap {
    let rig = s.rig();
    let (x, _) = copies_parts(&sym_inner(s));
    LinearMap::from_fn(x, s.clone(), 1, move |l| {
        Ok(Vector::basis(rig, BasisLabel::singleton(BasisLabel::copy(0, l.clone()))))
    })
}

/// `ψ = ⟨Dⁿ⟩: ⊕A → A` for the differential algebra `A = Sym(⊕X)`.
pub fn psi(outer: &FreeModule) -> LinearMap {
    let (a, _) = copies_parts(outer);
    let d = differential(&a);
    let rig = a.rig();
    LinearMap::from_fn(outer.clone(), a, 0, move |l| {
        let (n, x) = tag(l);
        let mut v = Vector::basis(rig, x.clone());
        for _ in 0..n {
            v = d.apply_vec(&v)?;
        }
        Ok(v)
    })
}

/// Monad multiplication `ν = Sym(ψ);μ: Diff(Diff X) → Diff X`.
pub fn nu(ddx: &FreeModule) -> LinearMap {
    let outer = sym_inner(ddx);
    let (dx, _) = copies_parts(&outer);
    let cap = match ddx.kind() {
        ModuleKind::Sym { cap, .. } => *cap,
        _ => unreachable!(),
    };
    let mid = FreeModule::sym(&dx, cap);
    let p = psi(&outer);
    LinearMap::compose(&lift_map(&p, ddx, &mid), &flatten(&mid)).expect("types line up")
}

/// `⊕f` acting copy by copy.
pub fn copies_map(f: &LinearMap, count: u32) -> LinearMap {
    let (dom, cod) = (FreeModule::copies(f.domain(), count), FreeModule::copies(f.codomain(), count));
    let f2 = f.clone();
    LinearMap::from_fn(dom, cod, f.shift(), move |l| {
        let (n, x) = tag(l);
        Ok(f2.image(x)?.map_labels(|y| BasisLabel::copy(n, y.clone())))
    })
}

/// `Diff f = Sym(⊕f)`.
pub fn diff_lift(f: &LinearMap, caps: DiffCaps) -> LinearMap {
    lift_map(&copies_map(f, caps.copies), &caps.carrier(f.domain()), &caps.carrier(f.codomain()))
}

/// Projection `π_k: ⊕X → X` onto copy `k`.
pub fn copy_projection(c: &FreeModule, k: u32) -> LinearMap {
    let rig = c.rig();
    let (x, _) = copies_parts(c);
    LinearMap::from_fn(c.clone(), x, 0, move |l| {
        let (n, g) = tag(l);
        Ok(if n == k { Vector::basis(rig, g.clone()) } else { Vector::zero(rig) })
    })
}

/// Injection `ι_k: X → ⊕X` into copy `k`.
pub fn copy_injection(c: &FreeModule, k: u32) -> LinearMap {
    let rig = c.rig();
    let (x, _) = copies_parts(c);
    LinearMap::from_fn(x, c.clone(), k as usize, move |l| Ok(Vector::basis(rig, BasisLabel::copy(k, l.clone()))))
}

/// `Σ_k c_k π_k`, a natural map `⊕X → X`.
pub fn weighted_projection(c: &FreeModule, weights: &[RigElement]) -> LinearMap {
    let rig = c.rig();
    let (x, _) = copies_parts(c);
    let w = weights.to_vec();
    LinearMap::from_fn(c.clone(), x, 0, move |l| {
        let (n, g) = tag(l);
        Ok(match w.get(n as usize) {
            Some(k) => Vector::basis(rig, g.clone()).scaled(k),
            None => Vector::zero(rig),
        })
    })
}

/// A natural family `f̂_X: ⊕X → X`, given at each carrier `Sym(⊕X)`.
pub type Section = Arc<dyn Fn(&FreeModule) -> LinearMap + Send + Sync>;

/// `f̂ = π₀`.
pub fn pi0_section() -> Section {
    Arc::new(|c: &FreeModule| copy_projection(c, 0))
}

/// `f̂ = Σ_k c_k π_k`.
pub fn weighted_section(weights: Vec<RigElement>) -> Section {
    Arc::new(move |c: &FreeModule| weighted_projection(c, &weights))
}

/// Candidate deriving map `b = d;(1⊗f̂)` on `Sym(⊕X)`.
pub fn candidate_b(s: &FreeModule, f_hat: &Section) -> LinearMap {
    let rig = s.rig();
    let c = sym_inner(s);
    let tail = LinearMap::tensor(&[LinearMap::identity(s), f_hat(&c)], rig);
    LinearMap::compose(&deriving(s), &tail).expect("types line up")
}

/// `Diff(X⊗Y) → Diff X ⊗ Diff Y`: the algebra map with
/// `Copy(n, a⊗b) ↦ Σ_k C(n,k) {Copy(k,a)} ⊗ {Copy(n−k,b)}`.
pub fn monoidal(dx: &FreeModule, dy: &FreeModule, dxy: &FreeModule) -> LinearMap {
    let rig = dx.rig();
    let (x, _) = copies_parts(&sym_inner(dx));
    let kx = x.factor_count();
    let (xy, _) = copies_parts(&sym_inner(dxy));
    let kxy = xy.factor_count();
    let cap = dxy.max_grade();
    let cod = FreeModule::tensor(&[dx.clone(), dy.clone()]);
    LinearMap::from_fn(dxy.clone(), cod, cap, move |l| {
        let mut acc: BTreeMap<(Vec<BasisLabel>, Vec<BasisLabel>), RigElement> = BTreeMap::new();
        acc.insert((Vec::new(), Vec::new()), rig.one());
        for e in ms(l) {
            let (n, g) = tag(e);
            let parts = g.split(kxy).expect("tensor entry");
            let (a, b) = (BasisLabel::join(parts[..kx].to_vec()), BasisLabel::join(parts[kx..].to_vec()));
            let mut next = BTreeMap::new();
            for ((left, right), c) in &acc {
                for k in 0..=n {
                    let mut l2 = left.clone();
                    l2.push(BasisLabel::copy(k, a.clone()));
                    l2.sort();
                    let mut r2 = right.clone();
                    r2.push(BasisLabel::copy(n - k, b.clone()));
                    r2.sort();
                    let t = c.mul_same(&rig.from_u64(binom(n as u64, k as u64)));
                    let slot: &mut RigElement = next.entry((l2, r2)).or_insert_with(|| rig.zero());
                    *slot = slot.add_same(&t);
                }
            }
            acc = next;
        }
        Ok(Vector::from_terms(
            rig,
            acc.into_iter()
                .map(|((a, b), c)| (BasisLabel::pair(BasisLabel::Multiset(a.into()), BasisLabel::Multiset(b.into())), c)),
        ))
    })
}

/// `Diff K → K`: a monomial goes to 1 when every tag is 0, else to 0.
pub fn monoidal_unit(dk: &FreeModule) -> LinearMap {
    let rig = dk.rig();
    LinearMap::from_fn(dk.clone(), FreeModule::unit(rig), 0, move |l| {
        Ok(if ms(l).iter().all(|e| tag(e).0 == 0) {
            Vector::basis(rig, BasisLabel::Unit)
        } else {
            Vector::zero(rig)
        })
    })
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |c, i| c * (n - i) / (i + 1))
}

fn one(objs: &[FreeModule]) -> Result<&FreeModule, ModalityError> {
    objs.first().ok_or_else(|| ModalityError::Unsupported("missing object argument".into()))
}

/// The `diff` model. Besides the additive bialgebra structure it registers
/// `m`, `mK`, the derivation `diff.D`, the algebra multiplication
/// `alg.mult`, and the candidate `d = b` for `f̂ = π₀` with `η = (u⊗1);b`.
pub fn diff_model(rig: Rig, dim: u32, caps: DiffCaps) -> Model<ModCat> {
    let mut m = Model::new(
        "diff",
        ModCat::new(rig, Orientation::Opposite),
        Arc::new(move |x: &FreeModule| Ok(caps.carrier(x))),
        Arc::new(move |f: &OArr| Ok(OArr(diff_lift(f.map(), caps)))),
    );
    m.register_linear("delta", move |o| Ok(nu(&caps.carrier(&caps.carrier(one(o)?)))));
    m.register_linear("eps", move |o| Ok(alpha(&caps.carrier(one(o)?))));
    m.register_linear("Delta", move |o| Ok(multiplication(&caps.carrier(one(o)?))));
    m.register_linear("e", move |o| Ok(unit(&caps.carrier(one(o)?))));
    m.register_linear("nabla", move |o| Ok(comultiplication(&caps.carrier(one(o)?))));
    m.register_linear("u", move |o| Ok(counit(&caps.carrier(one(o)?))));
    m.register_linear("alg.mult", move |o| Ok(multiplication(&caps.carrier(one(o)?))));
    m.register_linear("diff.D", move |o| Ok(differential(&caps.carrier(one(o)?))));
    m.register_linear("m", move |o| {
        if o.len() != 2 {
            return Err(ModalityError::Unsupported("m takes two objects".into()));
        }
        let xy = FreeModule::tensor(&[o[0].clone(), o[1].clone()]);
        Ok(monoidal(&caps.carrier(&o[0]), &caps.carrier(&o[1]), &caps.carrier(&xy)))
    });
    m.register_linear("mK", move |_| Ok(monoidal_unit(&caps.carrier(&FreeModule::unit(rig)))));
    let section = pi0_section();
    let s2 = section.clone();
    m.register_linear("d", move |o| Ok(candidate_b(&caps.carrier(one(o)?), &section)));
    m.register_linear("eta", move |o| {
        let s = caps.carrier(one(o)?);
        let b = candidate_b(&s, &s2);
        let x = one(o)?;
        let tail = LinearMap::tensor(&[counit(&s), LinearMap::identity(x)], rig);
        LinearMap::compose(&b, &tail).map_err(ModalityError::Linalg)
    });
    super::sym::set_base_objects(&mut m, rig, dim);
    m
}

/// The two composites obtained by sandwiching the chain rule for
/// `b = d;(1⊗f̂)` between `(α⊗α);∇;ι₁;η` and `(degree one;π₁)⊗1`, on `M⊗M`.
#[derive(Debug, Clone)]
pub struct Refutation {
    pub lhs: LinearMap,
    pub rhs: LinearMap,
    pub witness: Option<Witness>,
}

/// Builds the chain-rule sandwich for `f̂` over `m`. Fails with
/// `InvalidCandidate` unless `ι₀;f̂ = 1`.
pub fn refutation_witness(m: &FreeModule, caps: DiffCaps, f_hat: &Section) -> Result<Refutation, LinalgError> {
    let rig = m.rig();
    let dm = caps.carrier(m);
    let ddm = caps.carrier(&dm);
    let cm = caps.copies_of(m);
    let cdm = caps.copies_of(&dm);

    let sec = f_hat(&cm);
    let check = LinearMap::compose(&copy_injection(&cm, 0), &sec)?;
    if !compare_maps(&check, &LinearMap::identity(m), 1)?.agrees() {
        return Err(LinalgError::InvalidCandidate("ι₀ then f̂ is not the identity".into()));
    }

    let id = LinearMap::identity;
    let t = |maps: &[LinearMap]| LinearMap::tensor(maps, rig);
    let a = alpha(&dm);
    let head = LinearMap::compose_all(&[
        t(&[a.clone(), a]),
        multiplication(&dm),
        copy_injection(&cdm, 1),
        singleton(&ddm),
    ])?;
    let read = LinearMap::compose(&super::sym::degree_one(&dm), &copy_projection(&cm, 1))?;
    let tail = t(&[read, id(m)]);
    let (nu_m, b_m, b_dm) = (nu(&ddm), candidate_b(&dm, f_hat), candidate_b(&ddm, f_hat));

    let lhs = LinearMap::compose_all(&[head.clone(), nu_m.clone(), b_m.clone(), tail.clone()])?;
    let rhs = LinearMap::compose_all(&[
        head,
        b_dm,
        t(&[nu_m, b_m]),
        t(&[multiplication(&dm), id(m)]),
        tail,
    ])?;
    let witness = compare_maps(&lhs, &rhs, 2)?.mismatch;
    Ok(Refutation { lhs, rhs, witness })
}

#[cfg(test)]
mod tests;
