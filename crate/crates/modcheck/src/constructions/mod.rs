//! Structure-to-structure builders: monoidal structure from an additive
//! bialgebra modality and back, deriving transformations from coderelictions
//! and back, Seely maps, the p/i maps, `!^B` and the biproduct completion.

mod biprod;
mod opb;

use std::sync::Arc;

pub use biprod::{biproduct_completion, Biprod, Matrix, ObjList};
pub use opb::nonadditive_b;

use crate::modality::{Category, Family, Model, ModalityError};

fn arg<'a, C: Category>(objs: &'a [C::Obj], i: usize, symbol: &str) -> Result<&'a C::Obj, ModalityError> {
    objs.get(i).ok_or_else(|| ModalityError::Unsupported(format!("{symbol} needs {} object arguments", i + 1)))
}

fn bang<C: Category>(m: &Model<C>, x: &C::Obj) -> Result<C::Obj, ModalityError> {
    m.bang(x)
}

/// `m_{A,B}` built from δ, ε, Δ, e, ∇, u:
/// `(δ⊗δ);(!(1⊗u)⊗!(u⊗1));∇;δ;!(Δ);!(!(ε⊗e)⊗!(e⊗ε));!(ε⊗ε)`.
pub fn m_from_additive_at<C: Category>(src: &Model<C>, a: &C::Obj, b: &C::Obj) -> Result<C::Arr, ModalityError> {
    let cat = &src.cat;
    let (ba, bb) = (bang(src, a)?, bang(src, b)?);
    let x = cat.tensor_obj(&[ba.clone(), bb.clone()]);
    let dd = cat.tensor(&[src.at("delta", a)?, src.at("delta", b)?]);
    let left = src.lift(&cat.tensor(&[cat.id(&ba), src.at("u", b)?]))?;
    let right = src.lift(&cat.tensor(&[src.at("u", a)?, cat.id(&bb)]))?;
    let p0 = cat.tensor(&[src.at("eps", a)?, src.at("e", b)?]);
    let p1 = cat.tensor(&[src.at("e", a)?, src.at("eps", b)?]);
    let split = src.lift(&cat.tensor(&[src.lift(&p0)?, src.lift(&p1)?]))?;
    let last = src.lift(&cat.tensor(&[src.at("eps", a)?, src.at("eps", b)?]))?;
    cat.compose_all(&[
        dd,
        cat.tensor(&[left, right]),
        src.at("nabla", &x)?,
        src.at("delta", &x)?,
        src.lift(&src.at("Delta", &x)?)?,
        split,
        last,
    ])
}

/// `m_K = u_K;δ_K;!(e_K)`.
pub fn mk_from_additive<C: Category>(src: &Model<C>) -> Result<C::Arr, ModalityError> {
    let k = src.cat.unit();
    src.cat
        .compose_all(&[src.at("u", &k)?, src.at("delta", &k)?, src.lift(&src.at("e", &k)?)?])
}

/// `∇ = (δ⊗δ);m_{!A,!A};!(ε⊗e + e⊗ε)`.
pub fn nabla_from_monoidal_at<C: Category>(src: &Model<C>, a: &C::Obj) -> Result<C::Arr, ModalityError> {
    let cat = &src.cat;
    let ba = bang(src, a)?;
    let p = cat.add(
        &cat.tensor(&[src.at("eps", a)?, src.at("e", a)?]),
        &cat.tensor(&[src.at("e", a)?, src.at("eps", a)?]),
    )?;
    cat.compose_all(&[
        cat.tensor(&[src.at("delta", a)?, src.at("delta", a)?]),
        src.structural("m", &[ba.clone(), ba])?,
        src.lift(&p)?,
    ])
}

/// `u = m_K;!(0)`.
pub fn u_from_monoidal_at<C: Category>(src: &Model<C>, a: &C::Obj) -> Result<C::Arr, ModalityError> {
    let cat = &src.cat;
    let k = cat.unit();
    cat.compose(&src.structural("mK", &[])?, &src.lift(&cat.zero(&k, a))?)
}

/// `d = (1⊗η);∇`.
pub fn d_from_eta_at<C: Category>(src: &Model<C>, a: &C::Obj) -> Result<C::Arr, ModalityError> {
    let cat = &src.cat;
    let ba = bang(src, a)?;
    cat.compose(&cat.tensor(&[cat.id(&ba), src.at("eta", a)?]), &src.at("nabla", a)?)
}

/// `η = (u⊗1);d`.
pub fn eta_from_d_at<C: Category>(src: &Model<C>, a: &C::Obj) -> Result<C::Arr, ModalityError> {
    let cat = &src.cat;
    cat.compose(&cat.tensor(&[src.at("u", a)?, cat.id(a)]), &src.at("d", a)?)
}

fn family<C: Category>(
    src: &Model<C>,
    f: fn(&Model<C>, &[C::Obj]) -> Result<C::Arr, ModalityError>,
) -> Family<C> {
    let src = Arc::new(src.clone());
    Arc::new(move |objs| f(&src, objs))
}

/// `m` and `mK` families computed from the source model's ∇ and u.
pub fn m_from_additive<C: Category>(src: &Model<C>) -> (Family<C>, Family<C>) {
    (
        family(src, |s, o| m_from_additive_at(s, arg::<C>(o, 0, "m")?, arg::<C>(o, 1, "m")?)),
        family(src, |s, _| mk_from_additive(s)),
    )
}

/// `nabla` and `u` families computed from the source model's m and mK.
pub fn nabla_from_monoidal<C: Category>(src: &Model<C>) -> (Family<C>, Family<C>) {
    (
        family(src, |s, o| nabla_from_monoidal_at(s, arg::<C>(o, 0, "nabla")?)),
        family(src, |s, o| u_from_monoidal_at(s, arg::<C>(o, 0, "u")?)),
    )
}

/// `d` family computed from the source model's η and ∇.
pub fn d_from_eta<C: Category>(src: &Model<C>) -> Family<C> {
    family(src, |s, o| d_from_eta_at(s, arg::<C>(o, 0, "d")?))
}

/// `eta` family computed from the source model's d and u.
pub fn eta_from_d<C: Category>(src: &Model<C>) -> Family<C> {
    family(src, |s, o| eta_from_d_at(s, arg::<C>(o, 0, "eta")?))
}

/// Copy of `src` named `name` whose m and mK are rebuilt from ∇ and u.
pub fn with_derived_monoidal<C: Category>(src: &Model<C>, name: &str) -> Model<C> {
    let (m, mk) = m_from_additive(src);
    let mut out = src.derive(name);
    out.register("m", m);
    out.register("mK", mk);
    out
}

/// Copy of `src` whose ∇ and u are rebuilt from m and mK.
pub fn with_derived_nabla<C: Category>(src: &Model<C>, name: &str) -> Model<C> {
    let (n, u) = nabla_from_monoidal(src);
    let mut out = src.derive(name);
    out.register("nabla", n);
    out.register("u", u);
    out
}

/// Copy of `src` whose d is rebuilt from η and ∇.
pub fn with_derived_d<C: Category>(src: &Model<C>, name: &str) -> Model<C> {
    let d = d_from_eta(src);
    let mut out = src.derive(name);
    out.register("d", d);
    out
}

/// Copy of `src` whose η is rebuilt from d and u.
pub fn with_derived_eta<C: Category>(src: &Model<C>, name: &str) -> Model<C> {
    let e = eta_from_d(src);
    let mut out = src.derive(name);
    out.register("eta", e);
    out
}

/// The maps `p₀ = ε⊗e`, `p₁ = e⊗ε`, `i₀ = η⊗u`, `i₁ = u⊗η` for `A`, `B`.
pub struct PiMaps<C: Category> {
    pub p0: C::Arr,
    pub p1: C::Arr,
    pub i0: C::Arr,
    pub i1: C::Arr,
}

pub fn pi_i_maps<C: Category>(m: &Model<C>, a: &C::Obj, b: &C::Obj) -> Result<PiMaps<C>, ModalityError> {
    let cat = &m.cat;
    Ok(PiMaps {
        p0: cat.tensor(&[m.at("eps", a)?, m.at("e", b)?]),
        p1: cat.tensor(&[m.at("e", a)?, m.at("eps", b)?]),
        i0: cat.tensor(&[m.at("eta", a)?, m.at("u", b)?]),
        i1: cat.tensor(&[m.at("u", a)?, m.at("eta", b)?]),
    })
}

/// Seely maps `χ: !(A⊕B) → !A⊗!B`, its inverse, `χ_T: !0 → K` and its inverse.
pub struct Seely<C: Category> {
    pub chi: C::Arr,
    pub chi_inv: C::Arr,
    pub chi_t: C::Arr,
    pub chi_t_inv: C::Arr,
}

/// `χ = Δ;(!π₀⊗!π₁)` and `χ_T = e`.
pub fn chi<C: Category>(m: &Model<C>, a: &C::Obj, b: &C::Obj) -> Result<(C::Arr, C::Arr), ModalityError> {
    let cat = &m.cat;
    let parts = [a.clone(), b.clone()];
    let s = cat.sum_obj(&parts);
    let chi = cat.compose(
        &m.at("Delta", &s)?,
        &cat.tensor(&[m.lift(&cat.proj(&parts, 0))?, m.lift(&cat.proj(&parts, 1))?]),
    )?;
    Ok((chi, m.at("e", &cat.zero_obj())?))
}

/// Inverses from the bialgebra side: `(!ι₀⊗!ι₁);∇` and `u`.
pub fn chi_inv_additive<C: Category>(m: &Model<C>, a: &C::Obj, b: &C::Obj) -> Result<(C::Arr, C::Arr), ModalityError> {
    let cat = &m.cat;
    let parts = [a.clone(), b.clone()];
    let s = cat.sum_obj(&parts);
    let inv = cat.compose(
        &cat.tensor(&[m.lift(&cat.inj(&parts, 0))?, m.lift(&cat.inj(&parts, 1))?]),
        &m.at("nabla", &s)?,
    )?;
    Ok((inv, m.at("u", &cat.zero_obj())?))
}

/// Inverses from the monoidal side: `(δ⊗δ);m;!⟨ε⊗e, e⊗ε⟩` and `m_K;!(0)`.
pub fn chi_inv_monoidal<C: Category>(m: &Model<C>, a: &C::Obj, b: &C::Obj) -> Result<(C::Arr, C::Arr), ModalityError> {
    let cat = &m.cat;
    let parts = [a.clone(), b.clone()];
    let (ba, bb) = (m.bang(a)?, m.bang(b)?);
    let pair = cat.add(
        &cat.compose(&cat.tensor(&[m.at("eps", a)?, m.at("e", b)?]), &cat.inj(&parts, 0))?,
        &cat.compose(&cat.tensor(&[m.at("e", a)?, m.at("eps", b)?]), &cat.inj(&parts, 1))?,
    )?;
    let inv = cat.compose_all(&[
        cat.tensor(&[m.at("delta", a)?, m.at("delta", b)?]),
        m.structural("m", &[ba, bb])?,
        m.lift(&pair)?,
    ])?;
    let k = cat.unit();
    let z = cat.zero_obj();
    let inv_t = cat.compose(&m.structural("mK", &[])?, &m.lift(&cat.zero(&k, &z))?)?;
    Ok((inv, inv_t))
}

/// Seely maps, with inverses from ∇/u when registered and from m/mK otherwise.
pub fn seely<C: Category>(m: &Model<C>, a: &C::Obj, b: &C::Obj) -> Result<Seely<C>, ModalityError> {
    let (chi, chi_t) = chi(m, a, b)?;
    let (chi_inv, chi_t_inv) = if m.has("nabla") && m.has("u") {
        chi_inv_additive(m, a, b)?
    } else {
        chi_inv_monoidal(m, a, b)?
    };
    Ok(Seely { chi, chi_inv, chi_t, chi_t_inv })
}
