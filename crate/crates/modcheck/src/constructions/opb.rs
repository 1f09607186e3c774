//! The functor `!^B A = !B ⊗ !A` built from a model with codereliction.

use std::sync::Arc;

use crate::modality::{Category, Model, ModalityError};

/// Builds `!^B` from `src`, which must register δ, ε, Δ, e, ∇, u and m;
/// η and d carry over when present.
pub fn nonadditive_b<C: Category>(src: &Model<C>, b: C::Obj, name: &str) -> Result<Model<C>, ModalityError> {
    let cat = src.cat.clone();
    let s = Arc::new(src.clone());
    let bb = src.bang(&b)?;

    let (s1, bb1) = (s.clone(), bb.clone());
    let c1 = cat.clone();
    let bang = Arc::new(move |x: &C::Obj| Ok(c1.tensor_obj(&[bb1.clone(), s1.bang(x)?])));
    let (s2, bb2, c2) = (s.clone(), bb.clone(), cat.clone());
    let lift = Arc::new(move |f: &C::Arr| Ok(c2.tensor(&[c2.id(&bb2), s2.lift(f)?])));
    let mut out = Model::new(name, cat.clone(), bang, lift);
    for (n, o) in src.base_objects() {
        out.set_base(n, o.clone());
    }

    let one = |o: &[C::Obj]| -> Result<C::Obj, ModalityError> {
        o.first().cloned().ok_or_else(|| ModalityError::Unsupported("missing object argument".into()))
    };

    macro_rules! reg {
        ($sym:expr, |$m:ident, $b:ident, $c:ident, $a:ident| $body:expr) => {{
            let ($m, $b, $c) = (s.clone(), b.clone(), cat.clone());
            out.register(
                $sym,
                Arc::new(move |o: &[C::Obj]| {
                    let $a = one(o)?;
                    $body
                }),
            );
        }};
    }

    reg!("delta", |m, b, c, a| {
        let (bbx, ba) = (m.bang(&b)?, m.bang(&a)?);
        c.compose_all(&[
            c.tensor(&[m.at("Delta", &b)?, c.id(&ba)]),
            c.tensor(&[c.id(&bbx), m.at("delta", &b)?, m.at("delta", &a)?]),
            c.tensor(&[c.id(&bbx), m.structural("m", &[bbx.clone(), ba])?]),
        ])
    });
    reg!("eps", |m, b, c, a| Ok(c.tensor(&[m.at("e", &b)?, m.at("eps", &a)?])));
    reg!("Delta", |m, b, c, a| {
        let (bbx, ba) = (m.bang(&b)?, m.bang(&a)?);
        c.compose(
            &c.tensor(&[m.at("Delta", &b)?, m.at("Delta", &a)?]),
            &c.tensor(&[c.id(&bbx), c.sym(&bbx, &ba), c.id(&ba)]),
        )
    });
    reg!("e", |m, b, c, a| Ok(c.tensor(&[m.at("e", &b)?, m.at("e", &a)?])));
    reg!("nabla", |m, b, c, a| {
        let (bbx, ba) = (m.bang(&b)?, m.bang(&a)?);
        c.compose(
            &c.tensor(&[c.id(&bbx), c.sym(&ba, &bbx), c.id(&ba)]),
            &c.tensor(&[m.at("nabla", &b)?, m.at("nabla", &a)?]),
        )
    });
    reg!("u", |m, b, c, a| Ok(c.tensor(&[m.at("u", &b)?, m.at("u", &a)?])));
    if src.has("eta") {
        reg!("eta", |m, b, c, a| Ok(c.tensor(&[m.at("u", &b)?, m.at("eta", &a)?])));
    }
    if src.has("d") {
        reg!("d", |m, b, c, a| Ok(c.tensor(&[c.id(&m.bang(&b)?), m.at("d", &a)?])));
    }
    Ok(out)
}
