//! The biproduct completion: lists of objects and matrices of arrows, with
//! the modality extended to lists.

use std::fmt;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use crate::linalg::Comparison;
use crate::modality::{CatComparison, Category, Model, ModalityError};
use crate::scalars::Rig;

/// Finite list of objects of the base category.
#[derive(Clone, Debug, PartialEq)]
pub struct ObjList<O>(pub Vec<O>);

impl<O: fmt::Display> fmt::Display for ObjList<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, o) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{o}")?;
        }
        write!(f, "]")
    }
}

/// Matrix `[f_ij]` with `f_ij: dom[i] → cod[j]`.
#[derive(Clone)]
pub struct Matrix<C: Category> {
    pub dom: Vec<C::Obj>,
    pub cod: Vec<C::Obj>,
    pub entries: Vec<Vec<C::Arr>>,
}

impl<C: Category> Matrix<C> {
    pub fn entry(&self, i: usize, j: usize) -> &C::Arr {
        &self.entries[i][j]
    }

    /// A 1×1 matrix.
    pub fn single(cat: &C, f: C::Arr) -> Matrix<C> {
        Matrix { dom: vec![cat.dom(&f)], cod: vec![cat.cod(&f)], entries: vec![vec![f]] }
    }
}

/// Matrices over a base category.
#[derive(Clone, Debug, PartialEq)]
pub struct Biprod<C> {
    pub base: C,
}

/// All index tuples over the given lengths, first index most significant.
fn multi_indices(lens: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in lens {
        let mut next = Vec::with_capacity(out.len() * n);
        for p in &out {
            for i in 0..n {
                let mut q = p.clone();
                q.push(i);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

impl<C: Category> Biprod<C> {
    pub fn new(base: C) -> Biprod<C> {
        Biprod { base }
    }

    fn build(
        &self,
        dom: &[C::Obj],
        cod: &[C::Obj],
        mut f: impl FnMut(usize, usize) -> Result<C::Arr, ModalityError>,
    ) -> Result<Matrix<C>, ModalityError> {
        let mut entries = Vec::with_capacity(dom.len());
        for i in 0..dom.len() {
            let mut row = Vec::with_capacity(cod.len());
            for j in 0..cod.len() {
                row.push(f(i, j)?);
            }
            entries.push(row);
        }
        Ok(Matrix { dom: dom.to_vec(), cod: cod.to_vec(), entries })
    }

    fn infallible(
        &self,
        dom: &[C::Obj],
        cod: &[C::Obj],
        mut f: impl FnMut(usize, usize) -> C::Arr,
    ) -> Matrix<C> {
        self.build(dom, cod, |i, j| Ok(f(i, j))).expect("infallible")
    }
}

impl<C: Category> Category for Biprod<C> {
    type Obj = ObjList<C::Obj>;
    type Arr = Matrix<C>;

    fn rig(&self) -> Rig {
        self.base.rig()
    }

    fn obj_key(&self, x: &Self::Obj) -> String {
        let keys: Vec<String> = x.0.iter().map(|o| self.base.obj_key(o)).collect();
        format!("[{}]", keys.join(";"))
    }

    fn dom(&self, f: &Matrix<C>) -> Self::Obj {
        ObjList(f.dom.clone())
    }

    fn cod(&self, f: &Matrix<C>) -> Self::Obj {
        ObjList(f.cod.clone())
    }

    fn unit(&self) -> Self::Obj {
        ObjList(vec![self.base.unit()])
    }

    fn zero_obj(&self) -> Self::Obj {
        ObjList(Vec::new())
    }

    fn tensor_obj(&self, xs: &[Self::Obj]) -> Self::Obj {
        let lens: Vec<usize> = xs.iter().map(|x| x.0.len()).collect();
        ObjList(
            multi_indices(&lens)
                .iter()
                .map(|ix| {
                    let parts: Vec<C::Obj> = ix.iter().zip(xs).map(|(&i, x)| x.0[i].clone()).collect();
                    self.base.tensor_obj(&parts)
                })
                .collect(),
        )
    }

    fn sum_obj(&self, xs: &[Self::Obj]) -> Self::Obj {
        ObjList(xs.iter().flat_map(|x| x.0.iter().cloned()).collect())
    }

    fn id(&self, x: &Self::Obj) -> Matrix<C> {
        self.infallible(&x.0, &x.0, |i, j| {
            if i == j {
                self.base.id(&x.0[i])
            } else {
                self.base.zero(&x.0[i], &x.0[j])
            }
        })
    }

    fn compose(&self, f: &Matrix<C>, g: &Matrix<C>) -> Result<Matrix<C>, ModalityError> {
        if f.cod != g.dom {
            return Err(ModalityError::Type {
                node: "matrix composite".into(),
                msg: format!("codomain {} does not match domain {}", ObjList(f.cod.clone()), ObjList(g.dom.clone())),
            });
        }
        self.build(&f.dom, &g.cod, |i, j| {
            let terms = (0..f.cod.len())
                .map(|k| self.base.compose(&f.entries[i][k], &g.entries[k][j]))
                .collect::<Result<Vec<_>, _>>()?;
            if terms.is_empty() {
                Ok(self.base.zero(&f.dom[i], &g.cod[j]))
            } else {
                self.base.sum(&terms, &f.dom[i], &g.cod[j])
            }
        })
    }

    fn tensor(&self, fs: &[Matrix<C>]) -> Matrix<C> {
        let dl: Vec<usize> = fs.iter().map(|f| f.dom.len()).collect();
        let cl: Vec<usize> = fs.iter().map(|f| f.cod.len()).collect();
        let (di, ci) = (multi_indices(&dl), multi_indices(&cl));
        let dom = self.tensor_obj(&fs.iter().map(|f| ObjList(f.dom.clone())).collect::<Vec<_>>()).0;
        let cod = self.tensor_obj(&fs.iter().map(|f| ObjList(f.cod.clone())).collect::<Vec<_>>()).0;
        self.infallible(&dom, &cod, |i, j| {
            let parts: Vec<C::Arr> = fs
                .iter()
                .enumerate()
                .map(|(r, f)| f.entries[di[i][r]][ci[j][r]].clone())
                .collect();
            self.base.tensor(&parts)
        })
    }

    fn sum(&self, fs: &[Matrix<C>], dom: &Self::Obj, cod: &Self::Obj) -> Result<Matrix<C>, ModalityError> {
        for f in fs {
            if f.dom != dom.0 || f.cod != cod.0 {
                return Err(ModalityError::Type {
                    node: "matrix sum".into(),
                    msg: format!("summand has type {} → {}", ObjList(f.dom.clone()), ObjList(f.cod.clone())),
                });
            }
        }
        self.build(&dom.0, &cod.0, |i, j| {
            let es: Vec<C::Arr> = fs.iter().map(|f| f.entries[i][j].clone()).collect();
            if es.is_empty() {
                Ok(self.base.zero(&dom.0[i], &cod.0[j]))
            } else {
                self.base.sum(&es, &dom.0[i], &cod.0[j])
            }
        })
    }

    fn zero(&self, dom: &Self::Obj, cod: &Self::Obj) -> Matrix<C> {
        self.infallible(&dom.0, &cod.0, |i, j| self.base.zero(&dom.0[i], &cod.0[j]))
    }

    fn permute(&self, blocks: &[Self::Obj], perm: &[usize]) -> Matrix<C> {
        let lens: Vec<usize> = blocks.iter().map(|b| b.0.len()).collect();
        let src = multi_indices(&lens);
        let out_blocks: Vec<Self::Obj> = perm.iter().map(|&p| blocks[p].clone()).collect();
        let out_lens: Vec<usize> = out_blocks.iter().map(|b| b.0.len()).collect();
        let dst = multi_indices(&out_lens);
        let dom = self.tensor_obj(blocks).0;
        let cod = self.tensor_obj(&out_blocks).0;
        self.infallible(&dom, &cod, |i, j| {
            if perm.iter().enumerate().all(|(t, &p)| dst[j][t] == src[i][p]) {
                let comps: Vec<C::Obj> = src[i].iter().zip(blocks).map(|(&k, b)| b.0[k].clone()).collect();
                self.base.permute(&comps, perm)
            } else {
                self.base.zero(&dom[i], &cod[j])
            }
        })
    }

    fn inj(&self, parts: &[Self::Obj], i: usize) -> Matrix<C> {
        let offset: usize = parts[..i].iter().map(|p| p.0.len()).sum();
        let cod = self.sum_obj(parts).0;
        let dom = parts[i].0.clone();
        self.infallible(&dom, &cod, |r, c| {
            if c == offset + r {
                self.base.id(&dom[r])
            } else {
                self.base.zero(&dom[r], &cod[c])
            }
        })
    }

    fn proj(&self, parts: &[Self::Obj], i: usize) -> Matrix<C> {
        let offset: usize = parts[..i].iter().map(|p| p.0.len()).sum();
        let dom = self.sum_obj(parts).0;
        let cod = parts[i].0.clone();
        self.infallible(&dom, &cod, |r, c| {
            if r == offset + c {
                self.base.id(&cod[c])
            } else {
                self.base.zero(&dom[r], &cod[c])
            }
        })
    }

    fn compare_at(&self, f: &Matrix<C>, g: &Matrix<C>, grade: usize) -> Result<CatComparison, ModalityError> {
        if f.dom != g.dom || f.cod != g.cod {
            return Err(ModalityError::Type { node: "matrix comparison".into(), msg: "types differ".into() });
        }
        let mut out = CatComparison {
            inner: Comparison { checked: 0, mismatch: None, frontier_hit: None },
            entry: None,
        };
        for i in 0..f.dom.len() {
            for j in 0..f.cod.len() {
                let c = self.base.compare_at(&f.entries[i][j], &g.entries[i][j], grade)?;
                out.inner.checked += c.inner.checked;
                if out.inner.mismatch.is_none() && c.inner.mismatch.is_some() {
                    out.inner.mismatch = c.inner.mismatch;
                    out.entry = Some((i, j));
                }
                if let Some(h) = c.inner.frontier_hit {
                    out.inner.frontier_hit = Some(out.inner.frontier_hit.map_or(h, |p| p.min(h)));
                }
            }
        }
        Ok(out)
    }

    fn compare_limit(&self, f: &Matrix<C>) -> usize {
        f.entries.iter().flatten().map(|e| self.base.compare_limit(e)).max().unwrap_or(0)
    }

    fn random_arrow(&self, rng: &mut ChaCha8Rng, dom: &Self::Obj, cod: &Self::Obj) -> Matrix<C> {
        self.infallible(&dom.0, &cod.0, |i, j| self.base.random_arrow(rng, &dom.0[i], &cod.0[j]))
    }
}

/// `n`-fold comultiplication `!A → (!A)^{⊗n}` from Δ and e.
fn comult_n<C: Category>(m: &Model<C>, a: &C::Obj, n: usize) -> Result<C::Arr, ModalityError> {
    let cat = &m.cat;
    let ba = m.bang(a)?;
    match n {
        0 => m.at("e", a),
        1 => Ok(cat.id(&ba)),
        _ => {
            let mut acc = m.at("Delta", a)?;
            for k in 2..n {
                let mut parts = vec![m.at("Delta", a)?];
                parts.extend(std::iter::repeat_n(cat.id(&ba), k - 1));
                acc = cat.compose(&acc, &cat.tensor(&parts))?;
            }
            Ok(acc)
        }
    }
}

/// `n`-fold multiplication `(!A)^{⊗n} → !A` from ∇ and u.
fn mult_n<C: Category>(m: &Model<C>, a: &C::Obj, n: usize) -> Result<C::Arr, ModalityError> {
    let cat = &m.cat;
    let ba = m.bang(a)?;
    match n {
        0 => m.at("u", a),
        1 => Ok(cat.id(&ba)),
        _ => {
            let mut parts = vec![m.at("nabla", a)?];
            parts.extend(std::iter::repeat_n(cat.id(&ba), n - 2));
            cat.compose(&cat.tensor(&parts), &mult_n(m, a, n - 1)?)
        }
    }
}

/// Tensor-of-bialgebras comultiplication on `⊗ !A_i`.
fn tensor_comult<C: Category>(m: &Model<C>, xs: &[C::Obj]) -> Result<C::Arr, ModalityError> {
    let cat = &m.cat;
    let n = xs.len();
    let bangs = xs.iter().map(|x| m.bang(x)).collect::<Result<Vec<_>, _>>()?;
    let deltas = xs.iter().map(|x| m.at("Delta", x)).collect::<Result<Vec<_>, _>>()?;
    let blocks: Vec<C::Obj> = bangs.iter().flat_map(|b| [b.clone(), b.clone()]).collect();
    let perm: Vec<usize> = (0..n).map(|i| 2 * i).chain((0..n).map(|i| 2 * i + 1)).collect();
    cat.compose(&cat.tensor(&deltas), &cat.permute(&blocks, &perm))
}

/// Tensor-of-bialgebras multiplication on `⊗ !A_i`.
fn tensor_mult<C: Category>(m: &Model<C>, xs: &[C::Obj]) -> Result<C::Arr, ModalityError> {
    let cat = &m.cat;
    let n = xs.len();
    let bangs = xs.iter().map(|x| m.bang(x)).collect::<Result<Vec<_>, _>>()?;
    let nablas = xs.iter().map(|x| m.at("nabla", x)).collect::<Result<Vec<_>, _>>()?;
    let blocks: Vec<C::Obj> = bangs.iter().chain(bangs.iter()).cloned().collect();
    let perm: Vec<usize> = (0..n).flat_map(|i| [i, n + i]).collect();
    cat.compose(&cat.permute(&blocks, &perm), &cat.tensor(&nablas))
}

/// `e ⊗ … ⊗ ε_i ⊗ … ⊗ e: ⊗ !A_k → A_i`.
fn p_i<C: Category>(m: &Model<C>, xs: &[C::Obj], i: usize) -> Result<C::Arr, ModalityError> {
    let parts = xs
        .iter()
        .enumerate()
        .map(|(k, x)| m.at(if k == i { "eps" } else { "e" }, x))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(m.cat.tensor(&parts))
}

/// `u ⊗ … ⊗ η_i ⊗ … ⊗ u: A_i → ⊗ !A_k`.
fn eta_i<C: Category>(m: &Model<C>, xs: &[C::Obj], i: usize) -> Result<C::Arr, ModalityError> {
    let parts = xs
        .iter()
        .enumerate()
        .map(|(k, x)| m.at(if k == i { "eta" } else { "u" }, x))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(m.cat.tensor(&parts))
}

/// `u ⊗ … ⊗ 1 ⊗ … ⊗ u: !A_i → ⊗ !A_k`.
fn iota_i<C: Category>(m: &Model<C>, xs: &[C::Obj], i: usize) -> Result<C::Arr, ModalityError> {
    let parts = xs
        .iter()
        .enumerate()
        .map(|(k, x)| if k == i { Ok(m.cat.id(&m.bang(x)?)) } else { m.at("u", x) })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(m.cat.tensor(&parts))
}

fn list_bang<C: Category>(m: &Model<C>, x: &ObjList<C::Obj>) -> Result<C::Obj, ModalityError> {
    let bangs = x.0.iter().map(|a| m.bang(a)).collect::<Result<Vec<_>, _>>()?;
    Ok(m.cat.tensor_obj(&bangs))
}

/// Extends `!` on lists: `!(f_ij)` through the comultiply, lift, multiply fan.
fn list_lift<C: Category>(m: &Model<C>, f: &Matrix<C>) -> Result<C::Arr, ModalityError> {
    let cat = &m.cat;
    let (n, k) = (f.dom.len(), f.cod.len());
    let fans = f.dom.iter().map(|a| comult_n(m, a, k)).collect::<Result<Vec<_>, _>>()?;
    let mut lifts = Vec::with_capacity(n * k);
    let mut blocks = Vec::with_capacity(n * k);
    for i in 0..n {
        for j in 0..k {
            lifts.push(m.lift(&f.entries[i][j])?);
            blocks.push(m.bang(&f.cod[j])?);
        }
    }
    let perm: Vec<usize> = (0..k).flat_map(|j| (0..n).map(move |i| i * k + j)).collect();
    let merges = f.cod.iter().map(|b| mult_n(m, b, n)).collect::<Result<Vec<_>, _>>()?;
    cat.compose_all(&[cat.tensor(&fans), cat.tensor(&lifts), cat.permute(&blocks, &perm), cat.tensor(&merges)])
}

fn one_list<O: Clone>(objs: &[ObjList<O>]) -> Result<Vec<O>, ModalityError> {
    objs.first()
        .map(|x| x.0.clone())
        .ok_or_else(|| ModalityError::Unsupported("missing object argument".into()))
}

/// The completed modality over lists of objects of `src`, which must be an
/// additive bialgebra modality; η carries over when present.
pub fn biproduct_completion<C: Category>(src: &Model<C>, name: &str) -> Model<Biprod<C>> {
    let s = Arc::new(src.clone());
    let cat = Biprod::new(src.cat.clone());
    let (s1, s2) = (s.clone(), s.clone());
    let mut out = Model::new(
        name,
        cat.clone(),
        Arc::new(move |x: &ObjList<C::Obj>| Ok(ObjList(vec![list_bang(&s1, x)?]))),
        Arc::new(move |f: &Matrix<C>| Ok(Matrix::single(&s2.cat, list_lift(&s2, f)?))),
    );
    for (n, o) in src.base_objects() {
        out.set_base(n, ObjList(vec![o.clone()]));
    }

    macro_rules! reg {
        ($sym:expr, |$m:ident, $xs:ident| $body:expr) => {{
            let ($m, c) = (s.clone(), cat.clone());
            out.register(
                $sym,
                Arc::new(move |o: &[ObjList<C::Obj>]| {
                    let $xs = one_list(o)?;
                    let r: Result<C::Arr, ModalityError> = $body;
                    Ok(Matrix::single(&c.base, r?))
                }),
            );
        }};
    }

    reg!("Delta", |m, xs| tensor_comult(&m, &xs));
    reg!("nabla", |m, xs| tensor_mult(&m, &xs));
    reg!("e", |m, xs| {
        let parts = xs.iter().map(|x| m.at("e", x)).collect::<Result<Vec<_>, _>>()?;
        Ok(m.cat.tensor(&parts))
    });
    reg!("u", |m, xs| {
        let parts = xs.iter().map(|x| m.at("u", x)).collect::<Result<Vec<_>, _>>()?;
        Ok(m.cat.tensor(&parts))
    });
    reg!("delta", |m, xs| {
        let cat = &m.cat;
        let n = xs.len();
        let y = list_bang(&m, &ObjList(xs.clone()))?;
        let deltas = xs.iter().map(|x| m.at("delta", x)).collect::<Result<Vec<_>, _>>()?;
        let incl = (0..n).map(|i| m.lift(&iota_i(&m, &xs, i)?)).collect::<Result<Vec<_>, _>>()?;
        let projs = (0..n).map(|i| m.lift(&p_i(&m, &xs, i)?)).collect::<Result<Vec<_>, _>>()?;
        cat.compose_all(&[
            cat.tensor(&deltas),
            cat.tensor(&incl),
            mult_n(&m, &y, n)?,
            m.at("delta", &y)?,
            m.lift(&comult_n(&m, &y, n)?)?,
            m.lift(&cat.tensor(&projs))?,
        ])
    });

    let (se, ce) = (s.clone(), cat.clone());
    out.register(
        "eps",
        Arc::new(move |o: &[ObjList<C::Obj>]| {
            let xs = one_list(o)?;
            let y = list_bang(&se, &ObjList(xs.clone()))?;
            ce.build(&[y], &xs, |_, j| p_i(&se, &xs, j))
        }),
    );
    if src.has("eta") {
        let (sh, ch) = (s.clone(), cat.clone());
        out.register(
            "eta",
            Arc::new(move |o: &[ObjList<C::Obj>]| {
                let xs = one_list(o)?;
                let y = list_bang(&sh, &ObjList(xs.clone()))?;
                ch.build(&xs, &[y], |i, _| eta_i(&sh, &xs, i))
            }),
        );
    }
    out
}
