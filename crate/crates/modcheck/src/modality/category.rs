use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ModalityError;
use crate::linalg::{compare_maps_at, Comparison, FreeModule, LinearMap, Vector};
use crate::scalars::Rig;

/// How diagrams are read against underlying linear maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Direct,
    Opposite,
}

impl Orientation {
    pub fn flip(self) -> Orientation {
        match self {
            Orientation::Direct => Orientation::Opposite,
            Orientation::Opposite => Orientation::Direct,
        }
    }
}

/// Symmetric monoidal category with finite biproducts, as seen by laws.
pub trait Category: Clone + Send + Sync + 'static {
    type Obj: Clone + PartialEq + fmt::Display + fmt::Debug + Send + Sync + 'static;
    type Arr: Clone + Send + Sync + 'static;

    fn rig(&self) -> Rig;
    fn obj_key(&self, x: &Self::Obj) -> String;
    fn dom(&self, f: &Self::Arr) -> Self::Obj;
    fn cod(&self, f: &Self::Arr) -> Self::Obj;
    fn unit(&self) -> Self::Obj;
    fn zero_obj(&self) -> Self::Obj;
    fn tensor_obj(&self, xs: &[Self::Obj]) -> Self::Obj;
    fn sum_obj(&self, xs: &[Self::Obj]) -> Self::Obj;

    fn id(&self, x: &Self::Obj) -> Self::Arr;
    /// Diagrammatic composite: `f` then `g`.
    fn compose(&self, f: &Self::Arr, g: &Self::Arr) -> Result<Self::Arr, ModalityError>;
    fn tensor(&self, fs: &[Self::Arr]) -> Self::Arr;
    fn sum(&self, fs: &[Self::Arr], dom: &Self::Obj, cod: &Self::Obj) -> Result<Self::Arr, ModalityError>;
    fn zero(&self, dom: &Self::Obj, cod: &Self::Obj) -> Self::Arr;
    /// Block `perm[i]` of the source becomes block `i` of the target.
    fn permute(&self, blocks: &[Self::Obj], perm: &[usize]) -> Self::Arr;
    fn inj(&self, parts: &[Self::Obj], i: usize) -> Self::Arr;
    fn proj(&self, parts: &[Self::Obj], i: usize) -> Self::Arr;

    /// Compares parallel arrows on domain labels of grade exactly `grade`.
    fn compare_at(&self, f: &Self::Arr, g: &Self::Arr, grade: usize) -> Result<CatComparison, ModalityError>;
    /// Largest grade among the labels `compare_at` ranges over for `f`.
    fn compare_limit(&self, f: &Self::Arr) -> usize;
    fn random_arrow(&self, rng: &mut ChaCha8Rng, dom: &Self::Obj, cod: &Self::Obj) -> Self::Arr;

    /// The same category with underlying maps read in the other direction,
    /// when that makes sense.
    fn flipped_reading(&self) -> Option<Self> {
        None
    }

    fn sym(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Arr {
        self.permute(&[a.clone(), b.clone()], &[1, 0])
    }

    fn compose_all(&self, fs: &[Self::Arr]) -> Result<Self::Arr, ModalityError> {
        let mut acc = fs[0].clone();
        for f in &fs[1..] {
            acc = self.compose(&acc, f)?;
        }
        Ok(acc)
    }

    fn add(&self, f: &Self::Arr, g: &Self::Arr) -> Result<Self::Arr, ModalityError> {
        self.sum(&[f.clone(), g.clone()], &self.dom(f), &self.cod(f))
    }

    /// `n`-fold tensor power; the 0-th power is the unit.
    fn tensor_pow(&self, x: &Self::Obj, n: usize) -> Self::Obj {
        self.tensor_obj(&vec![x.clone(); n])
    }
}

/// A comparison result, possibly at a matrix entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatComparison {
    pub inner: Comparison,
    pub entry: Option<(usize, usize)>,
}

/// Underlying arrow of a module category: a linear map read in the
/// category's orientation.
#[derive(Clone, Debug)]
pub struct OArr(pub LinearMap);

impl OArr {
    pub fn map(&self) -> &LinearMap {
        &self.0
    }
}

/// Free modules and linear maps, read directly or in the opposite category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModCat {
    pub rig: Rig,
    pub orientation: Orientation,
}

impl ModCat {
    pub fn new(rig: Rig, orientation: Orientation) -> ModCat {
        ModCat { rig, orientation }
    }

    pub fn flipped(&self) -> ModCat {
        ModCat { rig: self.rig, orientation: self.orientation.flip() }
    }

    /// Arrow `dom → cod` in reading orientation whose underlying map is `m`.
    pub fn wrap(&self, m: LinearMap) -> OArr {
        OArr(m)
    }

    /// Underlying map of a reading-orientation arrow `src → dst`.
    fn underlying_ends<'a>(&self, src: &'a FreeModule, dst: &'a FreeModule) -> (&'a FreeModule, &'a FreeModule) {
        match self.orientation {
            Orientation::Direct => (src, dst),
            Orientation::Opposite => (dst, src),
        }
    }
}

fn lin(e: crate::linalg::LinalgError) -> ModalityError {
    ModalityError::Linalg(e)
}

impl Category for ModCat {
    type Obj = FreeModule;
    type Arr = OArr;

    fn rig(&self) -> Rig {
        self.rig
    }

    fn obj_key(&self, x: &FreeModule) -> String {
        x.key().to_string()
    }

    fn dom(&self, f: &OArr) -> FreeModule {
        match self.orientation {
            Orientation::Direct => f.0.domain().clone(),
            Orientation::Opposite => f.0.codomain().clone(),
        }
    }

    fn cod(&self, f: &OArr) -> FreeModule {
        match self.orientation {
            Orientation::Direct => f.0.codomain().clone(),
            Orientation::Opposite => f.0.domain().clone(),
        }
    }

    fn unit(&self) -> FreeModule {
        FreeModule::unit(self.rig)
    }

    fn zero_obj(&self) -> FreeModule {
        FreeModule::zero(self.rig)
    }

    fn tensor_obj(&self, xs: &[FreeModule]) -> FreeModule {
        FreeModule::tensor_in(self.rig, xs)
    }

    fn sum_obj(&self, xs: &[FreeModule]) -> FreeModule {
        FreeModule::direct_sum(xs)
    }

    fn id(&self, x: &FreeModule) -> OArr {
        OArr(LinearMap::identity(x))
    }

    fn compose(&self, f: &OArr, g: &OArr) -> Result<OArr, ModalityError> {
        let r = match self.orientation {
            Orientation::Direct => LinearMap::compose(&f.0, &g.0),
            Orientation::Opposite => LinearMap::compose(&g.0, &f.0),
        };
        r.map(OArr).map_err(lin)
    }

    fn tensor(&self, fs: &[OArr]) -> OArr {
        let maps: Vec<LinearMap> = fs.iter().map(|f| f.0.clone()).collect();
        OArr(LinearMap::tensor(&maps, self.rig))
    }

    fn sum(&self, fs: &[OArr], dom: &FreeModule, cod: &FreeModule) -> Result<OArr, ModalityError> {
        let (d, c) = self.underlying_ends(dom, cod);
        let maps: Vec<LinearMap> = fs.iter().map(|f| f.0.clone()).collect();
        LinearMap::sum(&maps, d, c).map(OArr).map_err(lin)
    }

    fn zero(&self, dom: &FreeModule, cod: &FreeModule) -> OArr {
        let (d, c) = self.underlying_ends(dom, cod);
        OArr(LinearMap::zero(d, c))
    }

    fn permute(&self, blocks: &[FreeModule], perm: &[usize]) -> OArr {
        match self.orientation {
            Orientation::Direct => OArr(LinearMap::permutation(blocks, perm, self.rig)),
            Orientation::Opposite => {
                let out: Vec<FreeModule> = perm.iter().map(|&i| blocks[i].clone()).collect();
                let mut inv = vec![0; perm.len()];
                for (i, &p) in perm.iter().enumerate() {
                    inv[p] = i;
                }
                OArr(LinearMap::permutation(&out, &inv, self.rig))
            }
        }
    }

    fn inj(&self, parts: &[FreeModule], i: usize) -> OArr {
        let s = FreeModule::direct_sum(parts);
        match self.orientation {
            Orientation::Direct => OArr(LinearMap::injection(&s, i)),
            Orientation::Opposite => OArr(LinearMap::projection(&s, i)),
        }
    }

    fn proj(&self, parts: &[FreeModule], i: usize) -> OArr {
        let s = FreeModule::direct_sum(parts);
        match self.orientation {
            Orientation::Direct => OArr(LinearMap::projection(&s, i)),
            Orientation::Opposite => OArr(LinearMap::injection(&s, i)),
        }
    }

    fn compare_at(&self, f: &OArr, g: &OArr, grade: usize) -> Result<CatComparison, ModalityError> {
        let inner = compare_maps_at(&f.0, &g.0, grade).map_err(lin)?;
        Ok(CatComparison { inner, entry: None })
    }

    fn compare_limit(&self, f: &OArr) -> usize {
        f.0.domain().max_grade()
    }

    fn flipped_reading(&self) -> Option<ModCat> {
        Some(self.flipped())
    }

    fn random_arrow(&self, rng: &mut ChaCha8Rng, dom: &FreeModule, cod: &FreeModule) -> OArr {
        let (d, c) = self.underlying_ends(dom, cod);
        OArr(random_map(rng, d, c))
    }
}

/// Sparse random map with entries in {-2..2}, or {0..2} without negatives.
pub fn random_map(rng: &mut ChaCha8Rng, d: &FreeModule, c: &FreeModule) -> LinearMap {
    let rig = c.rig();
    let lo: i64 = if rig.has_negatives() { -2 } else { 0 };
    let mut images = HashMap::new();
    let cb = c.basis();
    for l in d.basis().iter() {
        let mut v = Vector::zero(rig);
        for o in cb.iter() {
            if rng.gen_bool(0.5) {
                let k = rng.gen_range(lo..=2);
                v.add_term(o.clone(), rig.from_i64(k).expect("in range"));
            }
        }
        images.insert(l.clone(), v);
    }
    LinearMap::from_images(d, c, images)
}

/// Result of comparing two parallel arrows grade by grade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graded {
    /// Equal on every label of the compared range.
    Agree,
    /// First mismatch, in grade then canonical order.
    Mismatch { witness: crate::linalg::Witness, entry: Option<(usize, usize)> },
    /// Equal through the given grade; the next grade leaves the truncation.
    Limited(Option<usize>),
}

/// Compares `f` and `g` on grades `0..=max_grade`, stopping at the first
/// mismatch or the first grade that runs past the truncation. Returns the
/// outcome and the number of labels compared.
pub fn compare_graded<C: Category>(
    cat: &C,
    f: &C::Arr,
    g: &C::Arr,
    max_grade: Option<usize>,
) -> Result<(Graded, usize), ModalityError> {
    let limit = cat.compare_limit(f);
    let top = max_grade.map_or(limit, |m| m.min(limit));
    let mut coverage = 0;
    for grade in 0..=top {
        let c = cat.compare_at(f, g, grade)?;
        coverage += c.inner.checked;
        if let Some(witness) = c.inner.mismatch {
            return Ok((Graded::Mismatch { witness, entry: c.entry }, coverage));
        }
        if c.inner.frontier_hit.is_some() {
            return Ok((Graded::Limited(grade.checked_sub(1)), coverage));
        }
    }
    Ok((Graded::Agree, coverage))
}
