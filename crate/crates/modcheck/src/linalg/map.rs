use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::Serialize;

use super::label::BasisLabel;
use super::module::{FreeModule, ModuleKind};
use super::vector::Vector;
use crate::scalars::{Rig, RigElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("object mismatch in {context}: expected {expected}, found {found}")]
    ObjectMismatch { context: String, expected: String, found: String },
    #[error("truncation frontier exceeded")]
    FrontierExceeded { label: String, module: String },
    #[error("label {label} is not a basis label of {module}")]
    NotInDomain { label: String, module: String },
    #[error("image label {label} has the wrong shape for {module}")]
    MalformedImage { label: String, module: String },
    #[error("rig mismatch")]
    RigMismatch,
    #[error("invalid candidate: {0}")]
    InvalidCandidate(String),
}

impl LinalgError {
    pub fn mismatch(context: &str, expected: &FreeModule, found: &FreeModule) -> LinalgError {
        LinalgError::ObjectMismatch {
            context: context.to_string(),
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub fn is_frontier(&self) -> bool {
        matches!(self, LinalgError::FrontierExceeded { .. })
    }
}

pub type ImageFn = dyn Fn(&BasisLabel) -> Result<Vector, LinalgError> + Send + Sync;

enum Body {
    Identity,
    Zero,
    Func(Box<ImageFn>),
}

struct MapInner {
    domain: FreeModule,
    codomain: FreeModule,
    frontier: Option<usize>,
    shift: usize,
    body: Body,
    cache: RwLock<HashMap<BasisLabel, Arc<Vector>>>,
}

/// An exact linear map between free modules, specified on basis labels.
///
/// Images are computed lazily and memoized. Every computed image is checked
/// against the truncated codomain: a term that falls outside it raises
/// [`LinalgError::FrontierExceeded`] instead of being dropped.
#[derive(Clone)]
pub struct LinearMap(Arc<MapInner>);

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap({} → {})", self.0.domain, self.0.codomain)
    }
}

fn opt_min(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl LinearMap {
    /// A map given by its action on basis labels. `shift` bounds how much the
    /// map can raise the grade; the static frontier follows from the
    /// codomain's completeness.
    pub fn from_fn(
        domain: FreeModule,
        codomain: FreeModule,
        shift: usize,
        f: impl Fn(&BasisLabel) -> Result<Vector, LinalgError> + Send + Sync + 'static,
    ) -> LinearMap {
        let frontier = codomain.complete_grade().map(|c| c.saturating_sub(shift));
        LinearMap::raw(domain, codomain, frontier, shift, Body::Func(Box::new(f)))
    }

    fn raw(domain: FreeModule, codomain: FreeModule, frontier: Option<usize>, shift: usize, body: Body) -> LinearMap {
        LinearMap(Arc::new(MapInner {
            domain,
            codomain,
            frontier,
            shift,
            body,
            cache: RwLock::new(HashMap::new()),
        }))
    }

    pub fn identity(m: &FreeModule) -> LinearMap {
        LinearMap::raw(m.clone(), m.clone(), None, 0, Body::Identity)
    }

    pub fn zero(domain: &FreeModule, codomain: &FreeModule) -> LinearMap {
        LinearMap::raw(domain.clone(), codomain.clone(), None, 0, Body::Zero)
    }

    /// A map given by an explicit table of images; missing labels map to 0.
    pub fn from_images(domain: &FreeModule, codomain: &FreeModule, images: HashMap<BasisLabel, Vector>) -> LinearMap {
        let rig = codomain.rig();
        let shift = images
            .iter()
            .flat_map(|(l, v)| {
                let g = domain.grade(l).unwrap_or(0);
                v.labels().map(move |o| codomain.grade(o).unwrap_or(0).saturating_sub(g)).collect::<Vec<_>>()
            })
            .max()
            .unwrap_or(0);
        LinearMap::from_fn(domain.clone(), codomain.clone(), shift, move |l| {
            Ok(images.get(l).cloned().unwrap_or_else(|| Vector::zero(rig)))
        })
    }

    pub fn domain(&self) -> &FreeModule {
        &self.0.domain
    }

    pub fn codomain(&self) -> &FreeModule {
        &self.0.codomain
    }

    pub fn rig(&self) -> Rig {
        self.0.codomain.rig()
    }

    /// Largest input grade for which images are guaranteed to be exact.
    pub fn frontier(&self) -> Option<usize> {
        self.0.frontier
    }

    pub fn shift(&self) -> usize {
        self.0.shift
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.0.body, Body::Identity)
    }

    pub fn is_zero_map(&self) -> bool {
        matches!(self.0.body, Body::Zero)
    }

    /// Image of a domain basis label.
    pub fn apply(&self, label: &BasisLabel) -> Result<Arc<Vector>, LinalgError> {
        if !self.0.domain.contains(label) {
            return Err(LinalgError::NotInDomain {
                label: label.to_string(),
                module: self.0.domain.to_string(),
            });
        }
        self.image(label)
    }

    pub fn apply_vec(&self, v: &Vector) -> Result<Vector, LinalgError> {
        let mut out = Vector::zero(self.rig());
        for (l, c) in v.iter() {
            out.add_scaled(c, &*self.apply(l)?);
        }
        Ok(out)
    }

    /// Image of a label already known to lie in the domain.
    pub(crate) fn image(&self, label: &BasisLabel) -> Result<Arc<Vector>, LinalgError> {
        match &self.0.body {
            Body::Identity => Ok(Arc::new(Vector::basis(self.rig(), label.clone()))),
            Body::Zero => Ok(Arc::new(Vector::zero(self.rig()))),
            Body::Func(f) => {
                if let Some(v) = self.0.cache.read().unwrap().get(label) {
                    return Ok(v.clone());
                }
                let v = f(label)?;
                for l in v.labels() {
                    if self.0.codomain.grade(l).is_none() {
                        return Err(LinalgError::MalformedImage {
                            label: l.to_string(),
                            module: self.0.codomain.to_string(),
                        });
                    }
                    if !self.0.codomain.contains(l) {
                        return Err(LinalgError::FrontierExceeded {
                            label: l.to_string(),
                            module: self.0.codomain.to_string(),
                        });
                    }
                }
                let v = Arc::new(v);
                self.0.cache.write().unwrap().entry(label.clone()).or_insert_with(|| v.clone());
                Ok(v)
            }
        }
    }

    /// Diagrammatic composite: first `f`, then `g`.
    pub fn compose(f: &LinearMap, g: &LinearMap) -> Result<LinearMap, LinalgError> {
        if f.codomain() != g.domain() {
            return Err(LinalgError::mismatch("compose", f.codomain(), g.domain()));
        }
        if f.is_identity() {
            return Ok(g.clone());
        }
        if g.is_identity() {
            return Ok(f.clone());
        }
        if f.is_zero_map() || g.is_zero_map() {
            return Ok(LinearMap::zero(f.domain(), g.codomain()));
        }
        let frontier = opt_min(f.frontier(), g.frontier().map(|x| x.saturating_sub(f.shift())));
        let rig = g.rig();
        let (f2, g2) = (f.clone(), g.clone());
        let body = move |l: &BasisLabel| {
            let v = f2.image(l)?;
            let mut out = Vector::zero(rig);
            for (m, c) in v.iter() {
                out.add_scaled(c, &*g2.image(m)?);
            }
            Ok(out)
        };
        Ok(LinearMap::raw(
            f.domain().clone(),
            g.codomain().clone(),
            frontier,
            f.shift() + g.shift(),
            Body::Func(Box::new(body)),
        ))
    }

    /// Composite of a nonempty chain in diagrammatic order.
    pub fn compose_all(maps: &[LinearMap]) -> Result<LinearMap, LinalgError> {
        let mut it = maps.iter();
        let mut acc = it.next().expect("nonempty chain").clone();
        for m in it {
            acc = LinearMap::compose(&acc, m)?;
        }
        Ok(acc)
    }

    /// Tensor product of maps, acting factorwise on strict tensor labels.
    pub fn tensor(maps: &[LinearMap], rig: Rig) -> LinearMap {
        let doms: Vec<FreeModule> = maps.iter().map(|m| m.domain().clone()).collect();
        let cods: Vec<FreeModule> = maps.iter().map(|m| m.codomain().clone()).collect();
        let domain = FreeModule::tensor_in(rig, &doms);
        let codomain = FreeModule::tensor_in(rig, &cods);
        if maps.len() == 1 {
            return maps[0].clone();
        }
        if maps.iter().all(|m| m.is_identity()) {
            return LinearMap::identity(&domain);
        }
        if maps.iter().any(|m| m.is_zero_map()) {
            return LinearMap::zero(&domain, &codomain);
        }
        let frontier = maps.iter().fold(None, |acc, m| opt_min(acc, m.frontier()));
        let shift = maps.iter().map(|m| m.shift()).sum();
        let counts: Vec<usize> = doms.iter().map(|d| d.factor_count()).collect();
        let total: usize = counts.iter().sum();
        let ms: Vec<LinearMap> = maps.to_vec();
        let body = move |l: &BasisLabel| {
            let parts = l.split(total).expect("tensor label shape");
            let mut acc: Vec<(Vec<BasisLabel>, RigElement)> = vec![(Vec::new(), rig.one())];
            let mut pos = 0;
            for (m, &k) in ms.iter().zip(&counts) {
                let input = BasisLabel::join(parts[pos..pos + k].to_vec());
                pos += k;
                let img = m.image(&input)?;
                if img.is_zero() {
                    return Ok(Vector::zero(rig));
                }
                let ck = m.codomain().factor_count();
                let mut next = Vec::with_capacity(acc.len() * img.len());
                for (prefix, c) in &acc {
                    for (o, d) in img.iter() {
                        let mut p = prefix.clone();
                        p.extend(o.split(ck).expect("codomain label shape"));
                        next.push((p, c.mul_same(d)));
                    }
                }
                acc = next;
            }
            Ok(Vector::from_terms(rig, acc.into_iter().map(|(p, c)| (BasisLabel::join(p), c))))
        };
        LinearMap::raw(domain, codomain, frontier, shift, Body::Func(Box::new(body)))
    }

    /// Pointwise sum of parallel maps.
    pub fn sum(maps: &[LinearMap], domain: &FreeModule, codomain: &FreeModule) -> Result<LinearMap, LinalgError> {
        for m in maps {
            if m.domain() != domain {
                return Err(LinalgError::mismatch("sum domain", domain, m.domain()));
            }
            if m.codomain() != codomain {
                return Err(LinalgError::mismatch("sum codomain", codomain, m.codomain()));
            }
        }
        let live: Vec<LinearMap> = maps.iter().filter(|m| !m.is_zero_map()).cloned().collect();
        match live.len() {
            0 => return Ok(LinearMap::zero(domain, codomain)),
            1 => return Ok(live[0].clone()),
            _ => {}
        }
        let frontier = live.iter().fold(None, |acc, m| opt_min(acc, m.frontier()));
        let shift = live.iter().map(|m| m.shift()).max().unwrap_or(0);
        let rig = codomain.rig();
        let body = move |l: &BasisLabel| {
            let mut out = Vector::zero(rig);
            for m in &live {
                out.add_vec(&*m.image(l)?);
            }
            Ok(out)
        };
        Ok(LinearMap::raw(domain.clone(), codomain.clone(), frontier, shift, Body::Func(Box::new(body))))
    }

    pub fn add(f: &LinearMap, g: &LinearMap) -> Result<LinearMap, LinalgError> {
        LinearMap::sum(&[f.clone(), g.clone()], f.domain(), f.codomain())
    }

    pub fn scale(c: &RigElement, f: &LinearMap) -> LinearMap {
        let (c, f2) = (c.clone(), f.clone());
        let frontier = f.frontier();
        LinearMap::raw(
            f.domain().clone(),
            f.codomain().clone(),
            frontier,
            f.shift(),
            Body::Func(Box::new(move |l| Ok(f2.image(l)?.scaled(&c)))),
        )
    }

    /// Reorders tensor blocks: block `perm[i]` of the input becomes block `i`
    /// of the output.
    pub fn permutation(blocks: &[FreeModule], perm: &[usize], rig: Rig) -> LinearMap {
        assert_eq!(blocks.len(), perm.len());
        let domain = FreeModule::tensor_in(rig, blocks);
        let out_blocks: Vec<FreeModule> = perm.iter().map(|&i| blocks[i].clone()).collect();
        let codomain = FreeModule::tensor_in(rig, &out_blocks);
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            return LinearMap::identity(&domain);
        }
        let counts: Vec<usize> = blocks.iter().map(|b| b.factor_count()).collect();
        let total: usize = counts.iter().sum();
        let perm = perm.to_vec();
        LinearMap::raw(
            domain,
            codomain,
            None,
            0,
            Body::Func(Box::new(move |l| {
                let parts = l.split(total).expect("tensor label shape");
                let mut groups = Vec::with_capacity(counts.len());
                let mut pos = 0;
                for &k in &counts {
                    groups.push(&parts[pos..pos + k]);
                    pos += k;
                }
                let mut out = Vec::with_capacity(total);
                for &i in &perm {
                    out.extend_from_slice(groups[i]);
                }
                Ok(Vector::basis(rig, BasisLabel::join(out)))
            })),
        )
    }

    pub fn symmetry(a: &FreeModule, b: &FreeModule) -> LinearMap {
        LinearMap::permutation(&[a.clone(), b.clone()], &[1, 0], a.rig())
    }

    /// Injection of summand `i` into a direct sum or copies module.
    pub fn injection(sum: &FreeModule, i: usize) -> LinearMap {
        let part = summand(sum, i);
        let rig = sum.rig();
        let tag = i as u32;
        let shift = if matches!(sum.kind(), ModuleKind::Copies { .. }) { i } else { 0 };
        LinearMap::raw(
            part,
            sum.clone(),
            None,
            shift,
            Body::Func(Box::new(move |l| Ok(Vector::basis(rig, BasisLabel::copy(tag, l.clone()))))),
        )
    }

    pub fn projection(sum: &FreeModule, i: usize) -> LinearMap {
        let part = summand(sum, i);
        let rig = sum.rig();
        let tag = i as u32;
        LinearMap::raw(
            sum.clone(),
            part,
            None,
            0,
            Body::Func(Box::new(move |l| match l.as_copy() {
                Some((t, x)) if t == tag => Ok(Vector::basis(rig, x.clone())),
                _ => Ok(Vector::zero(rig)),
            })),
        )
    }
}

fn summand(sum: &FreeModule, i: usize) -> FreeModule {
    match sum.kind() {
        ModuleKind::DirectSum(fs) => fs[i].clone(),
        ModuleKind::Copies { inner, count } => {
            assert!((i as u32) < *count, "copy index out of range");
            inner.clone()
        }
        _ => panic!("{sum} is not a direct sum"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub grade: usize,
    pub lhs: Vector,
    pub rhs: Vector,
}

/// Outcome of comparing two parallel maps on all basis labels up to a grade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub checked: usize,
    pub mismatch: Option<Witness>,
    /// Smallest grade at which some image could not be computed exactly.
    pub frontier_hit: Option<usize>,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.mismatch.is_none() && self.frontier_hit.is_none()
    }
}

/// Compares `f` and `g` on every domain label of grade at most `bound`.
///
/// Labels whose images leave the truncated codomain are skipped and recorded
/// in `frontier_hit`; every image that is computed is exact, so a mismatch is
/// always genuine.
pub fn compare_maps(f: &LinearMap, g: &LinearMap, bound: usize) -> Result<Comparison, LinalgError> {
    check_parallel(f, g)?;
    let basis = f.domain().basis_up_to(bound);
    compare_on(f, g, &basis)
}

/// Like [`compare_maps`], restricted to domain labels of grade exactly `grade`.
pub fn compare_maps_at(f: &LinearMap, g: &LinearMap, grade: usize) -> Result<Comparison, LinalgError> {
    check_parallel(f, g)?;
    let dom = f.domain();
    let labels: Vec<BasisLabel> = dom
        .basis_up_to(grade)
        .iter()
        .filter(|l| dom.grade(l) == Some(grade))
        .cloned()
        .collect();
    compare_on(f, g, &labels)
}

fn check_parallel(f: &LinearMap, g: &LinearMap) -> Result<(), LinalgError> {
    if f.domain() != g.domain() {
        return Err(LinalgError::mismatch("comparison domain", f.domain(), g.domain()));
    }
    if f.codomain() != g.codomain() {
        return Err(LinalgError::mismatch("comparison codomain", f.codomain(), g.codomain()));
    }
    Ok(())
}

fn compare_on(f: &LinearMap, g: &LinearMap, basis: &[BasisLabel]) -> Result<Comparison, LinalgError> {
    let dom = f.domain().clone();
    let results: Vec<Result<Option<Witness>, LinalgError>> = basis
        .par_iter()
        .map(|l| {
            let a = f.image(l)?;
            let b = g.image(l)?;
            if a == b {
                Ok(None)
            } else {
                Ok(Some(Witness {
                    label: l.to_string(),
                    grade: dom.grade(l).unwrap_or(0),
                    lhs: (*a).clone(),
                    rhs: (*b).clone(),
                }))
            }
        })
        .collect();
    let mut out = Comparison { checked: 0, mismatch: None, frontier_hit: None };
    for (l, r) in basis.iter().zip(results) {
        match r {
            Ok(None) => out.checked += 1,
            Ok(Some(w)) => {
                out.checked += 1;
                if out.mismatch.is_none() {
                    out.mismatch = Some(w);
                }
            }
            Err(e) if e.is_frontier() => {
                let g = dom.grade(l).unwrap_or(0);
                out.frontier_hit = Some(out.frontier_hit.map_or(g, |h: usize| h.min(g)));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Exhaustive equality on labels of grade at most `degree_bound`. Errors if
/// some image in that range leaves the truncation. Returns the first
/// disagreeing label in canonical order, if any.
pub fn maps_equal(f: &LinearMap, g: &LinearMap, degree_bound: usize) -> Result<Option<Witness>, LinalgError> {
    let c = compare_maps(f, g, degree_bound)?;
    if let Some(h) = c.frontier_hit {
        return Err(LinalgError::FrontierExceeded {
            label: format!("grade {h}"),
            module: f.codomain().to_string(),
        });
    }
    Ok(c.mismatch)
}
