//! Model registry, arrow-expression language and evaluation.

mod category;
mod expr;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use category::{compare_graded, random_map, CatComparison, Category, Graded, ModCat, OArr, Orientation};
pub use expr::{ArrowExpr, ObjExpr, PROBE_NAMES};

use crate::linalg::{LinalgError, LinearMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModalityError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("unregistered symbol {0}")]
    Unregistered(String),
    #[error("type error at {node}: {msg}")]
    Type { node: String, msg: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("{0}")]
    Unsupported(String),
}

impl ModalityError {
    pub fn is_frontier(&self) -> bool {
        matches!(self, ModalityError::Linalg(e) if e.is_frontier())
    }
}

pub type Family<C> =
    Arc<dyn Fn(&[<C as Category>::Obj]) -> Result<<C as Category>::Arr, ModalityError> + Send + Sync>;
pub type ObjFn<C> = Arc<dyn Fn(&<C as Category>::Obj) -> Result<<C as Category>::Obj, ModalityError> + Send + Sync>;
pub type LiftFn<C> = Arc<dyn Fn(&<C as Category>::Arr) -> Result<<C as Category>::Arr, ModalityError> + Send + Sync>;

/// One model: a functor `!`, its action on arrows, and a registry of
/// structural families, all read in the category's orientation.
#[derive(Clone)]
pub struct Model<C: Category> {
    pub name: String,
    pub cat: C,
    bang: ObjFn<C>,
    lift: LiftFn<C>,
    families: BTreeMap<String, Family<C>>,
    functors: BTreeMap<String, ObjFn<C>>,
    base: BTreeMap<String, C::Obj>,
    memo: Arc<Mutex<HashMap<(String, String), C::Arr>>>,
}

impl<C: Category> Model<C> {
    pub fn new(name: &str, cat: C, bang: ObjFn<C>, lift: LiftFn<C>) -> Model<C> {
        Model {
            name: name.to_string(),
            cat,
            bang,
            lift,
            families: BTreeMap::new(),
            functors: BTreeMap::new(),
            base: BTreeMap::new(),
            memo: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    /// A copy under a new name with its own memo table.
    pub fn derive(&self, name: &str) -> Model<C> {
        Model {
            name: name.to_string(),
            memo: Arc::new(Mutex::new(HashMap::new())),
            ..self.clone()
        }
    }

    pub fn register(&mut self, symbol: &str, family: Family<C>) {
        self.families.insert(symbol.to_string(), family);
        self.memo.lock().unwrap().retain(|(s, _), _| s != symbol);
    }

    pub fn unregister(&mut self, symbol: &str) {
        self.families.remove(symbol);
        self.memo.lock().unwrap().retain(|(s, _), _| s != symbol);
    }

    pub fn register_functor(&mut self, name: &str, f: ObjFn<C>) {
        self.functors.insert(name.to_string(), f);
    }

    pub fn set_base(&mut self, name: &str, obj: C::Obj) {
        self.base.insert(name.to_string(), obj);
    }

    pub fn base_objects(&self) -> &BTreeMap<String, C::Obj> {
        &self.base
    }

    pub fn base(&self, name: &str) -> Result<C::Obj, ModalityError> {
        self.base.get(name).cloned().ok_or_else(|| ModalityError::UnknownObject(name.to_string()))
    }

    /// Same registry and memo table over another category value. Families
    /// must not depend on the reading direction.
    pub fn with_category(&self, cat: C) -> Model<C> {
        Model { cat, ..self.clone() }
    }

    pub fn has(&self, symbol: &str) -> bool {
        self.families.contains_key(symbol)
    }

    pub fn has_functor(&self, name: &str) -> bool {
        self.functors.contains_key(name)
    }

    /// Registered structural symbols, sorted.
    pub fn symbols(&self) -> Vec<String> {
        self.families.keys().cloned().collect()
    }

    pub fn bang(&self, x: &C::Obj) -> Result<C::Obj, ModalityError> {
        (self.bang)(x)
    }

    pub fn lift(&self, f: &C::Arr) -> Result<C::Arr, ModalityError> {
        (self.lift)(f)
    }

    pub fn family(&self, symbol: &str) -> Option<Family<C>> {
        self.families.get(symbol).cloned()
    }

    /// Structural map `symbol` at the given objects, memoized.
    pub fn structural(&self, symbol: &str, objs: &[C::Obj]) -> Result<C::Arr, ModalityError> {
        let key = (
            symbol.to_string(),
            objs.iter().map(|o| self.cat.obj_key(o)).collect::<Vec<_>>().join("|"),
        );
        if let Some(a) = self.memo.lock().unwrap().get(&key) {
            return Ok(a.clone());
        }
        let fam = self
            .families
            .get(symbol)
            .ok_or_else(|| ModalityError::Unregistered(symbol.to_string()))?;
        let a = fam(objs)?;
        self.memo.lock().unwrap().entry(key).or_insert_with(|| a.clone());
        Ok(a)
    }

    /// Shorthand for single-object families.
    pub fn at(&self, symbol: &str, x: &C::Obj) -> Result<C::Arr, ModalityError> {
        self.structural(symbol, std::slice::from_ref(x))
    }

    pub fn functor(&self, name: &str, x: &C::Obj) -> Result<C::Obj, ModalityError> {
        let f = self
            .functors
            .get(name)
            .ok_or_else(|| ModalityError::Unregistered(format!("object constructor {name}")))?;
        f(x)
    }
}

impl Model<ModCat> {
    /// Same registry read in the other orientation.
    pub fn opposite_wrap(&self) -> Model<ModCat> {
        let mut m = self.with_category(self.cat.flipped());
        m.name = self.name.clone();
        m
    }

    /// Registers a family given by underlying linear maps.
    pub fn register_linear(
        &mut self,
        symbol: &str,
        f: impl Fn(&[crate::linalg::FreeModule]) -> Result<LinearMap, ModalityError> + Send + Sync + 'static,
    ) {
        self.register(symbol, Arc::new(move |objs| f(objs).map(OArr)));
    }
}

/// Bindings for evaluating an expression.
pub struct Env<C: Category> {
    pub objs: BTreeMap<String, C::Obj>,
    pub probes: HashMap<String, C::Arr>,
}

impl<C: Category> Env<C> {
    pub fn from_model(model: &Model<C>) -> Env<C> {
        Env { objs: model.base_objects().clone(), probes: HashMap::new() }
    }
}

pub fn resolve_obj<C: Category>(o: &ObjExpr, model: &Model<C>, env: &Env<C>) -> Result<C::Obj, ModalityError> {
    let cat = &model.cat;
    Ok(match o {
        ObjExpr::Var(v) => env.objs.get(v).cloned().ok_or_else(|| ModalityError::UnknownObject(v.clone()))?,
        ObjExpr::Unit => cat.unit(),
        ObjExpr::Zero => cat.zero_obj(),
        ObjExpr::Bang(x) => model.bang(&resolve_obj(x, model, env)?)?,
        ObjExpr::Tensor(xs) => {
            let parts = xs.iter().map(|x| resolve_obj(x, model, env)).collect::<Result<Vec<_>, _>>()?;
            cat.tensor_obj(&parts)
        }
        ObjExpr::Sum(xs) => {
            let parts = xs.iter().map(|x| resolve_obj(x, model, env)).collect::<Result<Vec<_>, _>>()?;
            cat.sum_obj(&parts)
        }
        ObjExpr::Functor(n, x) => model.functor(n, &resolve_obj(x, model, env)?)?,
    })
}

fn type_err(node: &ArrowExpr, msg: String) -> ModalityError {
    ModalityError::Type { node: node.to_string(), msg }
}

/// Evaluates an expression to an arrow, checking types at every node.
pub fn evaluate<C: Category>(e: &ArrowExpr, model: &Model<C>, env: &Env<C>) -> Result<C::Arr, ModalityError> {
    let cat = &model.cat;
    let obj = |o: &ObjExpr| resolve_obj(o, model, env);
    match e {
        ArrowExpr::Struct { name, objs } => {
            let os = objs.iter().map(obj).collect::<Result<Vec<_>, _>>()?;
            model.structural(name, &os)
        }
        ArrowExpr::Id(o) => Ok(cat.id(&obj(o)?)),
        ArrowExpr::Sym(a, b) => Ok(cat.sym(&obj(a)?, &obj(b)?)),
        ArrowExpr::Lift(a) => model.lift(&evaluate(a, model, env)?),
        ArrowExpr::Probe { name, dom, cod } => {
            let p = env
                .probes
                .get(name)
                .ok_or_else(|| ModalityError::Unregistered(format!("probe {name}")))?;
            let (d, c) = (obj(dom)?, obj(cod)?);
            if cat.dom(p) != d || cat.cod(p) != c {
                return Err(type_err(e, format!("probe bound at {} → {}", cat.dom(p), cat.cod(p))));
            }
            Ok(p.clone())
        }
        ArrowExpr::Compose(xs) => {
            let mut acc = evaluate(&xs[0], model, env)?;
            for (i, x) in xs.iter().enumerate().skip(1) {
                let next = evaluate(x, model, env)?;
                let (c, d) = (cat.cod(&acc), cat.dom(&next));
                if c != d {
                    return Err(type_err(e, format!("link {i}: codomain {c} does not match domain {d}")));
                }
                acc = cat.compose(&acc, &next)?;
            }
            Ok(acc)
        }
        ArrowExpr::Tensor(xs) => {
            let parts = xs.iter().map(|x| evaluate(x, model, env)).collect::<Result<Vec<_>, _>>()?;
            Ok(cat.tensor(&parts))
        }
        ArrowExpr::Sum(xs) => {
            let parts = xs.iter().map(|x| evaluate(x, model, env)).collect::<Result<Vec<_>, _>>()?;
            let (d, c) = (cat.dom(&parts[0]), cat.cod(&parts[0]));
            for (i, p) in parts.iter().enumerate() {
                if cat.dom(p) != d || cat.cod(p) != c {
                    return Err(type_err(e, format!("summand {i} has type {} → {}", cat.dom(p), cat.cod(p))));
                }
            }
            cat.sum(&parts, &d, &c)
        }
        ArrowExpr::Zero(a, b) => Ok(cat.zero(&obj(a)?, &obj(b)?)),
        ArrowExpr::Inj { index, left, right } => Ok(cat.inj(&[obj(left)?, obj(right)?], *index)),
        ArrowExpr::Proj { index, left, right } => Ok(cat.proj(&[obj(left)?, obj(right)?], *index)),
    }
}

/// Resolved domain and codomain of an expression.
pub fn typecheck<C: Category>(
    e: &ArrowExpr,
    model: &Model<C>,
    env: &Env<C>,
) -> Result<(C::Obj, C::Obj), ModalityError> {
    for s in e.symbols() {
        if !model.has(&s) {
            return Err(ModalityError::Unregistered(s));
        }
    }
    let a = evaluate(e, model, env)?;
    Ok((model.cat.dom(&a), model.cat.cod(&a)))
}

/// Number of seeded random arrows in every probe pool.
pub const RANDOM_PROBES: usize = 8;

fn fnv(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Probe pool for arrows `dom → cod`: seeded random arrows, then the
/// identity when the types agree, then zero.
pub fn probe_pool<C: Category>(cat: &C, seed: u64, name: &str, dom: &C::Obj, cod: &C::Obj) -> Vec<(String, C::Arr)> {
    let mut out = Vec::new();
    let tag = format!("{name}|{}|{}", cat.obj_key(dom), cat.obj_key(cod));
    for i in 0..RANDOM_PROBES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv(&format!("{tag}|{i}")));
        out.push((format!("{name}#{i}"), cat.random_arrow(&mut rng, dom, cod)));
    }
    if dom == cod {
        out.push((format!("{name}=id"), cat.id(dom)));
    }
    out.push((format!("{name}=0"), cat.zero(dom, cod)));
    out
}

#[cfg(test)]
mod tests;
