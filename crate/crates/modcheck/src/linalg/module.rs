use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use super::label::BasisLabel;
use crate::scalars::Rig;

#[derive(Debug, Clone)]
pub enum ModuleKind {
    Zero,
    Unit,
    Base { id: u32, name: String, dim: u32 },
    /// Strict tensor product of at least two non-unit factors.
    Tensor(Vec<FreeModule>),
    DirectSum(Vec<FreeModule>),
    /// `⊕_{n < count} inner`; a copy tag adds to the grade.
    Copies { inner: FreeModule, count: u32 },
    /// Symmetric algebra truncated at total grade `cap`.
    Sym { inner: FreeModule, cap: usize },
    /// Shuffle (tensor) algebra truncated at word length `cap`.
    Sh { inner: FreeModule, cap: usize },
}

struct ModuleInner {
    rig: Rig,
    kind: ModuleKind,
    key: String,
    display: String,
    bases: Mutex<HashMap<usize, Arc<Vec<BasisLabel>>>>,
}

/// A finitely generated free module with a structured, graded basis.
#[derive(Clone)]
pub struct FreeModule(Arc<ModuleInner>);

impl PartialEq for FreeModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.rig == other.0.rig && self.0.key == other.0.key)
    }
}
impl Eq for FreeModule {}

impl Hash for FreeModule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.rig.hash(state);
        self.0.key.hash(state);
    }
}

impl fmt::Debug for FreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.key)
    }
}

impl fmt::Display for FreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.display)
    }
}

fn paren(m: &FreeModule) -> String {
    match m.kind() {
        ModuleKind::Tensor(_) | ModuleKind::DirectSum(_) => format!("({})", m.0.display),
        _ => m.0.display.clone(),
    }
}

impl FreeModule {
    fn build(rig: Rig, kind: ModuleKind) -> FreeModule {
        let (key, display) = match &kind {
            ModuleKind::Zero => ("0".to_string(), "0".to_string()),
            ModuleKind::Unit => ("K".to_string(), "K".to_string()),
            ModuleKind::Base { id, name, dim } => (format!("{name}#{id}:{dim}"), name.clone()),
            ModuleKind::Tensor(fs) => (
                format!("T[{}]", fs.iter().map(|f| f.0.key.as_str()).collect::<Vec<_>>().join(",")),
                fs.iter().map(paren).collect::<Vec<_>>().join("⊗"),
            ),
            ModuleKind::DirectSum(fs) => (
                format!("S[{}]", fs.iter().map(|f| f.0.key.as_str()).collect::<Vec<_>>().join(",")),
                fs.iter().map(paren).collect::<Vec<_>>().join("⊕"),
            ),
            ModuleKind::Copies { inner, count } => (
                format!("C{count}[{}]", inner.0.key),
                format!("⊕{count}{}", paren(inner)),
            ),
            ModuleKind::Sym { inner, cap } => (
                format!("Sym{cap}[{}]", inner.0.key),
                format!("Sym≤{cap}({})", inner.0.display),
            ),
            ModuleKind::Sh { inner, cap } => (
                format!("Sh{cap}[{}]", inner.0.key),
                format!("Sh≤{cap}({})", inner.0.display),
            ),
        };
        FreeModule(Arc::new(ModuleInner {
            rig,
            kind,
            key,
            display,
            bases: Mutex::new(HashMap::new()),
        }))
    }

    pub fn zero(rig: Rig) -> FreeModule {
        FreeModule::build(rig, ModuleKind::Zero)
    }

    pub fn unit(rig: Rig) -> FreeModule {
        FreeModule::build(rig, ModuleKind::Unit)
    }

    pub fn base(rig: Rig, id: u32, name: &str, dim: u32) -> FreeModule {
        FreeModule::build(rig, ModuleKind::Base { id, name: name.to_string(), dim })
    }

    /// Strict tensor product: nested tensors are flattened and unit factors dropped.
    pub fn tensor(factors: &[FreeModule]) -> FreeModule {
        let rig = factors.first().map(|f| f.rig());
        let mut flat = Vec::new();
        for f in factors {
            flat.extend(f.factors());
        }
        match flat.len() {
            0 => FreeModule::unit(rig.expect("tensor of no factors needs a rig; use unit()")),
            1 => flat.pop().unwrap(),
            _ => FreeModule::build(flat[0].rig(), ModuleKind::Tensor(flat)),
        }
    }

    pub fn tensor_in(rig: Rig, factors: &[FreeModule]) -> FreeModule {
        if factors.is_empty() {
            FreeModule::unit(rig)
        } else {
            FreeModule::tensor(factors)
        }
    }

    pub fn direct_sum(parts: &[FreeModule]) -> FreeModule {
        let rig = parts[0].rig();
        FreeModule::build(rig, ModuleKind::DirectSum(parts.to_vec()))
    }

    pub fn copies(inner: &FreeModule, count: u32) -> FreeModule {
        FreeModule::build(inner.rig(), ModuleKind::Copies { inner: inner.clone(), count })
    }

    pub fn sym(inner: &FreeModule, cap: usize) -> FreeModule {
        FreeModule::build(inner.rig(), ModuleKind::Sym { inner: inner.clone(), cap })
    }

    pub fn sh(inner: &FreeModule, cap: usize) -> FreeModule {
        FreeModule::build(inner.rig(), ModuleKind::Sh { inner: inner.clone(), cap })
    }

    pub fn rig(&self) -> Rig {
        self.0.rig
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.0.kind
    }

    pub fn key(&self) -> &str {
        &self.0.key
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.0.kind, ModuleKind::Unit)
    }

    /// Tensor factors; the unit has none.
    pub fn factors(&self) -> Vec<FreeModule> {
        match &self.0.kind {
            ModuleKind::Unit => Vec::new(),
            ModuleKind::Tensor(fs) => fs.clone(),
            _ => vec![self.clone()],
        }
    }

    pub fn factor_count(&self) -> usize {
        match &self.0.kind {
            ModuleKind::Unit => 0,
            ModuleKind::Tensor(fs) => fs.len(),
            _ => 1,
        }
    }

    /// True if some Sym or Sh constructor occurs in the module.
    pub fn has_algebra(&self) -> bool {
        match &self.0.kind {
            ModuleKind::Zero | ModuleKind::Unit | ModuleKind::Base { .. } => false,
            ModuleKind::Tensor(fs) | ModuleKind::DirectSum(fs) => fs.iter().any(|f| f.has_algebra()),
            ModuleKind::Copies { inner, .. } => inner.has_algebra(),
            ModuleKind::Sym { .. } | ModuleKind::Sh { .. } => true,
        }
    }

    /// Structural grade of a label, ignoring truncation caps. `None` if the
    /// label does not have the module's shape.
    pub fn grade(&self, label: &BasisLabel) -> Option<usize> {
        match (&self.0.kind, label) {
            (ModuleKind::Unit, BasisLabel::Unit) => Some(0),
            (ModuleKind::Base { id, dim, .. }, BasisLabel::Gen(m, i)) if m == id && i < dim => Some(1),
            (ModuleKind::Tensor(fs), l) => {
                let parts = l.split(fs.len())?;
                let mut g = 0;
                for (f, p) in fs.iter().zip(&parts) {
                    g += f.grade(p)?;
                }
                Some(g)
            }
            (ModuleKind::DirectSum(fs), BasisLabel::Copy(t, x)) => fs.get(*t as usize)?.grade(x),
            (ModuleKind::Copies { inner, .. }, BasisLabel::Copy(t, x)) => Some(*t as usize + inner.grade(x)?),
            (ModuleKind::Sym { inner, .. }, BasisLabel::Multiset(es)) => {
                let mut g = 0;
                for e in es.iter() {
                    g += inner.grade(e)?.max(1);
                }
                Some(g)
            }
            (ModuleKind::Sh { inner, .. }, BasisLabel::Word(es)) => {
                let mut g = 0;
                for e in es.iter() {
                    g += inner.grade(e)?.max(1);
                }
                Some(g)
            }
            _ => None,
        }
    }

    /// Membership in the truncated basis.
    pub fn contains(&self, label: &BasisLabel) -> bool {
        match (&self.0.kind, label) {
            (ModuleKind::Unit, BasisLabel::Unit) => true,
            (ModuleKind::Base { id, dim, .. }, BasisLabel::Gen(m, i)) => m == id && i < dim,
            (ModuleKind::Tensor(fs), l) => match l.split(fs.len()) {
                Some(parts) => fs.iter().zip(&parts).all(|(f, p)| f.contains(p)),
                None => false,
            },
            (ModuleKind::DirectSum(fs), BasisLabel::Copy(t, x)) => {
                fs.get(*t as usize).is_some_and(|f| f.contains(x))
            }
            (ModuleKind::Copies { inner, count }, BasisLabel::Copy(t, x)) => t < count && inner.contains(x),
            (ModuleKind::Sym { inner, cap }, BasisLabel::Multiset(es)) => {
                es.windows(2).all(|w| w[0] <= w[1])
                    && es.iter().all(|e| inner.contains(e))
                    && self.grade(label).is_some_and(|g| g <= *cap)
            }
            (ModuleKind::Sh { inner, cap }, BasisLabel::Word(es)) => {
                es.len() <= *cap && es.iter().all(|e| inner.contains(e))
            }
            _ => false,
        }
    }

    /// Largest grade `g` such that every structurally valid label of grade
    /// at most `g` lies in the truncated basis. `None` means no limit.
    pub fn complete_grade(&self) -> Option<usize> {
        fn min(a: Option<usize>, b: Option<usize>) -> Option<usize> {
            match (a, b) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, None) => x,
                (None, y) => y,
            }
        }
        match &self.0.kind {
            ModuleKind::Zero | ModuleKind::Unit | ModuleKind::Base { .. } => None,
            ModuleKind::Tensor(fs) | ModuleKind::DirectSum(fs) => {
                fs.iter().fold(None, |acc, f| min(acc, f.complete_grade()))
            }
            ModuleKind::Copies { inner, count } => {
                min(Some((*count as usize).saturating_sub(1)), inner.complete_grade())
            }
            ModuleKind::Sym { inner, cap } | ModuleKind::Sh { inner, cap } => {
                min(Some(*cap), inner.complete_grade())
            }
        }
    }

    /// Basis labels of grade at most `max_grade`, in canonical order.
    pub fn basis_up_to(&self, max_grade: usize) -> Arc<Vec<BasisLabel>> {
        if let Some(b) = self.0.bases.lock().unwrap().get(&max_grade) {
            return b.clone();
        }
        let mut v: Vec<BasisLabel> = self.enumerate(max_grade).into_iter().map(|(l, _)| l).collect();
        v.sort();
        v.dedup();
        let v = Arc::new(v);
        self.0.bases.lock().unwrap().insert(max_grade, v.clone());
        v
    }

    /// The whole truncated basis.
    pub fn basis(&self) -> Arc<Vec<BasisLabel>> {
        self.basis_up_to(self.max_grade())
    }

    pub fn dim(&self) -> usize {
        self.basis().len()
    }

    /// Largest grade occurring in the truncated basis.
    pub fn max_grade(&self) -> usize {
        match &self.0.kind {
            ModuleKind::Zero | ModuleKind::Unit => 0,
            ModuleKind::Base { .. } => 1,
            ModuleKind::Tensor(fs) => fs.iter().map(|f| f.max_grade()).sum(),
            ModuleKind::DirectSum(fs) => fs.iter().map(|f| f.max_grade()).max().unwrap_or(0),
            ModuleKind::Copies { inner, count } => (*count as usize).saturating_sub(1) + inner.max_grade(),
            ModuleKind::Sym { cap, .. } => *cap,
            ModuleKind::Sh { inner, cap } => cap * inner.max_grade().max(1),
        }
    }

    fn enumerate(&self, g: usize) -> Vec<(BasisLabel, usize)> {
        match &self.0.kind {
            ModuleKind::Zero => Vec::new(),
            ModuleKind::Unit => vec![(BasisLabel::Unit, 0)],
            ModuleKind::Base { id, dim, .. } => {
                if g == 0 {
                    Vec::new()
                } else {
                    (0..*dim).map(|i| (BasisLabel::Gen(*id, i), 1)).collect()
                }
            }
            ModuleKind::Tensor(fs) => {
                let bases: Vec<Vec<(BasisLabel, usize)>> = fs.iter().map(|f| f.graded(g)).collect();
                let mut out = Vec::new();
                let mut parts = Vec::with_capacity(fs.len());
                tensor_rec(&bases, 0, g, 0, &mut parts, &mut out);
                out
            }
            ModuleKind::DirectSum(fs) => {
                let mut out = Vec::new();
                for (t, f) in fs.iter().enumerate() {
                    for (l, gr) in f.graded(g) {
                        out.push((BasisLabel::copy(t as u32, l), gr));
                    }
                }
                out
            }
            ModuleKind::Copies { inner, count } => {
                let mut out = Vec::new();
                for t in 0..*count {
                    let t = t as usize;
                    if t > g {
                        break;
                    }
                    for (l, gr) in inner.graded(g - t) {
                        out.push((BasisLabel::copy(t as u32, l), gr + t));
                    }
                }
                out
            }
            ModuleKind::Sym { inner, cap } => {
                let g = g.min(*cap);
                let items: Vec<(BasisLabel, usize)> =
                    inner.graded(g).into_iter().map(|(l, gr)| (l, gr.max(1))).collect();
                let mut out = Vec::new();
                let mut cur = Vec::new();
                multiset_rec(&items, 0, g, 0, &mut cur, &mut out);
                out
            }
            ModuleKind::Sh { inner, cap } => {
                let items: Vec<(BasisLabel, usize)> =
                    inner.graded(g).into_iter().map(|(l, gr)| (l, gr.max(1))).collect();
                let mut out = Vec::new();
                let mut cur = Vec::new();
                word_rec(&items, *cap, g, 0, &mut cur, &mut out);
                out
            }
        }
    }

    fn graded(&self, g: usize) -> Vec<(BasisLabel, usize)> {
        self.basis_up_to(g)
            .iter()
            .map(|l| {
                let gr = self.grade(l).expect("enumerated label has a grade");
                (l.clone(), gr)
            })
            .collect()
    }
}

fn tensor_rec(
    bases: &[Vec<(BasisLabel, usize)>],
    i: usize,
    budget: usize,
    used: usize,
    parts: &mut Vec<BasisLabel>,
    out: &mut Vec<(BasisLabel, usize)>,
) {
    if i == bases.len() {
        out.push((BasisLabel::join(parts.clone()), used));
        return;
    }
    for (l, g) in &bases[i] {
        if used + g <= budget {
            parts.push(l.clone());
            tensor_rec(bases, i + 1, budget, used + g, parts, out);
            parts.pop();
        }
    }
}

fn multiset_rec(
    items: &[(BasisLabel, usize)],
    start: usize,
    budget: usize,
    used: usize,
    cur: &mut Vec<BasisLabel>,
    out: &mut Vec<(BasisLabel, usize)>,
) {
    out.push((BasisLabel::Multiset(cur.clone().into()), used));
    for (k, (l, w)) in items.iter().enumerate().skip(start) {
        if used + w <= budget {
            cur.push(l.clone());
            multiset_rec(items, k, budget, used + w, cur, out);
            cur.pop();
        }
    }
}

fn word_rec(
    items: &[(BasisLabel, usize)],
    max_len: usize,
    budget: usize,
    used: usize,
    cur: &mut Vec<BasisLabel>,
    out: &mut Vec<(BasisLabel, usize)>,
) {
    out.push((BasisLabel::Word(cur.clone().into()), used));
    if cur.len() == max_len {
        return;
    }
    for (l, w) in items {
        if used + w <= budget {
            cur.push(l.clone());
            word_rec(items, max_len, budget, used + w, cur, out);
            cur.pop();
        }
    }
}

/// Number of multisets of size `k` drawn from `n` kinds.
pub fn multiset_count(n: usize, k: usize) -> usize {
    if n == 0 {
        return (k == 0) as usize;
    }
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n + i) as u128 / (i + 1) as u128;
    }
    c as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(dim: u32) -> FreeModule {
        FreeModule::base(Rig::Rationals, 0, "A", dim)
    }

    #[test]
    fn sym_dimension_formula() {
        for dim in 1..=3 {
            for n in 0..=4 {
                let s = FreeModule::sym(&m(dim), n);
                let expect: usize = (0..=n).map(|k| multiset_count(dim as usize, k)).sum();
                assert_eq!(s.dim(), expect, "dim {dim} cap {n}");
            }
        }
    }

    #[test]
    fn tensor_is_strict() {
        let a = m(2);
        let k = FreeModule::unit(Rig::Rationals);
        assert_eq!(FreeModule::tensor(&[a.clone(), k.clone()]), a);
        let t = FreeModule::tensor(&[FreeModule::tensor(&[a.clone(), a.clone()]), a.clone()]);
        assert_eq!(t, FreeModule::tensor(&[a.clone(), FreeModule::tensor(&[a.clone(), a.clone()])]));
        assert_eq!(t.factor_count(), 3);
        assert_eq!(t.dim(), 8);
    }

    #[test]
    fn basis_is_sorted_and_contained() {
        let s = FreeModule::sym(&FreeModule::sym(&m(2), 2), 3);
        let b = s.basis();
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        assert!(b.iter().all(|l| s.contains(l)));
        let sh = FreeModule::sh(&m(2), 2);
        assert_eq!(sh.dim(), 1 + 2 + 4);
    }

    #[test]
    fn copies_grade_counts_tag() {
        let c = FreeModule::copies(&m(1), 3);
        let l = BasisLabel::copy(2, BasisLabel::Gen(0, 0));
        assert_eq!(c.grade(&l), Some(3));
        assert!(!c.contains(&BasisLabel::copy(3, BasisLabel::Gen(0, 0))));
        assert_eq!(c.complete_grade(), Some(2));
    }
}
