use std::fmt;
use std::sync::Arc;

/// Canonical name of a basis vector.
///
/// The derived ordering is the global canonical order: variants compare in
/// declaration order, then structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    Unit,
    Gen(u32, u32),
    Multiset(Arc<[BasisLabel]>),
    Word(Arc<[BasisLabel]>),
    Pair(Arc<(BasisLabel, BasisLabel)>),
    Copy(u32, Arc<BasisLabel>),
}

impl BasisLabel {
    /// Builds a multiset label, sorting the entries.
    pub fn multiset(mut entries: Vec<BasisLabel>) -> BasisLabel {
        entries.sort();
        BasisLabel::Multiset(entries.into())
    }

    pub fn empty_multiset() -> BasisLabel {
        BasisLabel::Multiset(Arc::from(Vec::new()))
    }

    pub fn singleton(x: BasisLabel) -> BasisLabel {
        BasisLabel::Multiset(Arc::from(vec![x]))
    }

    pub fn word(entries: Vec<BasisLabel>) -> BasisLabel {
        BasisLabel::Word(entries.into())
    }

    pub fn pair(a: BasisLabel, b: BasisLabel) -> BasisLabel {
        BasisLabel::Pair(Arc::new((a, b)))
    }

    pub fn copy(tag: u32, x: BasisLabel) -> BasisLabel {
        BasisLabel::Copy(tag, Arc::new(x))
    }

    pub fn as_multiset(&self) -> Option<&[BasisLabel]> {
        match self {
            BasisLabel::Multiset(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_word(&self) -> Option<&[BasisLabel]> {
        match self {
            BasisLabel::Word(w) => Some(w),
            _ => None,
        }
    }

    pub fn as_copy(&self) -> Option<(u32, &BasisLabel)> {
        match self {
            BasisLabel::Copy(t, x) => Some((*t, x)),
            _ => None,
        }
    }

    /// Joins factor labels of a strict tensor product into one label.
    pub fn join(parts: Vec<BasisLabel>) -> BasisLabel {
        let mut it = parts.into_iter();
        let Some(first) = it.next() else {
            return BasisLabel::Unit;
        };
        it.fold(first, BasisLabel::pair)
    }

    /// Label of a tensor of tensors: each `(label, n)` is a label of an
    /// `n`-factor product, and the result lives in the flattened product.
    pub fn concat(parts: &[(&BasisLabel, usize)]) -> BasisLabel {
        let mut flat = Vec::new();
        for (l, n) in parts {
            flat.extend(l.split(*n).expect("label matches factor count"));
        }
        BasisLabel::join(flat)
    }

    /// Inverse of [`BasisLabel::join`] for a tensor of `n` factors.
    pub fn split(&self, n: usize) -> Option<Vec<BasisLabel>> {
        match n {
            0 => (*self == BasisLabel::Unit).then(Vec::new),
            1 => Some(vec![self.clone()]),
            _ => {
                let mut out = Vec::with_capacity(n);
                let mut cur = self;
                for _ in 1..n {
                    let BasisLabel::Pair(p) = cur else {
                        return None;
                    };
                    out.push(p.1.clone());
                    cur = &p.0;
                }
                out.push(cur.clone());
                out.reverse();
                Some(out)
            }
        }
    }
}

fn gen_name(module: u32, idx: u32) -> String {
    const A: [&str; 4] = ["x", "y", "z", "w"];
    const B: [&str; 4] = ["p", "q", "r", "s"];
    const C: [&str; 4] = ["k", "l", "m", "n"];
    let table = match module {
        0 => Some(&A),
        1 => Some(&B),
        2 => Some(&C),
        _ => None,
    };
    match table {
        Some(t) if (idx as usize) < t.len() => t[idx as usize].to_string(),
        Some(t) => format!("{}{idx}", t[0]),
        None => format!("g{module}_{idx}"),
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Unit => write!(f, "1"),
            BasisLabel::Gen(m, i) => write!(f, "{}", gen_name(*m, *i)),
            BasisLabel::Multiset(es) => {
                if es.is_empty() {
                    return write!(f, "∅");
                }
                write!(f, "{{")?;
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        write!(f, "·")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "}}")
            }
            BasisLabel::Word(es) => {
                write!(f, "(")?;
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            BasisLabel::Pair(p) => write!(f, "{}⊗{}", p.0, p.1),
            BasisLabel::Copy(t, x) => write!(f, "ι{t}[{x}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_split_roundtrip() {
        let parts: Vec<_> = (0..4).map(|i| BasisLabel::Gen(0, i)).collect();
        for n in 0..=4 {
            let j = BasisLabel::join(parts[..n].to_vec());
            assert_eq!(j.split(n).unwrap(), parts[..n].to_vec());
        }
        assert!(BasisLabel::Gen(0, 0).split(0).is_none());
    }

    #[test]
    fn canonical_order_puts_copy_tag_first() {
        let a = BasisLabel::copy(0, BasisLabel::Gen(0, 5));
        let b = BasisLabel::copy(1, BasisLabel::Gen(0, 0));
        assert!(a < b);
    }

    #[test]
    fn multiset_is_sorted() {
        let m = BasisLabel::multiset(vec![BasisLabel::Gen(0, 1), BasisLabel::Gen(0, 0)]);
        assert_eq!(m.to_string(), "{x·y}");
    }
}
