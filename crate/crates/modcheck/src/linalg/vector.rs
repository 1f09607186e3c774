use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::label::BasisLabel;
use crate::scalars::{is_negative, Rig, RigElement};

/// Finitely supported vector; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vector {
    rig: Rig,
    terms: BTreeMap<BasisLabel, RigElement>,
}

impl Vector {
    pub fn zero(rig: Rig) -> Vector {
        Vector { rig, terms: BTreeMap::new() }
    }

    pub fn basis(rig: Rig, label: BasisLabel) -> Vector {
        let mut v = Vector::zero(rig);
        v.terms.insert(label, rig.one());
        v
    }

    pub fn rig(&self) -> Rig {
        self.rig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisLabel, &RigElement)> {
        self.terms.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &BasisLabel> {
        self.terms.keys()
    }

    pub fn coeff(&self, label: &BasisLabel) -> RigElement {
        self.terms.get(label).cloned().unwrap_or_else(|| self.rig.zero())
    }

    pub fn add_term(&mut self, label: BasisLabel, c: RigElement) {
        debug_assert_eq!(c.rig(), self.rig);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(label) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add_same(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &RigElement, other: &Vector) {
        if c.is_zero() {
            return;
        }
        let one = c.is_one();
        for (l, x) in &other.terms {
            let t = if one { x.clone() } else { c.mul_same(x) };
            self.add_term(l.clone(), t);
        }
    }

    pub fn add_vec(&mut self, other: &Vector) {
        for (l, x) in &other.terms {
            self.add_term(l.clone(), x.clone());
        }
    }

    pub fn scaled(&self, c: &RigElement) -> Vector {
        let mut v = Vector::zero(self.rig);
        v.add_scaled(c, self);
        v
    }

    /// Applies a label map to every term, merging collisions.
    pub fn map_labels(&self, mut f: impl FnMut(&BasisLabel) -> BasisLabel) -> Vector {
        let mut v = Vector::zero(self.rig);
        for (l, c) in &self.terms {
            v.add_term(f(l), c.clone());
        }
        v
    }

    pub fn from_terms(rig: Rig, terms: impl IntoIterator<Item = (BasisLabel, RigElement)>) -> Vector {
        let mut v = Vector::zero(rig);
        for (l, c) in terms {
            v.add_term(l, c);
        }
        v
    }

    /// Terms as rendered strings, for reports.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.terms.iter().map(|(l, c)| (l.to_string(), c.render())).collect()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            let mag = if neg { c.negate().expect("negative implies ring") } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{l}")?;
            } else {
                write!(f, "{mag}·{l}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Vector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
