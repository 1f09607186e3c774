//! Parser for the plain-text law catalog.

use std::sync::OnceLock;

use serde::Serialize;

use crate::modality::{ArrowExpr, ModalityError};

static SOURCE: &str = include_str!("laws.txt");

/// Which direction a law is read in against underlying maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
#[derive(Default)]
pub enum Reading {
    #[default]
    Coalgebra,
    Underlying,
}

/// When a law is meaningful.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
#[derive(Default)]
pub enum Applies {
    #[default]
    Always,
    /// Only when both sides have the same type; otherwise skipped.
    SameType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantification {
    Exhaustive,
    Probe,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Law {
    pub name: String,
    pub anchor: String,
    pub suite: String,
    pub lhs: ArrowExpr,
    pub rhs: ArrowExpr,
    pub reading: Reading,
    pub applies: Applies,
}

impl Law {
    pub fn quantification(&self) -> Quantification {
        if self.lhs.probes().is_empty() && self.rhs.probes().is_empty() {
            Quantification::Exhaustive
        } else {
            Quantification::Probe
        }
    }

    /// Structural symbols used on either side.
    pub fn symbols(&self) -> Vec<String> {
        let mut out = self.lhs.symbols();
        for s in self.rhs.symbols() {
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    /// Object constructors used on either side.
    pub fn functors(&self) -> Vec<String> {
        let mut out = self.lhs.functors();
        for s in self.rhs.functors() {
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out.sort();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("law {law}, {side}: {source}")]
    Expr {
        law: String,
        side: &'static str,
        #[source]
        source: ModalityError,
    },
    #[error("duplicate law {0}")]
    Duplicate(String),
}

#[derive(Default)]
struct Draft {
    name: String,
    line: usize,
    anchor: Option<String>,
    suite: Option<String>,
    lhs: Option<String>,
    rhs: Option<String>,
    reading: Reading,
    applies: Applies,
}



impl Draft {
    fn finish(self) -> Result<Law, CatalogError> {
        let missing = |f: &str| CatalogError::Syntax { line: self.line, msg: format!("law {} has no {f}", self.name) };
        let lhs_src = self.lhs.clone().ok_or_else(|| missing("lhs"))?;
        let rhs_src = self.rhs.clone().ok_or_else(|| missing("rhs"))?;
        let expr = |side: &'static str, src: &str| {
            ArrowExpr::parse(src).map_err(|source| CatalogError::Expr { law: self.name.clone(), side, source })
        };
        Ok(Law {
            lhs: expr("lhs", &lhs_src)?,
            rhs: expr("rhs", &rhs_src)?,
            anchor: self.anchor.clone().ok_or_else(|| missing("anchor"))?,
            suite: self.suite.clone().ok_or_else(|| missing("suite"))?,
            reading: self.reading,
            applies: self.applies,
            name: self.name,
        })
    }
}

/// Parses catalog source text.
pub fn parse_catalog(text: &str) -> Result<Vec<Law>, CatalogError> {
    let mut laws: Vec<Law> = Vec::new();
    let mut cur: Option<Draft> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(name) = t.strip_prefix("law ") {
            if let Some(d) = cur.take() {
                laws.push(d.finish()?);
            }
            let name = name.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(CatalogError::Syntax { line, msg: format!("bad law name {name:?}") });
            }
            cur = Some(Draft { name: name.to_string(), line, ..Draft::default() });
            continue;
        }
        let d = cur
            .as_mut()
            .ok_or_else(|| CatalogError::Syntax { line, msg: "field outside a law".into() })?;
        let (key, value) = t
            .split_once(':')
            .ok_or_else(|| CatalogError::Syntax { line, msg: "expected `key: value`".into() })?;
        let value = value.trim().to_string();
        let dup = |f: &str| CatalogError::Syntax { line, msg: format!("repeated field {f}") };
        match key.trim() {
            "anchor" if d.anchor.is_none() => d.anchor = Some(value),
            "suite" if d.suite.is_none() => d.suite = Some(value),
            "lhs" if d.lhs.is_none() => d.lhs = Some(value),
            "rhs" if d.rhs.is_none() => d.rhs = Some(value),
            "reading" => {
                d.reading = match value.as_str() {
                    "coalgebra" => Reading::Coalgebra,
                    "underlying" => Reading::Underlying,
                    _ => return Err(CatalogError::Syntax { line, msg: format!("unknown reading {value}") }),
                }
            }
            "applies" => {
                d.applies = match value.as_str() {
                    "always" => Applies::Always,
                    "same-type" => Applies::SameType,
                    _ => return Err(CatalogError::Syntax { line, msg: format!("unknown applies {value}") }),
                }
            }
            k @ ("anchor" | "suite" | "lhs" | "rhs") => return Err(dup(k)),
            k => return Err(CatalogError::Syntax { line, msg: format!("unknown field {k}") }),
        }
    }
    if let Some(d) = cur.take() {
        laws.push(d.finish()?);
    }
    for (i, l) in laws.iter().enumerate() {
        if laws[..i].iter().any(|m| m.name == l.name) {
            return Err(CatalogError::Duplicate(l.name.clone()));
        }
    }
    Ok(laws)
}

/// The built-in catalog.
pub fn catalog() -> &'static [Law] {
    static CAT: OnceLock<Vec<Law>> = OnceLock::new();
    CAT.get_or_init(|| parse_catalog(SOURCE).expect("built-in catalog parses"))
}

/// Looks up a law of the built-in catalog by name.
pub fn law(name: &str) -> Option<&'static Law> {
    catalog().iter().find(|l| l.name == name)
}

/// Laws whose name starts with `filter`, in catalog order.
pub fn list_laws(filter: Option<&str>) -> Vec<&'static Law> {
    catalog().iter().filter(|l| filter.is_none_or(|f| l.name.starts_with(f))).collect()
}
