//! Evaluates laws against a model, grade by grade.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::catalog::{catalog, Applies, Law, Quantification, Reading};
use crate::linalg::Witness;
use crate::modality::{compare_graded, evaluate, Graded, probe_pool, resolve_obj, Category, Env, Model, ModalityError, ObjExpr};

/// Outcome of one law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum LawStatus {
    Pass,
    Fail {
        witness: Witness,
        /// Probe arrows bound when the mismatch was found.
        probes: Vec<String>,
        /// Matrix entry of the mismatch, for matrix categories.
        entry: Option<(usize, usize)>,
    },
    Skipped {
        reason: String,
    },
    /// Exact agreement on every label up to `checked_through`; the next
    /// grade runs past the truncation. `None` if not even grade 0 fits.
    FrontierLimited {
        checked_through: Option<usize>,
    },
    Error {
        message: String,
    },
}

impl LawStatus {
    pub fn label(&self) -> &'static str {
        match self {
            LawStatus::Pass => "pass",
            LawStatus::Fail { .. } => "fail",
            LawStatus::Skipped { .. } => "skipped",
            LawStatus::FrontierLimited { .. } => "frontier-limited",
            LawStatus::Error { .. } => "error",
        }
    }

    /// Pass, or agreement on every grade inside the frontier when that
    /// includes at least grade 0.
    pub fn passes_within_frontier(&self) -> bool {
        match self {
            LawStatus::Pass => true,
            LawStatus::FrontierLimited { checked_through: Some(_) } => true,
            _ => false,
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, LawStatus::Fail { .. })
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, LawStatus::Skipped { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            LawStatus::Fail { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub name: String,
    pub anchor: String,
    pub suite: String,
    #[serde(flatten)]
    pub status: LawStatus,
    /// Basis labels compared, summed over probe instances.
    pub coverage: usize,
    pub quantification: Quantification,
    pub seed: u64,
    /// Names of the probe arrows quantified over.
    pub probe_set: Vec<String>,
}

/// Knobs for one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunParams {
    pub seed: u64,
    /// Highest grade compared; `None` means the whole truncated basis.
    pub max_grade: Option<usize>,
}

impl Default for RunParams {
    fn default() -> RunParams {
        RunParams { seed: 42, max_grade: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite {0}")]
    UnknownSuite(String),
}

/// Primitive suites in catalog order.
pub const SUITES: [&str; 11] = [
    "comonad",
    "coalgebra",
    "monoidal",
    "bialgebra",
    "additive",
    "differential",
    "codereliction",
    "structure",
    "seely",
    "rb",
    "diff",
];

/// Expands a suite name, including the composites `additive-bialgebra`
/// and `all`, to primitive suites.
pub fn expand_suite(name: &str) -> Result<Vec<&'static str>, SuiteError> {
    match name {
        "all" => Ok(SUITES.to_vec()),
        "additive-bialgebra" => Ok(vec!["comonad", "coalgebra", "bialgebra", "additive"]),
        "monad" => Ok(vec!["comonad"]),
        _ => SUITES
            .iter()
            .chain(["rb-obstruction"].iter())
            .find(|s| **s == name)
            .map(|s| vec![*s])
            .ok_or_else(|| SuiteError::UnknownSuite(name.to_string())),
    }
}

fn skipped(law: &Law, params: &RunParams, reason: String) -> LawReport {
    report(law, params, LawStatus::Skipped { reason }, 0, Vec::new())
}

fn report(law: &Law, params: &RunParams, status: LawStatus, coverage: usize, probe_set: Vec<String>) -> LawReport {
    LawReport {
        name: law.name.clone(),
        anchor: law.anchor.clone(),
        suite: law.suite.clone(),
        status,
        coverage,
        quantification: law.quantification(),
        seed: params.seed,
        probe_set,
    }
}

/// Symbols and object constructors a law needs that `model` lacks.
pub fn missing_requirements<C: Category>(law: &Law, model: &Model<C>) -> Vec<String> {
    let mut out: Vec<String> = law.symbols().into_iter().filter(|s| !model.has(s)).collect();
    out.extend(law.functors().into_iter().filter(|f| !model.has_functor(f)).map(|f| format!("{f}(-)")));
    out
}

/// Runs one law.
pub fn run_law<C: Category>(model: &Model<C>, law: &Law, params: &RunParams) -> LawReport {
    let missing = missing_requirements(law, model);
    if !missing.is_empty() {
        return skipped(law, params, format!("missing {}", missing.join(", ")));
    }
    let model = match law.reading {
        Reading::Coalgebra => model.clone(),
        Reading::Underlying => match model.cat.flipped_reading() {
            Some(c) => model.with_category(c),
            None => return skipped(law, params, "no underlying reading in this category".into()),
        },
    };
    match run_instances(&model, law, params) {
        Ok(r) => r,
        Err(e) => report(law, params, LawStatus::Error { message: e.to_string() }, 0, Vec::new()),
    }
}

type Pools<C> = Vec<(String, Vec<(String, <C as Category>::Arr)>)>;

fn pools<C: Category>(model: &Model<C>, law: &Law, params: &RunParams) -> Result<Pools<C>, ModalityError> {
    let env = Env::from_model(model);
    let mut seen: Vec<(String, ObjExpr, ObjExpr)> = law.lhs.probes();
    for p in law.rhs.probes() {
        if !seen.iter().any(|q| q.0 == p.0) {
            seen.push(p);
        }
    }
    let mut out = Vec::new();
    for (name, dom, cod) in seen {
        let d = resolve_obj(&dom, model, &env)?;
        let c = resolve_obj(&cod, model, &env)?;
        out.push((name.clone(), probe_pool(&model.cat, params.seed, &name, &d, &c)));
    }
    Ok(out)
}

fn run_instances<C: Category>(model: &Model<C>, law: &Law, params: &RunParams) -> Result<LawReport, ModalityError> {
    let cat = &model.cat;
    let pools = pools(model, law, params)?;
    let count = pools.iter().map(|(_, p)| p.len()).max().unwrap_or(1);
    let probe_set: Vec<String> = pools.iter().flat_map(|(_, p)| p.iter().map(|(n, _)| n.clone())).collect();
    let mut coverage = 0;
    let mut limited: Option<Option<usize>> = None;
    for i in 0..count {
        let mut env = Env::from_model(model);
        let mut bound = Vec::new();
        for (name, pool) in &pools {
            let (pn, arr) = &pool[i % pool.len()];
            env.probes.insert(name.clone(), arr.clone());
            bound.push(pn.clone());
        }
        let lhs = evaluate(&law.lhs, model, &env)?;
        let rhs = evaluate(&law.rhs, model, &env)?;
        let (ld, lc, rd, rc) = (cat.dom(&lhs), cat.cod(&lhs), cat.dom(&rhs), cat.cod(&rhs));
        if ld != rd || lc != rc {
            let msg = format!("lhs has type {ld} → {lc}, rhs has type {rd} → {rc}");
            return Ok(match law.applies {
                Applies::SameType => skipped(law, params, format!("not applicable: {msg}")),
                Applies::Always => report(law, params, LawStatus::Error { message: msg }, coverage, probe_set),
            });
        }
        match compare_graded(cat, &lhs, &rhs, params.max_grade)? {
            (Graded::Mismatch { witness, entry }, n) => {
                coverage += n;
                let status = LawStatus::Fail { witness, probes: bound, entry };
                return Ok(report(law, params, status, coverage, probe_set));
            }
            (Graded::Limited(through), n) => {
                coverage += n;
                limited = Some(match limited {
                    Some(prev) => prev.min(through),
                    None => through,
                });
            }
            (Graded::Agree, n) => coverage += n,
        }
    }
    let status = match limited {
        Some(checked_through) => LawStatus::FrontierLimited { checked_through },
        None => LawStatus::Pass,
    };
    Ok(report(law, params, status, coverage, probe_set))
}

/// Laws of the given suite in catalog order.
pub fn suite_laws(name: &str) -> Result<Vec<&'static Law>, SuiteError> {
    let suites = expand_suite(name)?;
    Ok(catalog().iter().filter(|l| suites.contains(&l.suite.as_str())).collect())
}

/// Runs a suite; laws run concurrently and reports come back in catalog order.
pub fn run_suite<C: Category>(model: &Model<C>, suite: &str, params: &RunParams) -> Result<Vec<LawReport>, SuiteError> {
    let laws = suite_laws(suite)?;
    Ok(laws.par_iter().map(|l| run_law(model, l, params)).collect())
}

/// Runs the named laws in the given order.
pub fn run_named<C: Category>(model: &Model<C>, names: &[&str], params: &RunParams) -> Vec<LawReport> {
    names
        .par_iter()
        .map(|n| match super::catalog::law(n) {
            Some(l) => run_law(model, l, params),
            None => LawReport {
                name: n.to_string(),
                anchor: String::new(),
                suite: String::new(),
                status: LawStatus::Error { message: format!("no law named {n}") },
                coverage: 0,
                quantification: Quantification::Exhaustive,
                seed: params.seed,
                probe_set: Vec::new(),
            },
        })
        .collect()
}

/// Reports indexed by law name.
pub fn by_name(reports: &[LawReport]) -> HashMap<&str, &LawReport> {
    reports.iter().map(|r| (r.name.as_str(), r)).collect()
}
