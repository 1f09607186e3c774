//! Implications between laws that must hold on every additive model,
//! checked as agreements between law statuses.

use std::collections::HashMap;

use serde::Serialize;

use super::runner::{run_named, LawStatus, RunParams};
use crate::modality::{Category, Model};

/// Three-valued reading of a law status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Truth {
    Holds,
    Fails,
    Unknown,
}

impl Truth {
    pub fn of(status: &LawStatus) -> Truth {
        if status.passes_within_frontier() {
            Truth::Holds
        } else if status.is_fail() {
            Truth::Fails
        } else {
            Truth::Unknown
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    /// Every listed law has the same status.
    Equivalent,
    /// Every listed law holds.
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaTheorem {
    pub name: &'static str,
    pub hypotheses: &'static [&'static str],
    pub conclusion: Conclusion,
    pub laws: &'static [&'static str],
}

pub const META_THEOREMS: [MetaTheorem; 4] = [
    MetaTheorem { name: "M1", hypotheses: &["d.3"], conclusion: Conclusion::Equivalent, laws: &["d.2", "d.nabla"] },
    MetaTheorem {
        name: "M2",
        hypotheses: &["d.3", "d.4"],
        conclusion: Conclusion::Equivalent,
        laws: &["d.2", "d.nabla", "d.m"],
    },
    MetaTheorem { name: "M3", hypotheses: &["dC.3"], conclusion: Conclusion::All, laws: &["dC.2"] },
    MetaTheorem { name: "M4", hypotheses: &["dC.3", "dC.4"], conclusion: Conclusion::All, laws: &["dC.m"] },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetaOutcome {
    /// Hypotheses hold and the conclusion agrees.
    Confirmed,
    /// Some hypothesis fails.
    Vacuous,
    /// Hypotheses hold and the conclusion does not.
    Violated,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetaReport {
    pub theorem: &'static str,
    pub model: String,
    pub outcome: MetaOutcome,
    pub statuses: Vec<(String, Truth)>,
}

/// Outcome from the truth values of the hypotheses and conclusion laws.
pub fn judge(t: &MetaTheorem, hyp: &[Truth], laws: &[Truth]) -> MetaOutcome {
    if hyp.contains(&Truth::Fails) {
        return MetaOutcome::Vacuous;
    }
    if hyp.contains(&Truth::Unknown) {
        return MetaOutcome::Inconclusive;
    }
    match t.conclusion {
        Conclusion::All => {
            if laws.contains(&Truth::Fails) {
                MetaOutcome::Violated
            } else if laws.contains(&Truth::Unknown) {
                MetaOutcome::Inconclusive
            } else {
                MetaOutcome::Confirmed
            }
        }
        Conclusion::Equivalent => {
            let holds = laws.contains(&Truth::Holds);
            let fails = laws.contains(&Truth::Fails);
            if holds && fails {
                MetaOutcome::Violated
            } else if laws.contains(&Truth::Unknown) {
                MetaOutcome::Inconclusive
            } else {
                MetaOutcome::Confirmed
            }
        }
    }
}

/// Checks every meta-theorem on `model`.
pub fn check_meta<C: Category>(model: &Model<C>, params: &RunParams) -> Vec<MetaReport> {
    let mut names: Vec<&str> = META_THEOREMS.iter().flat_map(|t| t.hypotheses.iter().chain(t.laws)).copied().collect();
    names.sort();
    names.dedup();
    let truth: HashMap<String, Truth> =
        run_named(model, &names, params).into_iter().map(|r| (r.name.clone(), Truth::of(&r.status))).collect();
    META_THEOREMS
        .iter()
        .map(|t| {
            let hyp: Vec<Truth> = t.hypotheses.iter().map(|n| truth[*n]).collect();
            let laws: Vec<Truth> = t.laws.iter().map(|n| truth[*n]).collect();
            let statuses = t.hypotheses.iter().chain(t.laws).map(|n| (n.to_string(), truth[*n])).collect();
            MetaReport { theorem: t.name, model: model.name.clone(), outcome: judge(t, &hyp, &laws), statuses }
        })
        .collect()
}
