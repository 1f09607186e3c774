//! Places a model in the six-way classification of (co)algebra modalities.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::runner::{run_named, suite_laws, LawReport, LawStatus, RunParams};
use crate::constructions::with_derived_monoidal;
use crate::modality::{Category, Model};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Coalgebra,
    Monoidal,
    Bialgebra,
    Additive,
    Deriving,
    Codereliction,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Coalgebra,
        Property::Monoidal,
        Property::Bialgebra,
        Property::Additive,
        Property::Deriving,
        Property::Codereliction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Coalgebra => "coalgebra",
            Property::Monoidal => "monoidal",
            Property::Bialgebra => "bialgebra",
            Property::Additive => "additive",
            Property::Deriving => "deriving",
            Property::Codereliction => "codereliction",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    NotEstablished,
}

impl Verdict {
    pub fn symbol(self) -> &'static str {
        match self {
            Verdict::Yes => "Y",
            Verdict::No => "N",
            Verdict::NotEstablished => "NE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub property: Property,
    pub verdict: Verdict,
    /// Laws that decided the verdict, with witnesses for failures.
    pub evidence: Vec<String>,
    /// What the verdict does not claim.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub model: String,
    pub cells: Vec<Cell>,
}

impl Classification {
    pub fn cell(&self, p: Property) -> &Cell {
        self.cells.iter().find(|c| c.property == p).expect("every property is classified")
    }

    pub fn verdict(&self, p: Property) -> Verdict {
        self.cell(p).verdict
    }

    /// Properties with verdict `Yes`.
    pub fn members(&self) -> Vec<Property> {
        self.cells.iter().filter(|c| c.verdict == Verdict::Yes).map(|c| c.property).collect()
    }
}

const NO_NOTE: &str = "witnessed for the registered candidate; nonexistence of another structure not proved";

fn suite(name: &str) -> Vec<&'static str> {
    suite_laws(name).expect("known suite").into_iter().map(|l| l.name.as_str()).collect()
}

fn own_laws(p: Property) -> Vec<&'static str> {
    match p {
        Property::Coalgebra => [suite("comonad"), suite("coalgebra")].concat(),
        Property::Monoidal => suite("monoidal"),
        Property::Bialgebra => suite("bialgebra"),
        Property::Additive => suite("additive"),
        Property::Deriving => vec!["d.1", "d.2", "d.3", "d.4", "d.5", "nat.d"],
        Property::Codereliction => vec!["dC.1", "dC.2", "dC.3", "dC.4", "nat.eta"],
    }
}

/// Properties whose laws are presupposed by `p`.
fn prerequisites(p: Property) -> &'static [Property] {
    match p {
        Property::Coalgebra => &[],
        Property::Monoidal | Property::Bialgebra | Property::Deriving => &[Property::Coalgebra],
        Property::Additive | Property::Codereliction => &[Property::Coalgebra, Property::Bialgebra],
    }
}

fn describe(r: &LawReport) -> String {
    match &r.status {
        LawStatus::Fail { witness, .. } => {
            format!("{} fails at {}: {} vs {}", r.name, witness.label, witness.lhs, witness.rhs)
        }
        LawStatus::FrontierLimited { checked_through } => match checked_through {
            Some(g) => format!("{} agrees through grade {g}", r.name),
            None => format!("{} not checkable in the truncation", r.name),
        },
        LawStatus::Skipped { reason } => format!("{} skipped: {reason}", r.name),
        LawStatus::Error { message } => format!("{} error: {message}", r.name),
        LawStatus::Pass => format!("{} passes", r.name),
    }
}

fn judge(p: Property, names: &[&str], reports: &HashMap<String, LawReport>) -> Cell {
    let rs: Vec<&LawReport> = names.iter().filter_map(|n| reports.get(*n)).collect();
    let fails: Vec<String> = rs.iter().filter(|r| r.status.is_fail()).map(|r| describe(r)).collect();
    if !fails.is_empty() {
        return Cell { property: p, verdict: Verdict::No, evidence: fails, notes: vec![NO_NOTE.into()] };
    }
    let open: Vec<String> = rs.iter().filter(|r| !r.status.passes_within_frontier()).map(|r| describe(r)).collect();
    if !open.is_empty() {
        let note = if rs.iter().any(|r| r.status.is_skipped()) {
            "no candidate structure registered"
        } else {
            "not decided inside the truncation"
        };
        return Cell { property: p, verdict: Verdict::NotEstablished, evidence: open, notes: vec![note.into()] };
    }
    let limited: Vec<String> = rs
        .iter()
        .filter(|r| matches!(r.status, LawStatus::FrontierLimited { .. }))
        .map(|r| describe(r))
        .collect();
    let mut notes = Vec::new();
    if !limited.is_empty() {
        notes.push("holds on every grade inside the truncation".into());
    }
    let evidence = if limited.is_empty() { vec![format!("{} laws pass", rs.len())] } else { limited };
    Cell { property: p, verdict: Verdict::Yes, evidence, notes }
}

fn run_all<C: Category>(model: &Model<C>, names: &[&str], params: &RunParams) -> HashMap<String, LawReport> {
    run_named(model, names, params).into_iter().map(|r| (r.name.clone(), r)).collect()
}

/// Classifies `model` on all six properties.
pub fn classify<C: Category>(model: &Model<C>, params: &RunParams) -> Classification {
    classify_with(model, params, &[])
}

/// As [`classify`], appending model-specific notes to the named cells.
pub fn classify_with<C: Category>(model: &Model<C>, params: &RunParams, extra: &[(Property, String)]) -> Classification {
    let mut names: Vec<&str> = Property::ALL
        .iter()
        .filter(|p| **p != Property::Monoidal)
        .flat_map(|p| own_laws(*p))
        .collect();
    names.dedup();
    let reports = run_all(model, &names, params);

    let mut own: HashMap<Property, Cell> = HashMap::new();
    for p in Property::ALL {
        let cell = if p == Property::Monoidal {
            monoidal_cell(model, params)
        } else {
            judge(p, &own_laws(p), &reports)
        };
        own.insert(p, cell);
    }

    let mut cells = Vec::new();
    for p in Property::ALL {
        let mut cell = own[&p].clone();
        for q in prerequisites(p) {
            let pre = &own[q];
            if pre.verdict != Verdict::Yes && cell.verdict == Verdict::Yes {
                cell.verdict = Verdict::NotEstablished;
                cell.notes.push(format!("presupposes {q}, which is {}", pre.verdict.symbol()));
            }
        }
        for (q, note) in extra {
            if *q == p {
                cell.notes.push(note.clone());
            }
        }
        cells.push(cell);
    }
    Classification { model: model.name.clone(), cells }
}

fn monoidal_cell<C: Category>(model: &Model<C>, params: &RunParams) -> Cell {
    let names = own_laws(Property::Monoidal);
    if model.has("m") {
        return judge(Property::Monoidal, &names, &run_all(model, &names, params));
    }
    if model.has("nabla") && model.has("u") {
        let derived = with_derived_monoidal(model, &model.name);
        let mut cell = judge(Property::Monoidal, &names, &run_all(&derived, &names, params));
        cell.notes.push("m and mK built from ∇ and u".into());
        return cell;
    }
    Cell {
        property: Property::Monoidal,
        verdict: Verdict::NotEstablished,
        evidence: vec!["neither m nor ∇, u registered".into()],
        notes: vec!["no candidate structure registered".into()],
    }
}
