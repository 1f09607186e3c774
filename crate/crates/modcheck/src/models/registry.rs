//! Builds models from names such as `sym`, `diff+opB:1` or `sym+biprod`.

use serde::Serialize;

use super::diff::{diff_model, DiffCaps};
use super::rb::{rb_diff_model, rb_model, seely_dimension_gap, RbCaps};
use super::sym::{sym_model, SymCaps};
use crate::constructions::{biproduct_completion, nonadditive_b, with_derived_monoidal, Biprod};
use crate::lawcheck::{
    check_meta, classify_with, run_named, run_suite, Classification, LawReport, MetaReport, Property, RunParams,
    SuiteError,
};
use crate::linalg::FreeModule;
use crate::modality::{ModCat, ModalityError, Model};
use crate::scalars::Rig;

pub const BASE_MODELS: [&str; 4] = ["sym", "diff", "rb", "rb-diff"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegistryError {
    #[error("unknown model {0}")]
    UnknownModel(String),
    #[error("unknown modifier {0}")]
    UnknownModifier(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Modality(#[from] ModalityError),
}

/// Size parameters shared by every model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModelConfig {
    #[serde(serialize_with = "as_string")]
    pub rig: Rig,
    pub dim: u32,
    /// Truncation degree `N` of the outer symmetric power.
    pub degree: usize,
    /// Truncation degree of symmetric powers nested inside another.
    pub nested: usize,
    /// Number of copies `K` in the differential model.
    pub copies: u32,
    /// Longest word `L` in the shuffle model.
    pub word_len: usize,
}

fn as_string<S: serde::Serializer>(r: &Rig, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl Default for ModelConfig {
    fn default() -> ModelConfig {
        ModelConfig { rig: Rig::Rationals, dim: 2, degree: 3, nested: 3, copies: 3, word_len: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Modifier {
    DerivedM,
    OpB(u32),
    Biprod,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpec {
    pub base: String,
    pub modifiers: Vec<Modifier>,
}

impl ModelSpec {
    pub fn parse(name: &str) -> Result<ModelSpec, RegistryError> {
        let mut parts = name.split('+');
        let base = parts.next().unwrap_or_default();
        if !BASE_MODELS.contains(&base) {
            return Err(RegistryError::UnknownModel(name.to_string()));
        }
        let mut modifiers = Vec::new();
        for p in parts {
            let m = match p {
                "derived-m" => Modifier::DerivedM,
                "biprod" => Modifier::Biprod,
                "opB" => Modifier::OpB(1),
                _ => match p.strip_prefix("opB:").map(str::parse::<u32>) {
                    Some(Ok(d)) if d > 0 => Modifier::OpB(d),
                    _ => return Err(RegistryError::UnknownModifier(p.to_string())),
                },
            };
            if modifiers.contains(&Modifier::Biprod) {
                return Err(RegistryError::UnknownModifier(format!("{p} after biprod")));
            }
            modifiers.push(m);
        }
        Ok(ModelSpec { base: base.to_string(), modifiers })
    }
}

/// A model in either the plain module category or its biproduct completion.
#[derive(Clone)]
pub enum AnyModel {
    Plain(Model<ModCat>),
    Biprod(Model<Biprod<ModCat>>),
}

macro_rules! dispatch {
    ($self:expr, |$m:ident| $body:expr) => {
        match $self {
            AnyModel::Plain($m) => $body,
            AnyModel::Biprod($m) => $body,
        }
    };
}

/// A built model plus the parameters it was built from.
#[derive(Clone)]
pub struct BuiltModel {
    pub name: String,
    pub config: ModelConfig,
    pub model: AnyModel,
    notes: Vec<(Property, String)>,
}

impl BuiltModel {
    pub fn run_suite(&self, suite: &str, params: &RunParams) -> Result<Vec<LawReport>, SuiteError> {
        dispatch!(&self.model, |m| run_suite(m, suite, params))
    }

    pub fn run_named(&self, names: &[&str], params: &RunParams) -> Vec<LawReport> {
        dispatch!(&self.model, |m| run_named(m, names, params))
    }

    pub fn classify(&self, params: &RunParams) -> Classification {
        dispatch!(&self.model, |m| classify_with(m, params, &self.notes))
    }

    pub fn meta(&self, params: &RunParams) -> Vec<MetaReport> {
        dispatch!(&self.model, |m| check_meta(m, params))
    }

    pub fn symbols(&self) -> Vec<String> {
        dispatch!(&self.model, |m| m.symbols())
    }

    /// Model-specific notes attached to classification cells.
    pub fn notes(&self) -> &[(Property, String)] {
        &self.notes
    }
}

fn base_model(base: &str, cfg: &ModelConfig) -> Result<Model<ModCat>, RegistryError> {
    if cfg.dim == 0 || cfg.degree == 0 {
        return Err(RegistryError::BadParameter("dim and degree must be positive".into()));
    }
    let nested = cfg.nested.min(cfg.degree);
    Ok(match base {
        "sym" => sym_model(cfg.rig, cfg.dim, SymCaps::new(cfg.degree, nested)),
        "diff" => diff_model(cfg.rig, cfg.dim, DiffCaps::new(cfg.copies, cfg.degree, nested)),
        "rb" => rb_model(cfg.rig, cfg.dim, rb_caps(base, cfg)),
        "rb-diff" => rb_diff_model(cfg.rig, cfg.dim, rb_caps(base, cfg)),
        _ => return Err(RegistryError::UnknownModel(base.to_string())),
    })
}

fn rb_caps(base: &str, cfg: &ModelConfig) -> RbCaps {
    let nested = cfg.nested.min(cfg.degree);
    if base == "rb-diff" {
        RbCaps::over_diff(cfg.word_len, cfg.copies, cfg.degree, nested)
    } else {
        RbCaps::new(cfg.word_len, cfg.degree, nested)
    }
}

fn rb_notes(base: &str, cfg: &ModelConfig, model: &Model<ModCat>) -> Vec<(Property, String)> {
    let mut out = Vec::new();
    let report = run_named(model, &["rb.cocomm"], &RunParams::default()).remove(0);
    if let Some(w) = report.status.witness() {
        let text = format!(
            "the coproduct candidate on Sh(Sym A), deconcatenation, is not cocommutative at {}: {} vs {}",
            w.label, w.lhs, w.rhs
        );
        for p in [Property::Bialgebra, Property::Additive, Property::Codereliction] {
            out.push((p, text.clone()));
        }
    }
    if let (Ok(a), Ok(b)) = (model.base("A"), model.base("B")) {
        if let Some((g, l, r)) = seely_dimension_gap(&a, &b, rb_caps(base, cfg)) {
            let text = format!("T(A⊕B) and TA⊗TB differ in dimension at grade {g}: {l} vs {r}, so no Seely isomorphism");
            out.push((Property::Monoidal, text.clone()));
            out.push((Property::Additive, text));
        }
    }
    out
}

/// Builds the model named `name`.
pub fn build_model(name: &str, cfg: &ModelConfig) -> Result<BuiltModel, RegistryError> {
    let spec = ModelSpec::parse(name)?;
    let mut model = base_model(&spec.base, cfg)?;
    let notes = if spec.base.starts_with("rb") { rb_notes(&spec.base, cfg, &model) } else { Vec::new() };
    let mut out: Option<AnyModel> = None;
    for m in &spec.modifiers {
        match m {
            Modifier::DerivedM => model = with_derived_monoidal(&model, &model.name),
            Modifier::OpB(d) => {
                let b = FreeModule::base(cfg.rig, 1, "B", *d);
                model = nonadditive_b(&model, b, &model.name)?;
            }
            Modifier::Biprod => out = Some(AnyModel::Biprod(biproduct_completion(&model, &model.name))),
        }
    }
    let mut model = out.unwrap_or(AnyModel::Plain(model));
    dispatch!(&mut model, |m| m.name = name.to_string());
    Ok(BuiltModel { name: name.to_string(), config: *cfg, model, notes })
}
