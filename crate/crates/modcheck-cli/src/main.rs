use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use modcheck::lawcheck::{list_laws, Classification, LawReport, LawStatus, RunParams, Verdict};
use modcheck::models::registry::{build_model, BuiltModel, ModelConfig};
use modcheck::scalars::Rig;

const DEFAULT_MODELS: [&str; 6] = ["sym", "diff", "rb", "sym+opB:1", "diff+opB:1", "rb-diff"];

/// Exact law checking for (co)algebra modalities on truncated free modules.
///
/// Exit codes: 0 success, 1 some law failed, 2 bad configuration.
#[derive(Parser)]
#[command(name = "modcheck", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run law suites against one model.
    Check {
        #[arg(long)]
        model: String,
        /// Suite name, or a composite such as all, additive-bialgebra, monad.
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        knobs: Knobs,
    },
    /// Place models in the six-way classification.
    Classify {
        /// Model to classify; repeat for several. Defaults to the six separating examples.
        #[arg(long)]
        model: Vec<String>,
        #[command(flatten)]
        knobs: Knobs,
    },
    /// List the law catalog.
    Laws {
        /// Only laws whose name starts with this prefix.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Knobs {
    /// Q, Z, Zmod:n, bool or nat.
    #[arg(long, env = "MODALITY_RIG", default_value = "Q")]
    rig: String,
    #[arg(long, default_value_t = 2)]
    dim: u32,
    /// Truncation degree N.
    #[arg(long, default_value_t = 3)]
    degree: usize,
    /// Truncation degree for nested symmetric powers.
    #[arg(long, default_value_t = 3)]
    nested: usize,
    /// Copies K in the differential model.
    #[arg(long, default_value_t = 3)]
    copies: u32,
    /// Word length L in the shuffle model.
    #[arg(long, default_value_t = 2)]
    word_len: usize,
    #[arg(long, env = "MODALITY_SEED", default_value_t = 42)]
    seed: u64,
    /// Highest grade compared.
    #[arg(long)]
    max_grade: Option<usize>,
    #[arg(long)]
    json: bool,
}

impl Knobs {
    fn config(&self) -> Result<ModelConfig, String> {
        let rig = Rig::parse_descriptor(&self.rig).map_err(|e| e.to_string())?;
        Ok(ModelConfig {
            rig,
            dim: self.dim,
            degree: self.degree,
            nested: self.nested,
            copies: self.copies,
            word_len: self.word_len,
        })
    }

    fn params(&self) -> RunParams {
        RunParams { seed: self.seed, max_grade: self.max_grade }
    }
}

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn status_text(s: &LawStatus) -> String {
    match s {
        LawStatus::Pass => "pass".into(),
        LawStatus::Fail { witness, probes, .. } => {
            let mut t = format!("FAIL at {}: {} vs {}", witness.label, witness.lhs, witness.rhs);
            if !probes.is_empty() {
                t.push_str(&format!(" [probes {}]", probes.join(", ")));
            }
            t
        }
        LawStatus::FrontierLimited { checked_through: Some(g) } => format!("pass through grade {g} (frontier)"),
        LawStatus::FrontierLimited { checked_through: None } => "frontier-limited, nothing checkable".into(),
        LawStatus::Skipped { reason } => format!("skipped: {reason}"),
        LawStatus::Error { message } => format!("ERROR: {message}"),
    }
}

fn law_json(r: &LawReport) -> Value {
    let mut v = json!({
        "name": r.name,
        "anchor": r.anchor,
        "status": r.status.label(),
        "coverage": r.coverage,
    });
    match &r.status {
        LawStatus::Fail { witness, .. } => v["witness"] = json!(witness),
        LawStatus::FrontierLimited { checked_through } => v["checked_through"] = json!(checked_through),
        LawStatus::Skipped { reason } => v["reason"] = json!(reason),
        LawStatus::Error { message } => v["message"] = json!(message),
        LawStatus::Pass => {}
    }
    v
}

fn check(model: &str, suite: &str, knobs: &Knobs) -> ExitCode {
    let cfg = match knobs.config() {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    let suites = match modcheck::lawcheck::expand_suite(suite) {
        Ok(s) => s,
        Err(e) => return config_error(e),
    };
    let built = match build_model(model, &cfg) {
        Ok(b) => b,
        Err(e) => return config_error(e),
    };
    let params = knobs.params();
    let mut failed = false;
    let mut out = Vec::new();
    for s in suites {
        let reports = built.run_suite(s, &params).expect("expanded suites are known");
        failed |= reports.iter().any(|r| matches!(r.status, LawStatus::Fail { .. } | LawStatus::Error { .. }));
        out.push((s, reports));
    }
    if knobs.json {
        let doc = json!({
            "model": built.name,
            "rig": cfg.rig.to_string(),
            "params": cfg,
            "seed": params.seed,
            "suites": out.iter().map(|(s, rs)| json!({
                "name": s,
                "laws": rs.iter().map(law_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        println!(
            "model {} over {}, dim {}, N {}, K {}, L {}, seed {}",
            built.name, cfg.rig, cfg.dim, cfg.degree, cfg.copies, cfg.word_len, params.seed
        );
        for (s, rs) in &out {
            println!("[{s}]");
            for r in rs {
                println!("  {:24} {}", r.name, status_text(&r.status));
            }
        }
    }
    ExitCode::from(if failed { 1 } else { 0 })
}

fn classification_json(c: &Classification) -> Value {
    json!(c)
}

fn print_table(rows: &[(BuiltModel, Classification)]) {
    print!("{:12}", "model");
    for c in &rows[0].1.cells {
        print!(" {:>14}", c.property.name());
    }
    println!();
    for (_, c) in rows {
        print!("{:12}", c.model);
        for cell in &c.cells {
            let mark = if cell.verdict == Verdict::Yes { "" } else { "*" };
            print!(" {:>14}", format!("{}{mark}", cell.verdict.symbol()));
        }
        println!();
    }
    println!();
    println!("* witnessed for the registered candidate only, or not established");
    for (_, c) in rows {
        for cell in c.cells.iter().filter(|c| c.verdict != Verdict::Yes) {
            println!("{} / {}: {}", c.model, cell.property, cell.evidence.first().map(String::as_str).unwrap_or(""));
            for n in &cell.notes {
                println!("    {n}");
            }
        }
    }
}

fn classify(models: &[String], knobs: &Knobs) -> ExitCode {
    let cfg = match knobs.config() {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    let names: Vec<String> =
        if models.is_empty() { DEFAULT_MODELS.iter().map(|s| s.to_string()).collect() } else { models.to_vec() };
    let mut rows = Vec::new();
    for n in &names {
        match build_model(n, &cfg) {
            Ok(b) => {
                let c = b.classify(&knobs.params());
                rows.push((b, c));
            }
            Err(e) => return config_error(e),
        }
    }
    if knobs.json {
        let doc: Vec<Value> = rows.iter().map(|(_, c)| classification_json(c)).collect();
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        print_table(&rows);
    }
    ExitCode::SUCCESS
}

fn laws(filter: Option<&str>, as_json: bool) -> ExitCode {
    let laws = list_laws(filter);
    if as_json {
        let doc: Vec<Value> = laws
            .iter()
            .map(|l| {
                json!({
                    "name": l.name,
                    "anchor": l.anchor,
                    "suite": l.suite,
                    "lhs": l.lhs.to_string(),
                    "rhs": l.rhs.to_string(),
                    "reading": l.reading,
                    "applies": l.applies,
                    "quantification": l.quantification(),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        for l in laws {
            println!("{:24} {:14} {}", l.name, l.suite, l.anchor);
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Check { model, suite, knobs } => check(model, suite, knobs),
        Command::Classify { model, knobs } => classify(model, knobs),
        Command::Laws { filter, json } => laws(filter.as_deref(), *json),
    }
}
