//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use modcheck::constructions::{
    biproduct_completion, nonadditive_b, with_derived_d, with_derived_eta, with_derived_monoidal, with_derived_nabla,
    Biprod, ObjList,
};
use modcheck::lawcheck::{
    check_meta, classify, run_named, run_suite, LawReport, LawStatus, MetaOutcome, Property, RunParams, Verdict,
    META_THEOREMS,
};
use modcheck::linalg::{maps_equal, BasisLabel, FreeModule, Vector};
use modcheck::modality::{compare_graded, Category, Graded, ModCat, Model};
use modcheck::models::diff::{diff_model, pi0_section, refutation_witness, DiffCaps};
use modcheck::models::rb::{rb_model, RbCaps};
use modcheck::models::registry::{build_model, ModelConfig};
use modcheck::models::sym::{sym_model, SymCaps};
use modcheck::scalars::Rig;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn params() -> RunParams {
    RunParams::default()
}

/// Every report passes within the frontier.
fn all_pass(reports: &[LawReport]) -> Outcome {
    match reports.iter().find(|r| !r.status.passes_within_frontier()) {
        Some(r) => Err(format!("{} is {:?}", r.name, r.status)),
        None => Ok(()),
    }
}

/// Every report that was not skipped passes within the frontier.
fn applicable_pass(reports: &[LawReport]) -> Outcome {
    let ran: Vec<LawReport> = reports.iter().filter(|r| !r.status.is_skipped()).cloned().collect();
    if ran.is_empty() {
        return Err("nothing ran".into());
    }
    all_pass(&ran)
}

fn suites<C: Category>(m: &Model<C>, names: &[&str]) -> Vec<LawReport> {
    names.iter().flat_map(|s| run_suite(m, s, &params()).unwrap()).collect()
}

fn agree<C: Category>(cat: &C, f: &C::Arr, g: &C::Arr) -> bool {
    matches!(compare_graded(cat, f, g, None), Ok((Graded::Agree | Graded::Limited(Some(_)), _)))
}

fn sym_full_pass() -> Outcome {
    let s = sym_model(Rig::Rationals, 2, SymCaps::new(4, 3));
    all_pass(&suites(&s, &["comonad", "coalgebra", "bialgebra", "additive", "monoidal"]))?;
    all_pass(&run_suite(&with_derived_monoidal(&s, "sym+derived-m"), "monoidal", &params()).unwrap())?;
    let names = ["d.1", "d.2", "d.3", "d.4", "d.5", "d.nabla", "d.m", "dC.1", "dC.2", "dC.3", "dC.4", "dC.4'", "dC.m"];
    all_pass(&run_named(&s, &names, &params()))
}

fn diff_refutation() -> Outcome {
    let caps = DiffCaps::new(3, 3, 3);
    let d = diff_model(Rig::Integers, 2, caps);
    all_pass(&suites(&d, &["additive-bialgebra", "monad"]))?;
    let m = d.base("A").unwrap();
    let r = refutation_witness(&m, caps, &pi0_section()).map_err(|e| e.to_string())?;
    let rig = Rig::Integers;
    for a in m.basis().iter() {
        for b in m.basis().iter() {
            let ab = BasisLabel::pair(a.clone(), b.clone());
            let mut want = Vector::basis(rig, ab.clone());
            want.add_term(BasisLabel::pair(b.clone(), a.clone()), rig.one());
            if *r.lhs.apply(&ab).map_err(|e| e.to_string())? != want {
                return Err(format!("lhs at {ab} is not 1⊗1+σ"));
            }
            if !r.rhs.apply(&ab).map_err(|e| e.to_string())?.is_zero() {
                return Err(format!("rhs at {ab} is not 0"));
            }
        }
    }
    match maps_equal(&r.lhs, &r.rhs, 2).map_err(|e| e.to_string())? {
        Some(w) => {
            println!("    sandwich witness at {}: {} vs {}", w.label, w.lhs, w.rhs);
            Ok(())
        }
        None => Err("maps_equal reported no witness".into()),
    }
}

fn rb_positive() -> Outcome {
    let m = rb_model(Rig::Rationals, 1, RbCaps::new(2, 2, 2));
    all_pass(&run_named(
        &m,
        &["rb.equation", "rb.lemma-i", "rb.lemma-ii", "d.2", "d.3", "d.4", "d.5"],
        &params(),
    ))?;
    let r = run_named(&m, &["rb.cocomm"], &params()).remove(0);
    let w = r.status.witness().ok_or_else(|| format!("deconcatenation is {:?}", r.status))?;
    let two_letters = w.label.starts_with('(') && w.label.matches(',').count() == 1;
    if !two_letters {
        return Err(format!("witness {} is not a two-letter word", w.label));
    }
    println!("    deconcatenation witness at {}: {} vs {}", w.label, w.lhs, w.rhs);
    Ok(())
}

fn roundtrips() -> Outcome {
    let s = sym_model(Rig::Rationals, 2, SymCaps::new(4, 3));
    let (a, b) = (s.base("A").unwrap(), s.base("B").unwrap());
    let cat = &s.cat;
    let via_m = with_derived_nabla(&with_derived_monoidal(&s, "m"), "nabla");
    for sym in ["nabla", "u"] {
        if !agree(cat, &via_m.at(sym, &a).unwrap(), &s.at(sym, &a).unwrap()) {
            return Err(format!("{sym} does not survive ∇ ↦ m ↦ ∇"));
        }
    }
    let via_nabla = with_derived_monoidal(&with_derived_nabla(&s, "nabla"), "m");
    let objs = [a.clone(), b];
    if !agree(cat, &via_nabla.structural("m", &objs).unwrap(), &s.structural("m", &objs).unwrap()) {
        return Err("m does not survive m ↦ ∇ ↦ m".into());
    }
    if !agree(cat, &via_nabla.structural("mK", &[]).unwrap(), &s.structural("mK", &[]).unwrap()) {
        return Err("mK does not survive m ↦ ∇ ↦ m".into());
    }
    let d = with_derived_d(&with_derived_eta(&s, "eta"), "d");
    if !agree(cat, &d.at("d", &a).unwrap(), &s.at("d", &a).unwrap()) {
        return Err("d ↦ η ↦ d is not the identity".into());
    }
    let e = with_derived_eta(&with_derived_d(&s, "d"), "eta");
    if !agree(cat, &e.at("eta", &a).unwrap(), &s.at("eta", &a).unwrap()) {
        return Err("η ↦ d ↦ η is not the identity".into());
    }
    Ok(())
}

fn opb_separation() -> Outcome {
    let s = sym_model(Rig::Rationals, 2, SymCaps::new(3, 3));
    let b = FreeModule::base(Rig::Rationals, 1, "B", 1);
    let m = nonadditive_b(&s, b, "sym+opB").map_err(|e| e.to_string())?;
    applicable_pass(&suites(&m, &["comonad", "bialgebra", "codereliction"]))?;
    let r = run_named(&m, &["add.zero"], &params()).remove(0);
    let w = r.status.witness().ok_or_else(|| format!("add.zero is {:?}", r.status))?;
    let survives_one_side = !w.lhs.is_zero() && w.rhs.is_zero();
    if !survives_one_side || !w.label.ends_with("⊗∅") || w.label.starts_with('∅') {
        return Err(format!("unexpected witness {}: {} vs {}", w.label, w.lhs, w.rhs));
    }
    println!("    add.zero witness at {}: {} vs {}", w.label, w.lhs, w.rhs);
    Ok(())
}

fn biproduct_completion_check() -> Outcome {
    let s = sym_model(Rig::Rationals, 2, SymCaps::new(3, 3));
    let m = biproduct_completion(&s, "sym+biprod");
    let strict = run_named(&m, &["seely.strict", "seely.strict-T"], &params());
    if let Some(r) = strict.iter().find(|r| r.status != LawStatus::Pass) {
        return Err(format!("{} is {:?}", r.name, r.status));
    }
    let cat: &Biprod<ModCat> = &m.cat;
    let (a, b) = (s.base("A").unwrap(), s.base("B").unwrap());
    let objs = [ObjList(vec![]), ObjList(vec![a.clone()]), ObjList(vec![a.clone(), b.clone()])];
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for x in &objs {
        for y in &objs {
            for z in &objs {
                let f = cat.random_arrow(&mut rng, x, y);
                let g = cat.random_arrow(&mut rng, y, z);
                let h = cat.random_arrow(&mut rng, z, x);
                let unit_l = cat.compose(&cat.id(x), &f).unwrap();
                let unit_r = cat.compose(&f, &cat.id(y)).unwrap();
                if !agree(cat, &unit_l, &f) || !agree(cat, &unit_r, &f) {
                    return Err("identity law fails in the completion".into());
                }
                let l = cat.compose(&cat.compose(&f, &g).unwrap(), &h).unwrap();
                let r = cat.compose(&f, &cat.compose(&g, &h).unwrap()).unwrap();
                if !agree(cat, &l, &r) {
                    return Err("composition is not associative in the completion".into());
                }
            }
        }
    }
    applicable_pass(&run_suite(&m, "codereliction", &params()).unwrap())
}

fn meta_consistency() -> Outcome {
    let mut models: Vec<Model<ModCat>> = Vec::new();
    for (name, base) in [
        ("sym", sym_model(Rig::Rationals, 2, SymCaps::new(3, 3))),
        ("diff", diff_model(Rig::Integers, 2, DiffCaps::new(3, 3, 3))),
    ] {
        models.push(with_derived_monoidal(&base, &format!("{name}+derived-m")));
        models.push(with_derived_d(&base, &format!("{name}+derived-d")));
        models.push(with_derived_eta(&base, &format!("{name}+derived-eta")));
        models.push(base);
    }
    let mut confirmed = [0usize; META_THEOREMS.len()];
    let mut additive = 0;
    for m in &models {
        if classify(m, &params()).verdict(Property::Additive) != Verdict::Yes {
            continue;
        }
        additive += 1;
        for (i, r) in check_meta(m, &params()).into_iter().enumerate() {
            match r.outcome {
                MetaOutcome::Violated => return Err(format!("{} violated on {}: {:?}", r.theorem, m.name, r.statuses)),
                MetaOutcome::Confirmed => confirmed[i] += 1,
                _ => {}
            }
        }
    }
    if additive < 2 {
        return Err("fewer than two additive models".into());
    }
    if let Some(i) = confirmed.iter().position(|c| *c == 0) {
        return Err(format!("{} never confirmed", META_THEOREMS[i].name));
    }
    println!("    {additive} additive models; confirmations per theorem {confirmed:?}");
    Ok(())
}

fn classification_table() -> Outcome {
    use Verdict::{No as N, NotEstablished as E, Yes as Y};
    let expected: [(&str, [Verdict; 6]); 6] = [
        ("sym", [Y, Y, Y, Y, Y, Y]),
        ("diff", [Y, Y, Y, Y, N, N]),
        ("rb", [Y, E, E, E, Y, E]),
        ("sym+opB:1", [Y, N, Y, N, Y, Y]),
        ("diff+opB:1", [Y, N, Y, N, N, N]),
        ("rb-diff", [Y, E, E, E, N, E]),
    ];
    let cfg = ModelConfig::default();
    for (name, row) in expected {
        let c = build_model(name, &cfg).map_err(|e| e.to_string())?.classify(&params());
        for (p, want) in Property::ALL.iter().zip(row) {
            let cell = c.cell(*p);
            if cell.verdict != want {
                return Err(format!("{name}/{p}: got {:?}, want {want:?}: {:?}", cell.verdict, cell.evidence));
            }
            if want != Y && cell.notes.is_empty() {
                return Err(format!("{name}/{p} carries no honesty flag"));
            }
        }
        if name.starts_with("rb") {
            let flags = c.cell(Property::Additive).notes.join(" ");
            if !flags.contains("deconcatenation") || !flags.contains("dimension") {
                return Err(format!("{name}/additive lacks the obstruction notes"));
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 8] = [
        ("1 sym full pass", sym_full_pass, 60),
        ("2 diff refutation", diff_refutation, 120),
        ("3 rb positive", rb_positive, 120),
        ("4 roundtrip bijections", roundtrips, 30),
        ("5 !^B separation", opb_separation, 60),
        ("6 biproduct completion", biproduct_completion_check, 90),
        ("7 meta-theorem consistency", meta_consistency, 600),
        ("8 classification table", classification_table, 600),
    ];
    let mut failed = Vec::new();
    for (name, check, budget) in criteria {
        let t = Instant::now();
        let mut outcome = check();
        let took = t.elapsed();
        if outcome.is_ok() && took > Duration::from_secs(budget) {
            outcome = Err(format!("took {took:.1?}, budget {budget}s"));
        }
        match &outcome {
            Ok(()) => println!("PASS criterion {name} ({took:.2?})"),
            Err(e) => {
                println!("FAIL criterion {name} ({took:.2?}): {e}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}
