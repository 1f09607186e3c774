use super::*;

#[test]
fn catalog_parses_and_is_large() {
    assert!(catalog().len() >= 55, "{}", catalog().len());
}

#[test]
fn filters_by_prefix() {
    let names: Vec<&str> = list_laws(Some("dC")).iter().map(|l| l.name.as_str()).collect();
    assert_eq!(names, ["dC.1", "dC.2", "dC.3", "dC.4", "dC.4'", "dC.m"]);
    let seely: Vec<&str> = list_laws(Some("seely")).iter().map(|l| l.name.as_str()).collect();
    assert!(seely.contains(&"seelyish") && seely.contains(&"seely.chi-inv"));
}

#[test]
fn rejects_malformed_catalogs() {
    assert!(parse_catalog("anchor: x").is_err());
    assert!(parse_catalog("law a\nanchor: x\nsuite: s\nlhs: id[A]").is_err());
    assert!(parse_catalog("law a\nanchor: x\nsuite: s\nlhs: id[A\nrhs: id[A]").is_err());
    let two = "law a\nanchor: x\nsuite: s\nlhs: id[A]\nrhs: id[A]\n";
    assert!(matches!(parse_catalog(&format!("{two}{two}")), Err(CatalogError::Duplicate(_))));
    assert_eq!(parse_catalog(two).unwrap().len(), 1);
}

#[test]
fn meta_judgement_truth_table() {
    use Truth::*;
    let [m1, _, m3, _] = &META_THEOREMS;
    assert_eq!(judge_meta(m1, &[Fails], &[Holds, Fails]), MetaOutcome::Vacuous);
    assert_eq!(judge_meta(m1, &[Unknown], &[Holds, Holds]), MetaOutcome::Inconclusive);
    assert_eq!(judge_meta(m1, &[Holds], &[Holds, Holds]), MetaOutcome::Confirmed);
    assert_eq!(judge_meta(m1, &[Holds], &[Fails, Fails]), MetaOutcome::Confirmed);
    assert_eq!(judge_meta(m1, &[Holds], &[Holds, Fails]), MetaOutcome::Violated);
    assert_eq!(judge_meta(m1, &[Holds], &[Holds, Unknown]), MetaOutcome::Inconclusive);
    assert_eq!(judge_meta(m3, &[Holds], &[Fails]), MetaOutcome::Violated);
    assert_eq!(judge_meta(m3, &[Holds], &[Holds]), MetaOutcome::Confirmed);
}

#[test]
fn truth_reads_statuses() {
    assert_eq!(Truth::of(&LawStatus::Pass), Truth::Holds);
    assert_eq!(Truth::of(&LawStatus::FrontierLimited { checked_through: Some(0) }), Truth::Holds);
    assert_eq!(Truth::of(&LawStatus::FrontierLimited { checked_through: None }), Truth::Unknown);
    assert_eq!(Truth::of(&LawStatus::Skipped { reason: String::new() }), Truth::Unknown);
}

#[test]
fn composite_suites_expand() {
    assert_eq!(expand_suite("all").unwrap().len(), SUITES.len());
    assert!(!expand_suite("all").unwrap().contains(&"rb-obstruction"));
    assert_eq!(expand_suite("rb-obstruction").unwrap(), ["rb-obstruction"]);
    assert!(expand_suite("nosuch").is_err());
}
