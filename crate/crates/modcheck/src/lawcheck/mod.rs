//! Law catalog, suite runner and classification.

mod catalog;
mod classify;
mod meta;
mod runner;

pub use catalog::{catalog, law, list_laws, parse_catalog, Applies, CatalogError, Law, Quantification, Reading};
pub use classify::{classify, classify_with, Cell, Classification, Property, Verdict};
pub use meta::{check_meta, judge as judge_meta, Conclusion, MetaOutcome, MetaReport, MetaTheorem, Truth, META_THEOREMS};
pub use runner::{
    by_name, expand_suite, missing_requirements, run_law, run_named, run_suite, suite_laws, LawReport, LawStatus,
    RunParams, SuiteError, SUITES,
};

#[cfg(test)]
mod tests;
