//! Empirical side of the structure theory: lemma predicates, the degree-sum
//! check on near-colorings, discharging, and exhaustive small-graph sweeps.

pub mod discharge;
pub mod enumerate;
pub mod fact2;
pub mod lemmas;
pub mod sweep;

pub use discharge::{discharge, discharging_contradiction_report, ChargeState, RuleSet};
pub use fact2::{fact2_verify, Fact2Check};
pub use lemmas::{lemma_suite, LemmaId, LemmaPredicateResult, LemmaStatus};
