//! Pair suites, exhaustive corpora and hierarchy checks.

pub mod enumerate;
pub mod generate;
pub mod search;
pub mod suite;

pub use enumerate::{corpus, enumerate_all, MAX_ENUMERATION_ORDER};
pub use generate::{generate, GraphKind};
pub use search::{search_counterexamples, Counterexample, CounterexamplePredicate};
pub use suite::{run_suite, HierarchyReport, NamedPair, PairSuite, Violation};
