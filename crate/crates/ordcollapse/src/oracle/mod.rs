//! Independent verification machinery: exhaustive term enumeration, a
//! brute-force closure-set oracle, a second comparator for the
//! Omega/psi-free fragment, and a seeded property suite.

pub mod brute;
pub mod cnf;
pub mod suite;
pub mod universe;

use thiserror::Error;

use crate::term::Diagnostic;

pub use brute::{bruteforce_b, classify_disagreement, closure_member, BruteResult, DisagreementClass};
pub use cnf::cnf_oracle_compare;
pub use suite::{
    run_property_suite, sample_formula, sample_term, FailureCase, PropertyReport, SuiteReport,
    SuiteSizes,
};
pub use universe::{enumerate, order_type, Universe, UniverseParams};

/// Failure of an oracle operation (not of a checked property — those are
/// report entries).
#[derive(Clone, Debug, Error, PartialEq)]
pub enum OracleError {
    /// Enumeration hit the configured size guard.
    #[error("universe exceeds the configured size cap {cap}")]
    UniverseTooLarge { cap: usize },
    /// Closure oracles need a subterm-closed universe: no value cap, full
    /// atom set.
    #[error("operation requires an unrestricted universe (no value cap, all atoms)")]
    RestrictedUniverse,
    /// The term is not a member of the universe.
    #[error("not a universe member: {term}")]
    NotInUniverse { term: String },
    /// The independent comparator only covers Omega/psi-free terms.
    #[error("outside the Omega/psi-free fragment: {term}")]
    OutsideFragment { term: String },
    /// An input term failed validation.
    #[error(transparent)]
    Invalid(#[from] Diagnostic),
}
