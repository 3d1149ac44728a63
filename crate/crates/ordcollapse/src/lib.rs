//! Ordinal notations relativized to a hereditarily finite set.
//!
//! The notation system is parameterized by the set-theoretic rank `theta` of a
//! hereditarily finite set `X`. Terms denote ordinals built from 0, the
//! strongly critical ordinals `G_0 ..= G_theta`, the admissible stages
//! `O_0, O_1, ..., O_w`, closed under Cantor normal form sums, the binary
//! Veblen function `phi`, and the collapsing functions `psi_n`.
//!
//! Modules:
//! - [`hf`]: hereditarily finite sets (parsing, rank, transitive closure);
//! - [`context`]: the `theta` parameter and resource limits;
//! - [`term`]: term representation, complexity, normal-form validation;
//! - [`parse`]: the term grammar;
//! - [`order`]: the term ordering with optional rule traces;
//! - [`arith`]: normalizing arithmetic (sums, omega powers, Veblen, collapse)
//!   and the provable-stage bounds for the three set theories;
//! - [`rs`]: the ramified set-theory calculus (terms, formulas, ranks, levels,
//!   characteristic premise sets);
//! - [`oracle`]: independent cross-checking oracles and the self-check
//!   property suite.

pub mod arith;
pub mod context;
pub mod hf;
pub mod oracle;
pub mod order;
pub mod parse;
pub mod rs;
pub mod term;

pub use context::{Limits, ThetaContext};
pub use hf::HfSet;
pub use order::{compare, compare_traced, is_additive_principal, is_strongly_critical};
pub use term::{OmegaIndex, OrdTerm, TermNode};
