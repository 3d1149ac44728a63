//! The finitary syntax layer of the relativized proof calculus: terms
//! anchored to a hereditarily finite set, closed formulas with their
//! disjunctive/conjunctive classification, and the measures (level, rank,
//! occurring-level sets, characteristic premises) that drive cut
//! elimination.

pub mod ast;
pub mod measures;
pub mod parse;
pub mod premises;

use thiserror::Error;

use crate::context::{Limits, ThetaContext};
use crate::hf::{HfError, HfSet};
use crate::term::{Diagnostic, OrdTerm};

pub use ast::{
    eq, formula_type, implies, negate, neq, subst, validate_formula, validate_term, FormulaType,
    RsFormula, RsTerm,
};
pub use measures::{is_sigma_level, k_set, k_set_many, level, rank_formula, rank_term, sharp};
pub use parse::{parse_formula, parse_rs_term, RsParseError};
pub use premises::{char_term, characteristic_premises, dot_in, Connective, Premise};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum RsError {
    #[error(transparent)]
    Ordinal(#[from] Diagnostic),
    #[error(transparent)]
    Set(#[from] HfError),
    /// A basic term names a set outside the transitive closure of the
    /// context set.
    #[error("basic term {0} does not occur in the transitive closure of the context set")]
    UnknownBasic(String),
    #[error("stage subscript {alpha} exceeds O_w")]
    StageTooHigh { alpha: OrdTerm },
    #[error("separation stage {alpha} must be strictly below O_w")]
    SepStageTooHigh { alpha: OrdTerm },
    #[error("term {term} has level {level}, which must be below {cap}")]
    LevelTooHigh { term: String, level: OrdTerm, cap: OrdTerm },
    #[error("a variable occurs outside the scope of any binder")]
    OpenFormula,
    #[error("membership in a basic term needs a basic witness, got {witness}")]
    NonBasicWitness { witness: String },
    #[error("basic formulas are axioms and have no characteristic premises")]
    BasicFormula,
    #[error("the formula is not a characteristic premise of the given formula")]
    NotAPremise,
}

/// Everything the calculus is relative to: the anchor set, its set-theoretic
/// rank theta, and the transitive closure supplying the basic terms.
#[derive(Clone, Debug)]
pub struct RsContext {
    theta_ctx: ThetaContext,
    x: HfSet,
    tc: Vec<HfSet>,
}

impl RsContext {
    /// Context anchored to a concrete set; theta is its rank.
    pub fn with_set(x: HfSet, limits: Limits) -> Result<RsContext, RsError> {
        let tc = x.transitive_closure(&limits)?;
        let theta_ctx = ThetaContext::with_limits(x.rank(), limits);
        Ok(RsContext { theta_ctx, x, tc })
    }

    /// Context for a bare rank: anchors to the singleton chain
    /// `{}, {{}}, {{{}}}, ...` of the requested rank, the smallest set
    /// realizing every basic-term rank up to theta.
    pub fn new(theta: u32, limits: Limits) -> Result<RsContext, RsError> {
        let mut x = HfSet::empty();
        for _ in 0..theta {
            x = HfSet::new(vec![x]);
        }
        RsContext::with_set(x, limits)
    }

    pub fn theta_ctx(&self) -> &ThetaContext {
        &self.theta_ctx
    }

    pub fn theta(&self) -> u32 {
        self.theta_ctx.theta
    }

    pub fn x(&self) -> &HfSet {
        &self.x
    }

    /// The basic-term universe: the transitive closure of `{x}`, sorted by
    /// rank then representation.
    pub fn basics(&self) -> &[HfSet] {
        &self.tc
    }

    pub fn contains_basic(&self, u: &HfSet) -> bool {
        self.tc.binary_search(u).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_context_realizes_every_rank() {
        let ctx = RsContext::new(3, Limits::default()).unwrap();
        assert_eq!(ctx.theta(), 3);
        assert_eq!(ctx.basics().len(), 4);
        for (i, u) in ctx.basics().iter().enumerate() {
            assert_eq!(u.rank(), i as u32);
            assert!(ctx.contains_basic(u));
        }
    }

    #[test]
    fn set_context_takes_theta_from_the_set() {
        let pair = HfSet::new(vec![HfSet::empty(), HfSet::new(vec![HfSet::empty()])]);
        let ctx = RsContext::with_set(pair.clone(), Limits::default()).unwrap();
        assert_eq!(ctx.theta(), 2);
        assert!(ctx.contains_basic(&pair));
        assert!(ctx.contains_basic(&HfSet::empty()));
        assert_eq!(ctx.basics().len(), 3);
    }
}
