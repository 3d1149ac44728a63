//! Ordinal measures on calculus terms and formulas: levels, ranks, the set
//! of occurring levels, natural sums of ranks, and the Sigma-shape check
//! used by the collapsing machinery.

use std::cmp::Ordering;

use crate::arith::{add, natural_sum, omega_power, omega_times};
use crate::order::cmp_terms;
use crate::rs::ast::{validate_formula, validate_term, RsFormula, RsTerm};
use crate::rs::{RsContext, RsError};
use crate::term::{OmegaIndex, OrdTerm};

/// `Gamma_(theta+1)`, the least level of a stage term, written as the
/// collapse of 0.
fn gamma_theta_plus_one() -> OrdTerm {
    OrdTerm::psi(0, OrdTerm::zero())
}

/// The level of the stage `L_alpha`, `Gamma_(theta+1) + alpha`.
pub(crate) fn stage_level(alpha: &OrdTerm) -> OrdTerm {
    add(&gamma_theta_plus_one(), alpha)
}

/// The level of a closed term; callers must have validated it.
pub(crate) fn level_raw(t: &RsTerm, _ctx: &RsContext) -> OrdTerm {
    match t {
        RsTerm::Var(_) => unreachable!("level of an open term"),
        RsTerm::Basic(u) => OrdTerm::gamma(u.rank()),
        RsTerm::LStage(alpha) | RsTerm::Sep(alpha, _) => stage_level(alpha),
    }
}

/// The level of a term: how early the named set appears in the relativized
/// constructible hierarchy.
pub fn level(t: &RsTerm, ctx: &RsContext) -> Result<OrdTerm, RsError> {
    validate_term(t, ctx)?;
    Ok(level_raw(t, ctx))
}

/// The rank of a term; see [`rank_formula`] for the formula clauses.
pub fn rank_term(t: &RsTerm, ctx: &RsContext) -> Result<OrdTerm, RsError> {
    validate_term(t, ctx)?;
    Ok(rank_term_raw(t, ctx))
}

fn rank_term_raw(t: &RsTerm, ctx: &RsContext) -> OrdTerm {
    match t {
        RsTerm::Var(_) => unreachable!("rank of an open term"),
        RsTerm::Basic(u) => OrdTerm::gamma(u.rank()),
        RsTerm::LStage(alpha) => add(&gamma_theta_plus_one(), &omega_times(alpha)),
        RsTerm::Sep(alpha, body) => {
            let stage_rank = add(&gamma_theta_plus_one(), &omega_times(alpha));
            let at_empty = crate::rs::ast::subst(body, &RsTerm::basic_empty());
            max_term(
                add(&stage_rank, &OrdTerm::one()),
                add(&rank_formula_raw(&at_empty, ctx), &OrdTerm::numeral(2)),
            )
        }
    }
}

/// The rank of a closed formula, the induction measure for cut elimination.
pub fn rank_formula(a: &RsFormula, ctx: &RsContext) -> Result<OrdTerm, RsError> {
    validate_formula(a, ctx)?;
    Ok(rank_formula_raw(a, ctx))
}

fn rank_formula_raw(a: &RsFormula, ctx: &RsContext) -> OrdTerm {
    match a {
        RsFormula::In(s, t) | RsFormula::NotIn(s, t) => max_term(
            add(&rank_term_raw(s, ctx), &OrdTerm::numeral(6)),
            add(&rank_term_raw(t, ctx), &OrdTerm::one()),
        ),
        RsFormula::Ad(t) | RsFormula::NotAd(t) => {
            add(&rank_term_raw(t, ctx), &OrdTerm::numeral(5))
        }
        RsFormula::And(l, r) | RsFormula::Or(l, r) => add(
            &max_term(rank_formula_raw(l, ctx), rank_formula_raw(r, ctx)),
            &OrdTerm::one(),
        ),
        RsFormula::All(t, body) | RsFormula::Ex(t, body) => {
            let at_empty = crate::rs::ast::subst(body, &RsTerm::basic_empty());
            max_term(
                rank_term_raw(t, ctx),
                add(&rank_formula_raw(&at_empty, ctx), &OrdTerm::numeral(2)),
            )
        }
    }
}

fn max_term(a: OrdTerm, b: OrdTerm) -> OrdTerm {
    if cmp_terms(&a, &b) == Ordering::Less {
        b
    } else {
        a
    }
}

/// The set of levels of all terms occurring in the formula, including
/// closed terms inside separation bodies; sorted, deduplicated.
pub fn k_set(a: &RsFormula, ctx: &RsContext) -> Result<Vec<OrdTerm>, RsError> {
    validate_formula(a, ctx)?;
    let mut out = Vec::new();
    collect_levels_formula(a, ctx, &mut out);
    out.sort_by(cmp_terms);
    out.dedup();
    Ok(out)
}

/// The union of [`k_set`] over a set of formulas.
pub fn k_set_many(formulas: &[RsFormula], ctx: &RsContext) -> Result<Vec<OrdTerm>, RsError> {
    let mut out = Vec::new();
    for a in formulas {
        validate_formula(a, ctx)?;
        collect_levels_formula(a, ctx, &mut out);
    }
    out.sort_by(cmp_terms);
    out.dedup();
    Ok(out)
}

fn collect_levels_formula(a: &RsFormula, ctx: &RsContext, out: &mut Vec<OrdTerm>) {
    match a {
        RsFormula::In(s, t) | RsFormula::NotIn(s, t) => {
            collect_levels_term(s, ctx, out);
            collect_levels_term(t, ctx, out);
        }
        RsFormula::Ad(t) | RsFormula::NotAd(t) => collect_levels_term(t, ctx, out),
        RsFormula::And(l, r) | RsFormula::Or(l, r) => {
            collect_levels_formula(l, ctx, out);
            collect_levels_formula(r, ctx, out);
        }
        RsFormula::All(t, b) | RsFormula::Ex(t, b) => {
            collect_levels_term(t, ctx, out);
            collect_levels_formula(b, ctx, out);
        }
    }
}

fn collect_levels_term(t: &RsTerm, ctx: &RsContext, out: &mut Vec<OrdTerm>) {
    match t {
        RsTerm::Var(_) => {}
        RsTerm::Basic(_) | RsTerm::LStage(_) => out.push(level_raw(t, ctx)),
        RsTerm::Sep(_, body) => {
            out.push(level_raw(t, ctx));
            collect_levels_formula(body, ctx, out);
        }
    }
}

/// The natural sum of `w^(rank(A))` over the distinct formulas of the set,
/// the termination measure for the embedding lemmas.
pub fn sharp(formulas: &[RsFormula], ctx: &RsContext) -> Result<OrdTerm, RsError> {
    let mut seen: Vec<&RsFormula> = Vec::new();
    let mut total = OrdTerm::zero();
    for a in formulas {
        if seen.contains(&a) {
            continue;
        }
        seen.push(a);
        let rank = rank_formula(a, ctx)?;
        total = natural_sum(&total, &omega_power(&rank));
    }
    Ok(total)
}

/// Checks the machine-readable Sigma shape relative to the stage `O_n`:
/// every term mentioned outright has level below `O_n`, every universal
/// quantifier is bounded below `O_n`, and existential bounds may also be
/// the relativization stage of level exactly `O_n`.
pub fn is_sigma_level(a: &RsFormula, n: OmegaIndex, ctx: &RsContext) -> Result<bool, RsError> {
    validate_formula(a, ctx)?;
    let cap = match n {
        OmegaIndex::Finite(k) => OrdTerm::omega(k),
        OmegaIndex::Omega => OrdTerm::omega_limit(),
    };
    Ok(sigma_check(a, &cap, ctx))
}

fn sigma_check(a: &RsFormula, cap: &OrdTerm, ctx: &RsContext) -> bool {
    match a {
        RsFormula::In(s, t) | RsFormula::NotIn(s, t) => {
            param_below(s, cap, ctx) && param_below(t, cap, ctx)
        }
        RsFormula::Ad(t) | RsFormula::NotAd(t) => param_below(t, cap, ctx),
        RsFormula::And(l, r) | RsFormula::Or(l, r) => {
            sigma_check(l, cap, ctx) && sigma_check(r, cap, ctx)
        }
        RsFormula::All(t, b) => param_below(t, cap, ctx) && sigma_check(b, cap, ctx),
        RsFormula::Ex(t, b) => {
            let bound_ok = match t {
                RsTerm::Var(_) => true,
                RsTerm::LStage(_) => {
                    cmp_terms(&level_raw(t, ctx), cap) != Ordering::Greater
                }
                _ => param_below(t, cap, ctx),
            };
            bound_ok && sigma_check(b, cap, ctx)
        }
    }
}

fn param_below(t: &RsTerm, cap: &OrdTerm, ctx: &RsContext) -> bool {
    match t {
        RsTerm::Var(_) => true,
        _ => cmp_terms(&level_raw(t, ctx), cap) == Ordering::Less,
    }
}
