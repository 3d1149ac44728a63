//! Characteristic premises: for each non-basic formula, the premises from
//! which one derivation step concludes it, together with the characteristic
//! term controlling the premise's operator.

use std::cmp::Ordering;

use crate::order::cmp_terms;
use crate::rs::ast::{eq, formula_type, negate, subst, validate_formula, FormulaType};
use crate::rs::measures::level_raw;
use crate::rs::{RsContext, RsError, RsFormula, RsTerm};
use crate::term::OrdTerm;

/// Connective joining the membership expansion to the inner formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connective {
    And,
    Implies,
}

/// The guarded-membership expansion `s in-dot t ∘ inner`: a real membership
/// conjunct for basic terms, nothing for stages, the body instance for
/// separation terms.
///
/// Requires `level(s) < level(t)`; membership in a basic term additionally
/// needs a basic witness.
pub fn dot_in(
    s: &RsTerm,
    t: &RsTerm,
    conn: Connective,
    inner: RsFormula,
    ctx: &RsContext,
) -> Result<RsFormula, RsError> {
    crate::rs::ast::validate_term(s, ctx)?;
    crate::rs::ast::validate_term(t, ctx)?;
    let (ls, lt) = (level_raw(s, ctx), level_raw(t, ctx));
    if cmp_terms(&ls, &lt) != Ordering::Less {
        return Err(RsError::LevelTooHigh { term: s.to_string(), level: ls, cap: lt });
    }
    match t {
        RsTerm::Var(_) => Err(RsError::OpenFormula),
        RsTerm::Basic(_) => {
            if !matches!(s, RsTerm::Basic(_)) {
                return Err(RsError::NonBasicWitness { witness: s.to_string() });
            }
            Ok(combine(conn, RsFormula::In(s.clone(), t.clone()), inner))
        }
        RsTerm::LStage(_) => Ok(inner),
        RsTerm::Sep(_, body) => Ok(combine(conn, subst(body, s), inner)),
    }
}

fn combine(conn: Connective, guard: RsFormula, inner: RsFormula) -> RsFormula {
    match conn {
        Connective::And => RsFormula::and(guard, inner),
        Connective::Implies => RsFormula::or(negate(&guard), inner),
    }
}

/// One characteristic premise: the formula and the characteristic term
/// whose level joins the controlling operator.
#[derive(Clone, Debug, PartialEq)]
pub struct Premise {
    pub formula: RsFormula,
    pub term: RsTerm,
}

/// Enumerates the characteristic premises of a non-basic formula whose
/// characteristic terms have level below `level_cap`.
///
/// Witness terms are drawn from a deterministic pool: every basic term of
/// the context plus stages for a fixed subscript palette (the full premise
/// family is infinite for membership and quantifier formulas).
pub fn characteristic_premises(
    a: &RsFormula,
    level_cap: &OrdTerm,
    ctx: &RsContext,
) -> Result<Vec<Premise>, RsError> {
    validate_formula(a, ctx)?;
    crate::term::validate(level_cap, ctx.theta_ctx())?;
    match formula_type(a) {
        FormulaType::Basic => Err(RsError::BasicFormula),
        FormulaType::Disjunctive => {
            let raw = disjunctive_premises(a, level_cap, ctx)?;
            // The characteristic term of a disjunctive premise is L_0.
            Ok(raw
                .into_iter()
                .map(|(formula, _)| Premise { formula, term: RsTerm::LStage(OrdTerm::zero()) })
                .collect())
        }
        FormulaType::Conjunctive => {
            let raw = disjunctive_premises(&negate(a), level_cap, ctx)?;
            let conjunction = matches!(a, RsFormula::And(..));
            Ok(raw
                .into_iter()
                .map(|(formula, witness)| Premise {
                    formula: negate(&formula),
                    term: if conjunction { RsTerm::LStage(OrdTerm::zero()) } else { witness },
                })
                .collect())
        }
    }
}

/// The characteristic term `t_A(B)` of a premise `B` of `A`: the witness
/// for conjunctive non-conjunctions, `L_0` otherwise.
pub fn char_term(
    a: &RsFormula,
    b: &RsFormula,
    level_cap: &OrdTerm,
    ctx: &RsContext,
) -> Result<RsTerm, RsError> {
    characteristic_premises(a, level_cap, ctx)?
        .into_iter()
        .find(|p| &p.formula == b)
        .map(|p| p.term)
        .ok_or(RsError::NotAPremise)
}

/// Premises of a disjunctive formula, each with the witness term it came
/// from (`L_0` where no witness is involved).
fn disjunctive_premises(
    a: &RsFormula,
    level_cap: &OrdTerm,
    ctx: &RsContext,
) -> Result<Vec<(RsFormula, RsTerm)>, RsError> {
    let l0 = RsTerm::LStage(OrdTerm::zero());
    match a {
        RsFormula::Or(l, r) => {
            Ok(vec![((**l).clone(), l0.clone()), ((**r).clone(), l0)])
        }
        RsFormula::Ad(t) => {
            let t_level = level_raw(t, ctx);
            let mut out = Vec::new();
            for n in 0..=ctx.theta_ctx().limits.max_subscript {
                let omega_n = OrdTerm::omega(n);
                // Premise t = L_(O_n) exists for O_n <= |t|, under the cap.
                if cmp_terms(&omega_n, &t_level) == Ordering::Greater {
                    break;
                }
                if cmp_terms(&omega_n, level_cap) != Ordering::Less {
                    break;
                }
                let stage = RsTerm::LStage(omega_n);
                out.push((eq(t, &stage), stage));
            }
            Ok(out)
        }
        RsFormula::In(r, t) => {
            let mut out = Vec::new();
            for s in witnesses(t, level_cap, ctx) {
                let premise = dot_in(&s, t, Connective::And, eq(r, &s), ctx)?;
                out.push((premise, s));
            }
            Ok(out)
        }
        RsFormula::Ex(t, body) => {
            let mut out = Vec::new();
            for s in witnesses(t, level_cap, ctx) {
                let premise = dot_in(&s, t, Connective::And, subst(body, &s), ctx)?;
                out.push((premise, s));
            }
            Ok(out)
        }
        // Callers dispatch on the formula type, so `a` is disjunctive and
        // non-basic here.
        _ => unreachable!("premises of a non-disjunctive formula"),
    }
}

/// The deterministic witness pool below both the target's level and the
/// cap: all basic terms, then stages for the palette
/// 0, 1, 2, w, O_0..O_max, O_w.
fn witnesses(t: &RsTerm, level_cap: &OrdTerm, ctx: &RsContext) -> Vec<RsTerm> {
    let t_level = level_raw(t, ctx);
    let cap = if cmp_terms(&t_level, level_cap) == Ordering::Less { &t_level } else { level_cap };
    let mut pool: Vec<RsTerm> =
        ctx.basics().iter().map(|u| RsTerm::Basic(u.clone())).collect();
    let mut palette = vec![OrdTerm::zero(), OrdTerm::one(), OrdTerm::numeral(2), OrdTerm::omega_order_type()];
    for n in 0..=ctx.theta_ctx().limits.max_subscript {
        palette.push(OrdTerm::omega(n));
    }
    palette.push(OrdTerm::omega_limit());
    pool.extend(palette.into_iter().map(RsTerm::LStage));
    pool.retain(|s| cmp_terms(&level_raw(s, ctx), cap) == Ordering::Less);
    pool
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Limits;
    use crate::hf::HfSet;
    use crate::rs::ast::neq;

    fn ctx() -> RsContext {
        RsContext::new(1, Limits::default()).unwrap()
    }

    fn small_ctx() -> RsContext {
        let mut limits = Limits::default();
        limits.max_subscript = 2;
        RsContext::new(1, limits).unwrap()
    }

    fn l(alpha: OrdTerm) -> RsTerm {
        RsTerm::LStage(alpha)
    }

    #[test]
    fn dot_in_expands_per_target_shape() {
        let c = ctx();
        let empty = RsTerm::basic_empty();
        let one_set = RsTerm::Basic(HfSet::new(vec![HfSet::empty()]));
        let inner = RsFormula::Ad(l(OrdTerm::zero()));
        // Basic target: a real membership conjunct.
        assert_eq!(
            dot_in(&empty, &one_set, Connective::And, inner.clone(), &c).unwrap(),
            RsFormula::and(RsFormula::In(empty.clone(), one_set.clone()), inner.clone())
        );
        assert_eq!(
            dot_in(&empty, &one_set, Connective::Implies, inner.clone(), &c).unwrap(),
            RsFormula::or(RsFormula::NotIn(empty.clone(), one_set.clone()), inner.clone())
        );
        // Stage target: the inner formula alone.
        assert_eq!(
            dot_in(&empty, &l(OrdTerm::omega(0)), Connective::And, inner.clone(), &c).unwrap(),
            inner
        );
        // Separation target: the body instance as guard.
        let sep = RsTerm::sep(
            OrdTerm::one(),
            RsFormula::In(RsTerm::Var(0), l(OrdTerm::zero())),
        );
        let got = dot_in(&empty, &sep, Connective::And, RsFormula::Ad(empty.clone()), &c).unwrap();
        assert_eq!(
            got,
            RsFormula::and(
                RsFormula::In(empty.clone(), l(OrdTerm::zero())),
                RsFormula::Ad(empty.clone()),
            )
        );
        // Level precondition.
        assert!(matches!(
            dot_in(&l(OrdTerm::one()), &empty, Connective::And, RsFormula::Ad(empty.clone()), &c),
            Err(RsError::LevelTooHigh { .. })
        ));
    }

    #[test]
    fn or_premises_are_the_disjuncts() {
        let c = ctx();
        let a = RsFormula::Ad(l(OrdTerm::zero()));
        let b = RsFormula::NotAd(l(OrdTerm::one()));
        let got =
            characteristic_premises(&RsFormula::or(a.clone(), b.clone()), &OrdTerm::omega(2), &c)
                .unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(got[0].formula, a);
        assert_eq!(got[1].formula, b);
        assert!(got.iter().all(|p| p.term == l(OrdTerm::zero())));
        // And-premises are the conjuncts, too, via negation.
        let got =
            characteristic_premises(&RsFormula::and(a.clone(), b.clone()), &OrdTerm::omega(2), &c)
                .unwrap();
        assert_eq!(got[0].formula, a);
        assert_eq!(got[1].formula, b);
        assert!(got.iter().all(|p| p.term == l(OrdTerm::zero())));
    }

    #[test]
    fn ad_premises_enumerate_stages_up_to_the_level() {
        let c = small_ctx();
        // |L_(O_1 + 1)| = O_1 + 1, so O_0 and O_1 qualify.
        let t = l(OrdTerm::sum(vec![OrdTerm::omega(1), OrdTerm::one()]));
        let got = characteristic_premises(&RsFormula::Ad(t.clone()), &OrdTerm::omega_limit(), &c)
            .unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(got[0].formula, eq(&t, &l(OrdTerm::omega(0))));
        assert_eq!(got[1].formula, eq(&t, &l(OrdTerm::omega(1))));
        // Disjunctive characteristic terms are all L_0.
        assert!(got.iter().all(|p| p.term == l(OrdTerm::zero())));
        // The equal-level stage qualifies: O_0 <= |L_(O_0)|.
        let t0 = l(OrdTerm::omega(0));
        let got = characteristic_premises(&RsFormula::Ad(t0.clone()), &OrdTerm::omega_limit(), &c)
            .unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].formula, eq(&t0, &l(OrdTerm::omega(0))));
        // The negated form keeps the stage as characteristic term.
        let got = characteristic_premises(&RsFormula::NotAd(t0.clone()), &OrdTerm::omega_limit(), &c)
            .unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].formula, neq(&t0, &l(OrdTerm::omega(0))));
        assert_eq!(got[0].term, l(OrdTerm::omega(0)));
    }

    #[test]
    fn membership_premises_carry_equality_witnesses() {
        let c = small_ctx();
        let r = RsTerm::basic_empty();
        let t = l(OrdTerm::one());
        let a = RsFormula::In(r.clone(), t.clone());
        let got = characteristic_premises(&a, &OrdTerm::omega_limit(), &c).unwrap();
        // Witnesses below level Gamma_(theta+1)+1: the basics and L_0.
        assert_eq!(got.len(), 3);
        // Stage target: premise for witness s is just r = s.
        assert_eq!(got[0].formula, eq(&r, &RsTerm::basic_empty()));
        assert_eq!(got[2].formula, eq(&r, &l(OrdTerm::zero())));

        // Dual: not-in premises are implications with the witness recorded.
        let neg = negate(&a);
        let got_neg = characteristic_premises(&neg, &OrdTerm::omega_limit(), &c).unwrap();
        assert_eq!(got_neg.len(), 3);
        assert_eq!(got_neg[2].formula, neq(&r, &l(OrdTerm::zero())));
        assert_eq!(got_neg[2].term, l(OrdTerm::zero()));
        assert_eq!(got_neg[0].term, RsTerm::basic_empty());
    }

    #[test]
    fn quantifier_premises_instantiate_the_body() {
        let c = small_ctx();
        let t = l(OrdTerm::omega(0));
        let body = RsFormula::In(RsTerm::Var(0), l(OrdTerm::omega(0)));
        let a = RsFormula::ex(t.clone(), body.clone());
        let got = characteristic_premises(&a, &OrdTerm::omega(1), &c).unwrap();
        assert!(!got.is_empty());
        // Stage-bounded: each premise is body[s] alone; find the L_w witness.
        let lw = l(OrdTerm::omega_order_type());
        assert!(got
            .iter()
            .any(|p| p.formula == RsFormula::In(lw.clone(), l(OrdTerm::omega(0)))));
        // Universal dual keeps witnesses as characteristic terms.
        let dual = characteristic_premises(&negate(&a), &OrdTerm::omega(1), &c).unwrap();
        assert!(dual
            .iter()
            .any(|p| p.formula == RsFormula::NotIn(lw.clone(), l(OrdTerm::omega(0)))
                && p.term == lw));
    }

    #[test]
    fn char_term_looks_up_the_premise() {
        let c = small_ctx();
        let t0 = l(OrdTerm::omega(0));
        let a = RsFormula::NotAd(t0.clone());
        let b = neq(&t0, &l(OrdTerm::omega(0)));
        assert_eq!(
            char_term(&a, &b, &OrdTerm::omega_limit(), &c).unwrap(),
            l(OrdTerm::omega(0))
        );
        let stranger = RsFormula::Ad(t0.clone());
        assert!(matches!(
            char_term(&a, &stranger, &OrdTerm::omega_limit(), &c),
            Err(RsError::NotAPremise)
        ));
    }

    #[test]
    fn basic_formulas_have_no_premises() {
        let c = ctx();
        let a = RsFormula::In(RsTerm::basic_empty(), RsTerm::basic_empty());
        assert!(matches!(
            characteristic_premises(&a, &OrdTerm::omega_limit(), &c),
            Err(RsError::BasicFormula)
        ));
    }
}
