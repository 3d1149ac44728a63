//! Terms and closed formulas of the relativized proof calculus.
//!
//! Bound variables use de Bruijn indices: `Var(0)` is the innermost binder.
//! Separation terms `[x in L_alpha : B(x)]` carry their body with `Var(0)`
//! as the abstracted variable; the body may not mention any outer binder, so
//! separation terms are always closed.

use std::fmt;

use crate::hf::HfSet;
use crate::rs::RsContext;
use crate::rs::RsError;
use crate::term::OrdTerm;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RsTerm {
    /// A bound variable (de Bruijn index).
    Var(u32),
    /// A set from the transitive closure of the context set.
    Basic(HfSet),
    /// The stage `L_alpha`, for alpha at most `O_w`.
    LStage(OrdTerm),
    /// The separation term `[x in L_alpha : body(x)]`, for alpha below `O_w`.
    Sep(OrdTerm, Box<RsFormula>),
}

impl RsTerm {
    pub fn basic_empty() -> RsTerm {
        RsTerm::Basic(HfSet::empty())
    }

    pub fn sep(alpha: OrdTerm, body: RsFormula) -> RsTerm {
        RsTerm::Sep(alpha, Box::new(body))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RsFormula {
    In(RsTerm, RsTerm),
    NotIn(RsTerm, RsTerm),
    Ad(RsTerm),
    NotAd(RsTerm),
    And(Box<RsFormula>, Box<RsFormula>),
    Or(Box<RsFormula>, Box<RsFormula>),
    /// Bounded universal `forall x in t . body`.
    All(RsTerm, Box<RsFormula>),
    /// Bounded existential `exists x in t . body`.
    Ex(RsTerm, Box<RsFormula>),
}

impl RsFormula {
    pub fn and(a: RsFormula, b: RsFormula) -> RsFormula {
        RsFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: RsFormula, b: RsFormula) -> RsFormula {
        RsFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn all(t: RsTerm, body: RsFormula) -> RsFormula {
        RsFormula::All(t, Box::new(body))
    }

    pub fn ex(t: RsTerm, body: RsFormula) -> RsFormula {
        RsFormula::Ex(t, Box::new(body))
    }
}

/// `A -> B`, i.e. `not A or B`.
pub fn implies(a: RsFormula, b: RsFormula) -> RsFormula {
    RsFormula::or(negate(&a), b)
}

/// The extensional equality `s = t` spelled out as
/// `forall x in s (x in t) and forall x in t (x in s)`.
///
/// Both terms must be closed (no de Bruijn shifting is performed).
pub fn eq(s: &RsTerm, t: &RsTerm) -> RsFormula {
    RsFormula::and(
        RsFormula::all(s.clone(), RsFormula::In(RsTerm::Var(0), t.clone())),
        RsFormula::all(t.clone(), RsFormula::In(RsTerm::Var(0), s.clone())),
    )
}

/// `s != t`, the negation of [`eq`].
pub fn neq(s: &RsTerm, t: &RsTerm) -> RsFormula {
    negate(&eq(s, t))
}

/// Negation by dualizing every connective; involutive.
pub fn negate(a: &RsFormula) -> RsFormula {
    match a {
        RsFormula::In(s, t) => RsFormula::NotIn(s.clone(), t.clone()),
        RsFormula::NotIn(s, t) => RsFormula::In(s.clone(), t.clone()),
        RsFormula::Ad(t) => RsFormula::NotAd(t.clone()),
        RsFormula::NotAd(t) => RsFormula::Ad(t.clone()),
        RsFormula::And(l, r) => RsFormula::or(negate(l), negate(r)),
        RsFormula::Or(l, r) => RsFormula::and(negate(l), negate(r)),
        RsFormula::All(t, b) => RsFormula::ex(t.clone(), negate(b)),
        RsFormula::Ex(t, b) => RsFormula::all(t.clone(), negate(b)),
    }
}

/// How a formula is derived: basic formulas are axioms; a disjunctive
/// formula needs one premise, a conjunctive formula a family of premises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormulaType {
    Basic,
    Disjunctive,
    Conjunctive,
}

impl fmt::Display for FormulaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FormulaType::Basic => "basic",
            FormulaType::Disjunctive => "disjunctive",
            FormulaType::Conjunctive => "conjunctive",
        };
        f.write_str(s)
    }
}

pub fn formula_type(a: &RsFormula) -> FormulaType {
    match a {
        RsFormula::In(s, t) | RsFormula::NotIn(s, t)
            if matches!(s, RsTerm::Basic(_)) && matches!(t, RsTerm::Basic(_)) =>
        {
            FormulaType::Basic
        }
        RsFormula::In(..) | RsFormula::Ad(_) | RsFormula::Or(..) | RsFormula::Ex(..) => {
            FormulaType::Disjunctive
        }
        RsFormula::NotIn(..) | RsFormula::NotAd(_) | RsFormula::And(..) | RsFormula::All(..) => {
            FormulaType::Conjunctive
        }
    }
}

/// Substitutes the closed term `s` for the outermost hole `Var(0)`,
/// decrementing deeper indices.
pub fn subst(a: &RsFormula, s: &RsTerm) -> RsFormula {
    subst_f(a, s, 0)
}

fn subst_f(a: &RsFormula, s: &RsTerm, depth: u32) -> RsFormula {
    match a {
        RsFormula::In(x, y) => RsFormula::In(subst_t(x, s, depth), subst_t(y, s, depth)),
        RsFormula::NotIn(x, y) => RsFormula::NotIn(subst_t(x, s, depth), subst_t(y, s, depth)),
        RsFormula::Ad(t) => RsFormula::Ad(subst_t(t, s, depth)),
        RsFormula::NotAd(t) => RsFormula::NotAd(subst_t(t, s, depth)),
        RsFormula::And(l, r) => RsFormula::and(subst_f(l, s, depth), subst_f(r, s, depth)),
        RsFormula::Or(l, r) => RsFormula::or(subst_f(l, s, depth), subst_f(r, s, depth)),
        RsFormula::All(t, b) => {
            RsFormula::all(subst_t(t, s, depth), subst_f(b, s, depth + 1))
        }
        RsFormula::Ex(t, b) => RsFormula::ex(subst_t(t, s, depth), subst_f(b, s, depth + 1)),
    }
}

fn subst_t(t: &RsTerm, s: &RsTerm, depth: u32) -> RsTerm {
    match t {
        RsTerm::Var(i) if *i == depth => s.clone(),
        RsTerm::Var(i) if *i > depth => RsTerm::Var(i - 1),
        RsTerm::Var(_) | RsTerm::Basic(_) | RsTerm::LStage(_) => t.clone(),
        RsTerm::Sep(alpha, body) => {
            RsTerm::sep(alpha.clone(), subst_f(body, s, depth + 1))
        }
    }
}

/// Validates a closed formula against the context: every variable bound,
/// every basic set drawn from the context's transitive closure, every stage
/// subscript in range, and separation bodies respecting the level cap.
pub fn validate_formula(a: &RsFormula, ctx: &RsContext) -> Result<(), RsError> {
    vf(a, 0, ctx)
}

/// Validates a closed term; see [`validate_formula`].
pub fn validate_term(t: &RsTerm, ctx: &RsContext) -> Result<(), RsError> {
    vt(t, 0, ctx)
}

fn vf(a: &RsFormula, depth: u32, ctx: &RsContext) -> Result<(), RsError> {
    match a {
        RsFormula::In(s, t) | RsFormula::NotIn(s, t) => {
            vt(s, depth, ctx)?;
            vt(t, depth, ctx)
        }
        RsFormula::Ad(t) | RsFormula::NotAd(t) => vt(t, depth, ctx),
        RsFormula::And(l, r) | RsFormula::Or(l, r) => {
            vf(l, depth, ctx)?;
            vf(r, depth, ctx)
        }
        RsFormula::All(t, b) | RsFormula::Ex(t, b) => {
            vt(t, depth, ctx)?;
            vf(b, depth + 1, ctx)
        }
    }
}

fn vt(t: &RsTerm, depth: u32, ctx: &RsContext) -> Result<(), RsError> {
    match t {
        RsTerm::Var(i) => {
            if *i < depth {
                Ok(())
            } else {
                Err(RsError::OpenFormula)
            }
        }
        RsTerm::Basic(u) => {
            if ctx.contains_basic(u) {
                Ok(())
            } else {
                Err(RsError::UnknownBasic(u.to_string()))
            }
        }
        RsTerm::LStage(alpha) => {
            crate::term::validate(alpha, ctx.theta_ctx())?;
            if crate::order::cmp_terms(alpha, &OrdTerm::omega_limit())
                == std::cmp::Ordering::Greater
            {
                return Err(RsError::StageTooHigh { alpha: alpha.clone() });
            }
            Ok(())
        }
        RsTerm::Sep(alpha, body) => {
            crate::term::validate(alpha, ctx.theta_ctx())?;
            if crate::order::cmp_terms(alpha, &OrdTerm::omega_limit())
                != std::cmp::Ordering::Less
            {
                return Err(RsError::SepStageTooHigh { alpha: alpha.clone() });
            }
            // Depth 1: exactly the separation binder may occur free.
            vf(body, 1, ctx)?;
            let cap = crate::rs::measures::stage_level(alpha);
            check_sep_levels(body, &cap, ctx)
        }
    }
}

/// Enforces the formation constraint of a separation body: parameter terms
/// must lie strictly below the separation's own level; a quantifier bound
/// may also be the relativization stage itself (the unique term of equal
/// level).
fn check_sep_levels(a: &RsFormula, cap: &OrdTerm, ctx: &RsContext) -> Result<(), RsError> {
    match a {
        RsFormula::In(s, t) | RsFormula::NotIn(s, t) => {
            check_param(s, cap, ctx)?;
            check_param(t, cap, ctx)
        }
        RsFormula::Ad(t) | RsFormula::NotAd(t) => check_param(t, cap, ctx),
        RsFormula::And(l, r) | RsFormula::Or(l, r) => {
            check_sep_levels(l, cap, ctx)?;
            check_sep_levels(r, cap, ctx)
        }
        RsFormula::All(t, b) | RsFormula::Ex(t, b) => {
            check_bound(t, cap, ctx)?;
            check_sep_levels(b, cap, ctx)
        }
    }
}

fn check_param(t: &RsTerm, cap: &OrdTerm, ctx: &RsContext) -> Result<(), RsError> {
    if matches!(t, RsTerm::Var(_)) {
        return Ok(());
    }
    let level = crate::rs::measures::level_raw(t, ctx);
    if crate::order::cmp_terms(&level, cap) == std::cmp::Ordering::Less {
        Ok(())
    } else {
        Err(RsError::LevelTooHigh { term: display_closed(t), level, cap: cap.clone() })
    }
}

fn check_bound(t: &RsTerm, cap: &OrdTerm, ctx: &RsContext) -> Result<(), RsError> {
    if matches!(t, RsTerm::Var(_)) {
        return Ok(());
    }
    let level = crate::rs::measures::level_raw(t, ctx);
    match crate::order::cmp_terms(&level, cap) {
        std::cmp::Ordering::Less => Ok(()),
        std::cmp::Ordering::Equal if matches!(t, RsTerm::LStage(_)) => Ok(()),
        _ => Err(RsError::LevelTooHigh { term: display_closed(t), level, cap: cap.clone() }),
    }
}

fn display_closed(t: &RsTerm) -> String {
    t.to_string()
}

fn binder_name(depth: u32) -> String {
    match depth {
        0 => "x".to_string(),
        1 => "y".to_string(),
        2 => "z".to_string(),
        d => format!("x{d}"),
    }
}

impl fmt::Display for RsTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, f, 0)
    }
}

impl fmt::Display for RsFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f, 0)
    }
}

fn write_term(t: &RsTerm, f: &mut fmt::Formatter<'_>, depth: u32) -> fmt::Result {
    match t {
        RsTerm::Var(i) => {
            // Bound by the binder `depth - 1 - i` levels out; open terms
            // print a placeholder index.
            if *i < depth {
                f.write_str(&binder_name(depth - 1 - i))
            } else {
                write!(f, "?{i}")
            }
        }
        RsTerm::Basic(u) => write!(f, "{u}"),
        RsTerm::LStage(alpha) => write!(f, "L({alpha})"),
        RsTerm::Sep(alpha, body) => {
            // The separation binder opens a fresh scope of its own.
            write!(f, "sep({alpha}, {}. ", binder_name(0))?;
            write_formula(body, f, 1)?;
            f.write_str(")")
        }
    }
}

fn write_formula(a: &RsFormula, f: &mut fmt::Formatter<'_>, depth: u32) -> fmt::Result {
    match a {
        RsFormula::In(s, t) => binary_term(f, "in", s, t, depth),
        RsFormula::NotIn(s, t) => binary_term(f, "nin", s, t, depth),
        RsFormula::Ad(t) => {
            f.write_str("ad(")?;
            write_term(t, f, depth)?;
            f.write_str(")")
        }
        RsFormula::NotAd(t) => {
            f.write_str("nad(")?;
            write_term(t, f, depth)?;
            f.write_str(")")
        }
        RsFormula::And(l, r) => binary_formula(f, "and", l, r, depth),
        RsFormula::Or(l, r) => binary_formula(f, "or", l, r, depth),
        RsFormula::All(t, b) => quantifier(f, "all", t, b, depth),
        RsFormula::Ex(t, b) => quantifier(f, "ex", t, b, depth),
    }
}

fn binary_term(
    f: &mut fmt::Formatter<'_>,
    name: &str,
    s: &RsTerm,
    t: &RsTerm,
    depth: u32,
) -> fmt::Result {
    write!(f, "{name}(")?;
    write_term(s, f, depth)?;
    f.write_str(", ")?;
    write_term(t, f, depth)?;
    f.write_str(")")
}

fn binary_formula(
    f: &mut fmt::Formatter<'_>,
    name: &str,
    l: &RsFormula,
    r: &RsFormula,
    depth: u32,
) -> fmt::Result {
    write!(f, "{name}(")?;
    write_formula(l, f, depth)?;
    f.write_str(", ")?;
    write_formula(r, f, depth)?;
    f.write_str(")")
}

fn quantifier(
    f: &mut fmt::Formatter<'_>,
    name: &str,
    t: &RsTerm,
    body: &RsFormula,
    depth: u32,
) -> fmt::Result {
    write!(f, "{name}(")?;
    write_term(t, f, depth)?;
    write!(f, ", {}. ", binder_name(depth))?;
    write_formula(body, f, depth + 1)?;
    f.write_str(")")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Limits;

    fn ctx() -> RsContext {
        RsContext::new(1, Limits::default()).unwrap()
    }

    fn l(alpha: OrdTerm) -> RsTerm {
        RsTerm::LStage(alpha)
    }

    #[test]
    fn negate_is_involutive() {
        let a = RsFormula::ex(
            l(OrdTerm::omega(0)),
            RsFormula::and(
                RsFormula::In(RsTerm::Var(0), l(OrdTerm::one())),
                RsFormula::NotAd(RsTerm::Var(0)),
            ),
        );
        assert_eq!(negate(&negate(&a)), a);
        assert_eq!(
            negate(&a),
            RsFormula::all(
                l(OrdTerm::omega(0)),
                RsFormula::or(
                    RsFormula::NotIn(RsTerm::Var(0), l(OrdTerm::one())),
                    RsFormula::Ad(RsTerm::Var(0)),
                ),
            )
        );
    }

    #[test]
    fn formula_types_follow_the_classification() {
        let u = RsTerm::basic_empty();
        let v = RsTerm::Basic(HfSet::new(vec![HfSet::empty()]));
        assert_eq!(formula_type(&RsFormula::In(u.clone(), v.clone())), FormulaType::Basic);
        assert_eq!(formula_type(&RsFormula::NotIn(u.clone(), v.clone())), FormulaType::Basic);
        // Membership is only basic when both sides are basic terms.
        let l0 = l(OrdTerm::zero());
        assert_eq!(formula_type(&RsFormula::In(u.clone(), l0.clone())), FormulaType::Disjunctive);
        assert_eq!(formula_type(&RsFormula::NotIn(u.clone(), l0)), FormulaType::Conjunctive);
        assert_eq!(formula_type(&RsFormula::Ad(u.clone())), FormulaType::Disjunctive);
        assert_eq!(formula_type(&RsFormula::NotAd(u.clone())), FormulaType::Conjunctive);
        let a = RsFormula::In(u.clone(), v.clone());
        assert_eq!(formula_type(&RsFormula::and(a.clone(), a.clone())), FormulaType::Conjunctive);
        assert_eq!(formula_type(&RsFormula::or(a.clone(), a.clone())), FormulaType::Disjunctive);
        assert_eq!(formula_type(&RsFormula::all(u.clone(), a.clone())), FormulaType::Conjunctive);
        assert_eq!(formula_type(&RsFormula::ex(u, a)), FormulaType::Disjunctive);
    }

    #[test]
    fn subst_replaces_the_hole_and_renumbers() {
        // body of `all(t, x. ex(s, y. in(x, y)))` seen from inside: the
        // outer binder is Var(1) at the inner position.
        let body = RsFormula::ex(
            l(OrdTerm::one()),
            RsFormula::In(RsTerm::Var(1), RsTerm::Var(0)),
        );
        let filled = subst(&body, &RsTerm::basic_empty());
        assert_eq!(
            filled,
            RsFormula::ex(
                l(OrdTerm::one()),
                RsFormula::In(RsTerm::basic_empty(), RsTerm::Var(0)),
            )
        );
        // Deeper free indices shift down by one.
        let open = RsFormula::In(RsTerm::Var(1), RsTerm::Var(0));
        assert_eq!(
            subst(&open, &RsTerm::basic_empty()),
            RsFormula::In(RsTerm::Var(0), RsTerm::basic_empty())
        );
    }

    #[test]
    fn validation_accepts_well_formed_formulas() {
        let c = ctx();
        let a = RsFormula::all(
            l(OrdTerm::omega(0)),
            RsFormula::In(RsTerm::Var(0), l(OrdTerm::omega(1))),
        );
        assert!(validate_formula(&a, &c).is_ok());
        let sep = RsTerm::sep(
            OrdTerm::omega(1),
            RsFormula::In(RsTerm::Var(0), l(OrdTerm::omega(0))),
        );
        assert!(validate_term(&sep, &c).is_ok());
    }

    #[test]
    fn validation_rejects_malformed_pieces() {
        let c = ctx();
        // Unbound variable.
        assert!(matches!(
            validate_formula(&RsFormula::Ad(RsTerm::Var(0)), &c),
            Err(RsError::OpenFormula)
        ));
        // Basic set outside the transitive closure: theta = 1 gives TC
        // {{}, {{}}}; the pair {{},{{}}} is not in it.
        let stranger = HfSet::new(vec![HfSet::empty(), HfSet::new(vec![HfSet::empty()])]);
        assert!(matches!(
            validate_term(&RsTerm::Basic(stranger), &c),
            Err(RsError::UnknownBasic(_))
        ));
        // Stage subscript beyond O_w.
        let too_high = OrdTerm::sum(vec![OrdTerm::omega_limit(), OrdTerm::one()]);
        assert!(matches!(
            validate_term(&l(too_high.clone()), &c),
            Err(RsError::StageTooHigh { .. })
        ));
        // Separation stage must be strictly below O_w.
        assert!(matches!(
            validate_term(
                &RsTerm::sep(OrdTerm::omega_limit(), RsFormula::Ad(RsTerm::Var(0))),
                &c
            ),
            Err(RsError::SepStageTooHigh { .. })
        ));
        // Separation body may not capture outer binders.
        let escaping = RsFormula::all(
            l(OrdTerm::zero()),
            RsFormula::In(
                RsTerm::sep(OrdTerm::one(), RsFormula::In(RsTerm::Var(0), RsTerm::Var(1))),
                l(OrdTerm::omega(0)),
            ),
        );
        assert!(matches!(validate_formula(&escaping, &c), Err(RsError::OpenFormula)));
        // Separation parameter at the separation's own level.
        let self_level = RsTerm::sep(
            OrdTerm::zero(),
            RsFormula::In(RsTerm::Var(0), l(OrdTerm::zero())),
        );
        assert!(matches!(
            validate_term(&self_level, &c),
            Err(RsError::LevelTooHigh { .. })
        ));
        // ... but as a quantifier bound, the stage of equal level is fine.
        let relativized = RsTerm::sep(
            OrdTerm::zero(),
            RsFormula::all(l(OrdTerm::zero()), RsFormula::In(RsTerm::Var(1), RsTerm::Var(0))),
        );
        assert!(validate_term(&relativized, &c).is_ok());
    }

    #[test]
    fn display_uses_binder_names() {
        let a = RsFormula::all(
            l(OrdTerm::omega(0)),
            RsFormula::ex(
                l(OrdTerm::omega(1)),
                RsFormula::In(RsTerm::Var(1), RsTerm::Var(0)),
            ),
        );
        assert_eq!(a.to_string(), "all(L(O_0), x. ex(L(O_1), y. in(x, y)))");
        let sep = RsTerm::sep(
            OrdTerm::omega(1),
            RsFormula::In(RsTerm::Var(0), l(OrdTerm::omega(0))),
        );
        assert_eq!(sep.to_string(), "sep(O_1, x. in(x, L(O_0)))");
        assert_eq!(RsTerm::basic_empty().to_string(), "{}");
        assert_eq!(eq(&RsTerm::basic_empty(), &l(OrdTerm::zero())).to_string(),
            "and(all({}, x. in(x, L(0))), all(L(0), x. in(x, {})))");
    }
}
