//! Arithmetic on normal-form terms: sums, omega powers and products,
//! Veblen application, collapsing, and the stage-bound calculus built from
//! them.
//!
//! All operations take and return normal-form terms. The pure functions
//! (`add`, `natural_sum`, `omega_power`, `omega_times`) are total on normal
//! forms; `veblen` and `psi` can fail because not every argument combination
//! names a term of the system.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde_json::json;
use thiserror::Error;

use crate::context::ThetaContext;
use crate::order::{cmp_terms, is_strongly_critical};
use crate::term::{first_arg_violation, validate, Diagnostic, OmegaIndex, OrdTerm, TermNode};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ArithError {
    #[error(transparent)]
    Invalid(#[from] Diagnostic),
    /// The binary Veblen function is only defined below `O_w` (except for
    /// the omega-power case `phi(0, -)`).
    #[error("phi({a}, {b}) lies outside the notation system")]
    OutOfSystem { a: OrdTerm, b: OrdTerm },
    /// `psi_n(arg)` names no term: `arg` mentions a collapse `psi_n(witness)`
    /// whose argument is not below `arg`.
    #[error("psi_{n}({arg}) is not collapsible: offending argument {witness}")]
    NotCollapsible { n: u32, arg: OrdTerm, witness: OrdTerm },
    #[error("{0}")]
    ParameterOutOfRange(String),
}

/// Ordinal addition `a + b` in normal form: the parts of `a` that are at
/// least the leading part of `b` survive, the rest are absorbed.
pub fn add(a: &OrdTerm, b: &OrdTerm) -> OrdTerm {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return b.clone();
    }
    let b_parts = b.cnf_parts();
    let lead = &b_parts[0];
    let kept: Vec<OrdTerm> = a
        .cnf_parts()
        .iter()
        .take_while(|p| cmp_terms(p, lead) != Ordering::Less)
        .cloned()
        .collect();
    if kept.is_empty() {
        return b.clone();
    }
    let mut parts = kept;
    parts.extend(b_parts.iter().cloned());
    assemble(parts)
}

/// The natural (Hessenberg) sum: all parts of both terms merged in
/// non-increasing order, nothing absorbed.
pub fn natural_sum(a: &OrdTerm, b: &OrdTerm) -> OrdTerm {
    let mut parts: Vec<OrdTerm> = a.cnf_parts().to_vec();
    parts.extend(b.cnf_parts().iter().cloned());
    parts.sort_by(|x, y| cmp_terms(y, x));
    assemble(parts)
}

fn assemble(mut parts: Vec<OrdTerm>) -> OrdTerm {
    match parts.len() {
        0 => OrdTerm::zero(),
        1 => parts.pop().unwrap(),
        _ => OrdTerm::sum(parts),
    }
}

/// The omega power `w^a`, i.e. `phi(0, a)` collapsed to `a` itself when `a`
/// is a fixed point of that function.
pub fn omega_power(a: &OrdTerm) -> OrdTerm {
    if is_omega_power_fixpoint(a) {
        a.clone()
    } else {
        OrdTerm::phi(OrdTerm::zero(), a.clone())
    }
}

fn is_omega_power_fixpoint(a: &OrdTerm) -> bool {
    is_strongly_critical(a)
        || matches!(a.node(), TermNode::Phi(c, _) if !c.is_zero())
}

/// The product `w * a`, distributed over the parts of `a`.
pub fn omega_times(a: &OrdTerm) -> OrdTerm {
    let parts: Vec<OrdTerm> = a.cnf_parts().iter().map(omega_times_principal).collect();
    assemble(parts)
}

fn omega_times_principal(p: &OrdTerm) -> OrdTerm {
    match p.node() {
        // w * w^d = w^(1 + d); everything else at least epsilon-sized
        // already absorbs a factor of w.
        TermNode::Phi(c, d) if c.is_zero() => {
            OrdTerm::phi(OrdTerm::zero(), add(&OrdTerm::one(), d))
        }
        _ => p.clone(),
    }
}

/// The binary Veblen function `phi_a(b)`, returning the normal form of its
/// value: the fixed-point cases collapse to `b` (or to `a` when `b = 0` and
/// `a` is strongly critical).
pub fn veblen(a: &OrdTerm, b: &OrdTerm) -> Result<OrdTerm, ArithError> {
    if a.is_zero() {
        return Ok(omega_power(b));
    }
    let cap = OrdTerm::omega_limit();
    if cmp_terms(a, &cap) != Ordering::Less || cmp_terms(b, &cap) != Ordering::Less {
        return Err(ArithError::OutOfSystem { a: a.clone(), b: b.clone() });
    }
    let fixes = match b.node() {
        TermNode::Phi(c, _) => cmp_terms(a, c) == Ordering::Less,
        _ => is_strongly_critical(b) && cmp_terms(a, b) == Ordering::Less,
    };
    if fixes {
        return Ok(b.clone());
    }
    if b.is_zero() && is_strongly_critical(a) {
        return Ok(a.clone());
    }
    Ok(OrdTerm::phi(a.clone(), b.clone()))
}

/// The collapse `psi_n(a)`, defined only when every `psi_n` argument
/// mentioned inside `a` is below `a` itself.
pub fn psi(n: u32, a: &OrdTerm, ctx: &ThetaContext) -> Result<OrdTerm, ArithError> {
    if n > ctx.limits.max_subscript {
        return Err(ArithError::ParameterOutOfRange(format!(
            "psi subscript {n} exceeds limit {}",
            ctx.limits.max_subscript
        )));
    }
    validate(a, ctx)?;
    match first_arg_violation(n, a, a) {
        None => Ok(OrdTerm::psi(n, a.clone())),
        Some(witness) => Err(ArithError::NotCollapsible { n, arg: a.clone(), witness }),
    }
}

/// The sequence `e_0 = O_w + 1`, `e_{n+1} = w^(e_n)`.
pub fn e_seq(n: u32) -> OrdTerm {
    let mut t = OrdTerm::sum(vec![OrdTerm::omega_limit(), OrdTerm::one()]);
    for _ in 0..n {
        t = OrdTerm::phi(OrdTerm::zero(), t);
    }
    t
}

/// The finite omega tower `wt_0 = 1`, `wt_{n+1} = w^(wt_n)`.
pub fn omega_tower(n: u32) -> OrdTerm {
    let mut t = OrdTerm::one();
    for _ in 0..n {
        t = OrdTerm::phi(OrdTerm::zero(), t);
    }
    t
}

/// The three theories whose stage bounds the calculus computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    /// Limits of admissibles with full foundation.
    KPl,
    /// Foundation weakened to induction on the naturals.
    KPlr,
    /// Foundation weakened to set-foundation.
    WKPl,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Theory::KPl => "KPl",
            Theory::KPlr => "KPl^r",
            Theory::WKPl => "W-KPl",
        };
        f.write_str(s)
    }
}

impl FromStr for Theory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "kpl" => Ok(Theory::KPl),
            "kplr" | "kpl^r" => Ok(Theory::KPlr),
            "wkpl" | "w-kpl" => Ok(Theory::WKPl),
            other => Err(format!("unknown theory `{other}` (expected kpl, kplr, or wkpl)")),
        }
    }
}

/// Parameter of a stage bound: a derivation-complexity number for `KPl` and
/// `KPl^r`, an induction ordinal below `phi(1, 0)` for `W-KPl`.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundParam {
    Nat(u32),
    Ord(OrdTerm),
}

impl fmt::Display for BoundParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundParam::Nat(n) => write!(f, "{n}"),
            BoundParam::Ord(t) => write!(f, "{t}"),
        }
    }
}

/// A computed stage bound together with the intermediate terms that led to
/// it, in computation order.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub theory: Theory,
    pub parameter: BoundParam,
    pub stage: OrdTerm,
    pub intermediates: Vec<(String, OrdTerm)>,
}

impl BoundReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "theory": self.theory.to_string(),
            "parameter": self.parameter.to_string(),
            "stage": self.stage.to_string(),
            "intermediates": self.intermediates.iter()
                .map(|(name, t)| json!({ "name": name, "term": t.to_string() }))
                .collect::<Vec<_>>(),
        })
    }
}

/// The constructible-hierarchy stage by which every provably total
/// set-recursive-from-omega function of the theory is bounded, as a function
/// of the proof parameter.
pub fn bound(
    theory: Theory,
    param: BoundParam,
    ctx: &ThetaContext,
) -> Result<BoundReport, ArithError> {
    match (theory, &param) {
        (Theory::KPl, BoundParam::Nat(n)) => {
            let top = n.checked_add(3).filter(|&k| k <= ctx.limits.max_chain).ok_or_else(
                || {
                    ArithError::ParameterOutOfRange(format!(
                        "KPl parameter {n} needs chain index {} above limit {}",
                        u64::from(*n) + 3,
                        ctx.limits.max_chain
                    ))
                },
            )?;
            let intermediates: Vec<(String, OrdTerm)> =
                (0..=top).map(|i| (format!("e_{i}"), e_seq(i))).collect();
            let stage = psi(0, &intermediates[top as usize].1, ctx)?;
            Ok(BoundReport { theory, parameter: param, stage, intermediates })
        }
        (Theory::KPlr, BoundParam::Nat(n)) => {
            let next = n.checked_add(1).filter(|&k| k <= ctx.limits.max_subscript).ok_or_else(
                || {
                    ArithError::ParameterOutOfRange(format!(
                        "KPl^r parameter {n} needs subscript {} above limit {}",
                        u64::from(*n) + 1,
                        ctx.limits.max_subscript
                    ))
                },
            )?;
            let omega = OrdTerm::omega(next);
            let stage = psi(0, &omega, ctx)?;
            Ok(BoundReport {
                theory,
                parameter: param,
                stage,
                intermediates: vec![(format!("O_{next}"), omega)],
            })
        }
        (Theory::WKPl, BoundParam::Ord(alpha)) => {
            validate(alpha, ctx)?;
            let epsilon_0 = OrdTerm::phi(OrdTerm::one(), OrdTerm::zero());
            if cmp_terms(alpha, &epsilon_0) != Ordering::Less {
                return Err(ArithError::ParameterOutOfRange(format!(
                    "W-KPl parameter {alpha} must be below phi(1, 0)"
                )));
            }
            let exponent = add(&add(&OrdTerm::omega_limit(), alpha), &OrdTerm::numeral(2));
            let power = omega_power(&exponent);
            let stage = psi(0, &power, ctx)?;
            Ok(BoundReport {
                theory,
                parameter: param,
                stage,
                intermediates: vec![
                    ("exponent".to_string(), exponent),
                    ("power".to_string(), power),
                ],
            })
        }
        (Theory::KPl | Theory::KPlr, BoundParam::Ord(_)) => Err(
            ArithError::ParameterOutOfRange(format!("{theory} takes a natural-number parameter")),
        ),
        (Theory::WKPl, BoundParam::Nat(_)) => Err(ArithError::ParameterOutOfRange(
            "W-KPl takes an ordinal parameter".to_string(),
        )),
    }
}

/// Result of collapsing a derivation bound: the folded Veblen value `gamma`,
/// the collapsed stage `psi_0(w^(O_n + 1 + gamma))`, and the final bound
/// `delta = phi_stage(stage)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CollapseBound {
    pub gamma: OrdTerm,
    pub stage: OrdTerm,
    pub delta: OrdTerm,
}

/// Folds a derivation of length `alpha` with cut bound `O_n + 1` through
/// predicative cut elimination (one Veblen application per `beta`) and one
/// collapse.
///
/// `betas` must be strictly decreasing and below `O_n`.
pub fn collapse_bound(
    n: OmegaIndex,
    betas: &[OrdTerm],
    alpha: &OrdTerm,
    ctx: &ThetaContext,
) -> Result<CollapseBound, ArithError> {
    let omega_n = match n {
        OmegaIndex::Finite(k) => {
            if k > ctx.limits.max_subscript {
                return Err(ArithError::ParameterOutOfRange(format!(
                    "O subscript {k} exceeds limit {}",
                    ctx.limits.max_subscript
                )));
            }
            OrdTerm::omega(k)
        }
        OmegaIndex::Omega => OrdTerm::omega_limit(),
    };
    validate(alpha, ctx)?;
    for beta in betas {
        validate(beta, ctx)?;
        if cmp_terms(beta, &omega_n) != Ordering::Less {
            return Err(ArithError::ParameterOutOfRange(format!(
                "cut bound {beta} is not below O_{n}"
            )));
        }
    }
    if let Some(w) = betas.windows(2).find(|w| cmp_terms(&w[0], &w[1]) != Ordering::Greater) {
        return Err(ArithError::ParameterOutOfRange(format!(
            "cut bounds must be strictly decreasing: {} does not dominate {}",
            w[0], w[1]
        )));
    }
    let mut gamma = alpha.clone();
    for beta in betas.iter().rev() {
        gamma = veblen(beta, &gamma)?;
    }
    let exponent = add(&add(&omega_n, &OrdTerm::one()), &gamma);
    let stage = psi(0, &omega_power(&exponent), ctx)?;
    let delta = veblen(&stage, &stage)?;
    Ok(CollapseBound { gamma, stage, delta })
}
