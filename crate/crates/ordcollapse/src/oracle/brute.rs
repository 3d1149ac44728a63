//! Brute-force computation of the closure sets B_n(γ), independent of the
//! argument-set criterion used by `term::in_b`.
//!
//! The closure clauses are read off a term's unique decomposition: a term
//! enters the set when its immediate constituents have entered (and, for a
//! collapse ψ_m(δ), additionally δ ≺ γ), with two base cases: atoms always
//! enter, and for n ≥ 1 everything below Ω_{n-1} enters wholesale.

use std::cmp::Ordering;

use crate::oracle::{OracleError, Universe};
use crate::order::cmp_terms;
use crate::term::{first_arg_violation, in_b_raw, validate, OrdTerm, TermNode};

/// Membership of each universe member in the closure set, plus whether the
/// iteration reached a fixpoint within the configured cap.
#[derive(Clone, Debug)]
pub struct BruteResult {
    included: Vec<bool>,
    pub saturated: bool,
}

impl BruteResult {
    pub fn contains_index(&self, i: usize) -> bool {
        self.included.get(i).copied().unwrap_or(false)
    }

    pub fn contains(&self, t: &OrdTerm, universe: &Universe) -> bool {
        universe.position(t).map(|i| self.contains_index(i)).unwrap_or(false)
    }

    pub fn members<'a>(&'a self, universe: &'a Universe) -> impl Iterator<Item = &'a OrdTerm> {
        universe
            .terms()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.contains_index(*i))
            .map(|(_, t)| t)
    }

    pub fn len(&self) -> usize {
        self.included.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A term's immediate decomposition, resolved to universe positions.
enum Decomp {
    Base,
    Parts(Vec<usize>),
    Collapse { delta: usize, delta_below_gamma: bool },
}

/// Computes B_n(γ) ∩ universe by iterating the closure clauses until a
/// fixpoint (or the configured iteration cap).
pub fn bruteforce_b(
    n: u32,
    gamma: &OrdTerm,
    universe: &Universe,
) -> Result<BruteResult, OracleError> {
    if !universe.subterm_closed() {
        return Err(OracleError::RestrictedUniverse);
    }
    validate(gamma, universe.ctx())?;
    // Resolve every decomposition once; the passes below are index-only.
    let pos = |s: &OrdTerm| universe.position(s).expect("universe is subterm-closed");
    let decomp: Vec<Decomp> = universe
        .terms()
        .iter()
        .map(|t| {
            if base_case(n, t) {
                return Decomp::Base;
            }
            match t.node() {
                TermNode::Zero | TermNode::Gamma(_) | TermNode::Omega(_) => {
                    unreachable!("atom base case")
                }
                TermNode::Sum(parts) => Decomp::Parts(parts.iter().map(pos).collect()),
                TermNode::Phi(a, b) => Decomp::Parts(vec![pos(a), pos(b)]),
                TermNode::Psi(_, delta) => Decomp::Collapse {
                    delta: pos(delta),
                    delta_below_gamma: cmp_terms(delta, gamma) == Ordering::Less,
                },
            }
        })
        .collect();
    let mut included = vec![false; decomp.len()];
    let mut saturated = false;
    for _ in 0..universe.ctx().limits.iteration_cap {
        let mut changed = false;
        for (i, d) in decomp.iter().enumerate() {
            if included[i] {
                continue;
            }
            let admit = match d {
                Decomp::Base => true,
                Decomp::Parts(kids) => kids.iter().all(|k| included[*k]),
                Decomp::Collapse { delta, delta_below_gamma } => {
                    *delta_below_gamma && included[*delta]
                }
            };
            if admit {
                included[i] = true;
                changed = true;
            }
        }
        if !changed {
            saturated = true;
            break;
        }
    }
    Ok(BruteResult { included, saturated })
}

fn base_case(n: u32, t: &OrdTerm) -> bool {
    if matches!(t.node(), TermNode::Zero | TermNode::Gamma(_) | TermNode::Omega(_)) {
        return true;
    }
    n >= 1 && cmp_terms(t, &OrdTerm::omega(n - 1)) == Ordering::Less
}

/// Recursive reading of the same closure: because admission follows the
/// unique decomposition, membership of a single term needs no universe.
pub fn closure_member(n: u32, t: &OrdTerm, gamma: &OrdTerm) -> bool {
    if base_case(n, t) {
        return true;
    }
    match t.node() {
        TermNode::Zero | TermNode::Gamma(_) | TermNode::Omega(_) => unreachable!("atom base case"),
        TermNode::Sum(parts) => parts.iter().all(|p| closure_member(n, p, gamma)),
        TermNode::Phi(a, b) => closure_member(n, a, gamma) && closure_member(n, b, gamma),
        TermNode::Psi(_, delta) => {
            cmp_terms(delta, gamma) == Ordering::Less && closure_member(n, delta, gamma)
        }
    }
}

/// The known ways the argument-set criterion and the closure reading
/// diverge.
#[derive(Clone, Debug, PartialEq)]
pub enum DisagreementClass {
    /// Closure admits everything below Ω_{n-1} wholesale (n ≥ 1); the
    /// criterion still inspects collapse arguments inside such terms. The
    /// witness is the offending argument.
    BaseClause { witness: OrdTerm },
    /// Closure constrains ψ_m(δ) by δ ≺ γ for every index m; the criterion
    /// only constrains index-n arguments. The witness is the mixed-index
    /// collapse occurrence.
    MixedIndexPsi { witness: OrdTerm },
}

/// Explains a divergence between `in_b` (criterion) and `closure_member`
/// on `a`, or None when they agree or the divergence matches neither
/// documented class.
pub fn classify_disagreement(n: u32, a: &OrdTerm, gamma: &OrdTerm) -> Option<DisagreementClass> {
    let criterion = in_b_raw(n, a, gamma);
    let closure = closure_member(n, a, gamma);
    if criterion == closure {
        return None;
    }
    if !criterion && closure && n >= 1 {
        // The criterion's violating argument must be shielded by a base
        // case, otherwise the closure would have rejected it too.
        return first_arg_violation(n, a, gamma).map(|witness| DisagreementClass::BaseClause { witness });
    }
    if criterion && !closure {
        return first_mixed_violation(n, a, gamma)
            .map(|witness| DisagreementClass::MixedIndexPsi { witness });
    }
    None
}

/// First collapse occurrence ψ_m(δ) with m ≠ n and δ ⊀ γ that the closure
/// actually reaches (not shielded by the n ≥ 1 base case).
fn first_mixed_violation(n: u32, t: &OrdTerm, gamma: &OrdTerm) -> Option<OrdTerm> {
    if base_case(n, t) {
        return None;
    }
    match t.node() {
        TermNode::Zero | TermNode::Gamma(_) | TermNode::Omega(_) => None,
        TermNode::Sum(parts) => parts.iter().find_map(|p| first_mixed_violation(n, p, gamma)),
        TermNode::Phi(a, b) => {
            first_mixed_violation(n, a, gamma).or_else(|| first_mixed_violation(n, b, gamma))
        }
        TermNode::Psi(m, delta) => {
            if *m != n && cmp_terms(delta, gamma) != Ordering::Less {
                return Some(t.clone());
            }
            first_mixed_violation(n, delta, gamma)
        }
    }
}
