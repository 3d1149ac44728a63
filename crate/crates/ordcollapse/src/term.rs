//! Term representation, complexity, the Arg_n membership criterion, and
//! normal-form validation.
//!
//! Terms are immutable and reference-counted; cloning is cheap and enumerated
//! universes share subterms. Structural equality is the normal-form identity
//! on valid terms.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

use crate::context::ThetaContext;
use crate::order::{cmp_terms, is_strongly_critical};

/// Subscript of an `O` atom: a natural number or the limit `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaIndex {
    Finite(u32),
    Omega,
}

impl fmt::Display for OmegaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaIndex::Finite(n) => write!(f, "{n}"),
            OmegaIndex::Omega => f.write_str("w"),
        }
    }
}

/// The term constructors.
///
/// Sums hold their Cantor-normal-form parts flattened (length >= 2 in normal
/// form, parts additive principal and non-increasing).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermNode {
    Zero,
    /// `G_b`, a strongly critical atom, valid for b <= theta.
    Gamma(u32),
    /// `O_n` or `O_w`, an admissible-stage atom.
    Omega(OmegaIndex),
    Sum(Vec<OrdTerm>),
    /// Binary Veblen function `phi(a, b)`.
    Phi(OrdTerm, OrdTerm),
    /// Collapsing function `psi_n(a)`.
    Psi(u32, OrdTerm),
}

/// An ordinal notation term (shared, immutable).
#[derive(Clone, Eq)]
pub struct OrdTerm(Arc<TermNode>);

impl OrdTerm {
    pub fn new(node: TermNode) -> OrdTerm {
        OrdTerm(Arc::new(node))
    }

    pub fn node(&self) -> &TermNode {
        &self.0
    }

    pub fn ptr_eq(a: &OrdTerm, b: &OrdTerm) -> bool {
        Arc::ptr_eq(&a.0, &b.0)
    }

    pub fn zero() -> OrdTerm {
        OrdTerm::new(TermNode::Zero)
    }

    pub fn gamma(b: u32) -> OrdTerm {
        OrdTerm::new(TermNode::Gamma(b))
    }

    pub fn omega(n: u32) -> OrdTerm {
        OrdTerm::new(TermNode::Omega(OmegaIndex::Finite(n)))
    }

    /// The limit stage `O_w`.
    pub fn omega_limit() -> OrdTerm {
        OrdTerm::new(TermNode::Omega(OmegaIndex::Omega))
    }

    pub fn sum(parts: Vec<OrdTerm>) -> OrdTerm {
        OrdTerm::new(TermNode::Sum(parts))
    }

    pub fn phi(a: OrdTerm, b: OrdTerm) -> OrdTerm {
        OrdTerm::new(TermNode::Phi(a, b))
    }

    pub fn psi(n: u32, a: OrdTerm) -> OrdTerm {
        OrdTerm::new(TermNode::Psi(n, a))
    }

    /// The term for 1, i.e. `phi(0, 0)`.
    pub fn one() -> OrdTerm {
        OrdTerm::phi(OrdTerm::zero(), OrdTerm::zero())
    }

    /// The numeral `k`: 0, 1, or a sum of k copies of 1.
    pub fn numeral(k: u32) -> OrdTerm {
        match k {
            0 => OrdTerm::zero(),
            1 => OrdTerm::one(),
            _ => OrdTerm::sum((0..k).map(|_| OrdTerm::one()).collect()),
        }
    }

    /// The term for omega, i.e. `phi(0, 1)`.
    pub fn omega_order_type() -> OrdTerm {
        OrdTerm::phi(OrdTerm::zero(), OrdTerm::one())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.node(), TermNode::Zero)
    }

    /// The CNF parts: empty for 0, the part list for sums, the term itself
    /// otherwise.
    pub fn cnf_parts(&self) -> &[OrdTerm] {
        match self.node() {
            TermNode::Zero => &[],
            TermNode::Sum(parts) => parts,
            _ => std::slice::from_ref(self),
        }
    }
}

impl PartialEq for OrdTerm {
    fn eq(&self, other: &Self) -> bool {
        OrdTerm::ptr_eq(self, other) || self.node() == other.node()
    }
}

impl std::hash::Hash for OrdTerm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.node().hash(state);
    }
}

impl fmt::Debug for OrdTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

/// Term complexity: atoms are 0; sums and `phi` add one to the maximum of
/// their immediate subterms; `psi_n(a)` is complexity(a) + 1.
pub fn complexity(t: &OrdTerm) -> u32 {
    match t.node() {
        TermNode::Zero | TermNode::Gamma(_) | TermNode::Omega(_) => 0,
        TermNode::Sum(parts) => parts.iter().map(complexity).max().unwrap_or(0) + 1,
        TermNode::Phi(a, b) => complexity(a).max(complexity(b)) + 1,
        TermNode::Psi(_, a) => complexity(a) + 1,
    }
}

/// Constructor-application count: atoms are 0; `phi`/`psi` cost one node plus
/// their arguments; a k-part sum costs k-1 nodes plus its parts. Bounds
/// complexity from above and, unlike complexity, bounds sum length.
pub fn node_count(t: &OrdTerm) -> u32 {
    match t.node() {
        TermNode::Zero | TermNode::Gamma(_) | TermNode::Omega(_) => 0,
        TermNode::Sum(parts) => {
            parts.iter().map(node_count).sum::<u32>() + (parts.len() as u32).saturating_sub(1)
        }
        TermNode::Phi(a, b) => node_count(a) + node_count(b) + 1,
        TermNode::Psi(_, a) => node_count(a) + 1,
    }
}

/// The argument set Arg_n: all arguments of `psi_n` occurrences, collected
/// through every constructor including other collapses' arguments.
///
/// Result is deduplicated and sorted by the term order.
pub fn arg_set(n: u32, t: &OrdTerm) -> Vec<OrdTerm> {
    let mut out = Vec::new();
    collect_args(n, t, &mut out);
    out.sort_by(cmp_terms);
    out.dedup();
    out
}

fn collect_args(n: u32, t: &OrdTerm, out: &mut Vec<OrdTerm>) {
    match t.node() {
        TermNode::Zero | TermNode::Gamma(_) | TermNode::Omega(_) => {}
        TermNode::Sum(parts) => {
            for p in parts {
                collect_args(n, p, out);
            }
        }
        TermNode::Phi(a, b) => {
            collect_args(n, a, out);
            collect_args(n, b, out);
        }
        TermNode::Psi(m, a) => {
            if *m == n {
                out.push(a.clone());
            }
            collect_args(n, a, out);
        }
    }
}

/// First member of Arg_n(t) that is not strictly below `gamma`, if any.
pub(crate) fn first_arg_violation(n: u32, t: &OrdTerm, gamma: &OrdTerm) -> Option<OrdTerm> {
    match t.node() {
        TermNode::Zero | TermNode::Gamma(_) | TermNode::Omega(_) => None,
        TermNode::Sum(parts) => parts.iter().find_map(|p| first_arg_violation(n, p, gamma)),
        TermNode::Phi(a, b) => {
            first_arg_violation(n, a, gamma).or_else(|| first_arg_violation(n, b, gamma))
        }
        TermNode::Psi(m, a) => {
            if *m == n && cmp_terms(a, gamma) != Ordering::Less {
                return Some(a.clone());
            }
            first_arg_violation(n, a, gamma)
        }
    }
}

/// Membership criterion for the collapse domains: `a` lies in B_n(gamma) iff
/// every member of Arg_n(a) is strictly below `gamma`.
pub fn in_b(n: u32, a: &OrdTerm, gamma: &OrdTerm, ctx: &ThetaContext) -> Result<bool, Diagnostic> {
    validate(a, ctx)?;
    validate(gamma, ctx)?;
    Ok(in_b_raw(n, a, gamma))
}

pub(crate) fn in_b_raw(n: u32, a: &OrdTerm, gamma: &OrdTerm) -> bool {
    first_arg_violation(n, a, gamma).is_none()
}

/// Normal-form clause violated by a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NfClause {
    GammaRange,
    SubscriptRange,
    SumArity,
    SumPartPrincipal,
    SumOrder,
    PhiDomain,
    PhiFixpoint,
    PsiArg,
}

impl fmt::Display for NfClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NfClause::GammaRange => "gamma-range",
            NfClause::SubscriptRange => "subscript-range",
            NfClause::SumArity => "sum-arity",
            NfClause::SumPartPrincipal => "sum-part-principal",
            NfClause::SumOrder => "sum-order",
            NfClause::PhiDomain => "phi-domain",
            NfClause::PhiFixpoint => "phi-fixpoint",
            NfClause::PsiArg => "psi-argument",
        };
        f.write_str(s)
    }
}

/// A normal-form violation, pinpointing the first offending subterm
/// (children are checked before their parent, left to right).
#[derive(Clone, Debug, Error, PartialEq)]
#[error("{clause}: {message} (offending subterm `{subterm}`)")]
pub struct Diagnostic {
    pub clause: NfClause,
    pub subterm: OrdTerm,
    pub message: String,
}

fn diag(clause: NfClause, subterm: &OrdTerm, message: String) -> Result<(), Diagnostic> {
    Err(Diagnostic { clause, subterm: subterm.clone(), message })
}

/// Checks that `t` is a valid normal-form term for `ctx`.
///
/// Non-normal input is reported through the `Err` diagnostic, never panics.
pub fn validate(t: &OrdTerm, ctx: &ThetaContext) -> Result<(), Diagnostic> {
    match t.node() {
        TermNode::Zero => Ok(()),
        TermNode::Gamma(b) => {
            if *b > ctx.theta {
                diag(
                    NfClause::GammaRange,
                    t,
                    format!("G index {b} exceeds theta = {}", ctx.theta),
                )
            } else {
                Ok(())
            }
        }
        TermNode::Omega(OmegaIndex::Finite(n)) => {
            if *n > ctx.limits.max_subscript {
                diag(
                    NfClause::SubscriptRange,
                    t,
                    format!("O subscript {n} exceeds limit {}", ctx.limits.max_subscript),
                )
            } else {
                Ok(())
            }
        }
        TermNode::Omega(OmegaIndex::Omega) => Ok(()),
        TermNode::Sum(parts) => {
            for p in parts {
                validate(p, ctx)?;
            }
            if parts.len() < 2 {
                return diag(NfClause::SumArity, t, "sum needs at least two parts".to_string());
            }
            for p in parts {
                if matches!(p.node(), TermNode::Zero | TermNode::Sum(_)) {
                    return diag(
                        NfClause::SumPartPrincipal,
                        p,
                        "sum part is not additive principal".to_string(),
                    );
                }
            }
            for w in parts.windows(2) {
                if cmp_terms(&w[0], &w[1]) == Ordering::Less {
                    return diag(
                        NfClause::SumOrder,
                        &w[1],
                        "sum parts must be non-increasing".to_string(),
                    );
                }
            }
            Ok(())
        }
        TermNode::Phi(a, b) => {
            validate(a, ctx)?;
            validate(b, ctx)?;
            match phi_nf_violation(a, b) {
                Some((clause, msg)) => diag(clause, t, msg),
                None => Ok(()),
            }
        }
        TermNode::Psi(n, a) => {
            if *n > ctx.limits.max_subscript {
                return diag(
                    NfClause::SubscriptRange,
                    t,
                    format!("psi subscript {n} exceeds limit {}", ctx.limits.max_subscript),
                );
            }
            validate(a, ctx)?;
            match first_arg_violation(*n, a, a) {
                Some(witness) => diag(
                    NfClause::PsiArg,
                    t,
                    format!("collapse argument not in B_{n}: witness `{witness}` is not below `{a}`"),
                ),
                None => Ok(()),
            }
        }
    }
}

/// Local normal-form check for `phi(a, b)` with already-valid arguments.
/// Returns the violated clause and a message, or None when in normal form.
pub(crate) fn phi_nf_violation(a: &OrdTerm, b: &OrdTerm) -> Option<(NfClause, String)> {
    let omega_w = OrdTerm::omega_limit();
    if !a.is_zero()
        && (cmp_terms(a, &omega_w) != Ordering::Less || cmp_terms(b, &omega_w) != Ordering::Less)
    {
        return Some((
            NfClause::PhiDomain,
            "phi arguments must be below O_w unless the first is 0".to_string(),
        ));
    }
    if is_strongly_critical(b) && cmp_terms(a, b) == Ordering::Less {
        return Some((NfClause::PhiFixpoint, format!("fixpoint: phi({a}, {b}) = {b}")));
    }
    if let TermNode::Phi(c, _) = b.node() {
        if cmp_terms(a, c) == Ordering::Less {
            return Some((NfClause::PhiFixpoint, format!("fixpoint: phi({a}, {b}) = {b}")));
        }
    }
    if b.is_zero() && is_strongly_critical(a) {
        return Some((
            NfClause::PhiFixpoint,
            format!("fixpoint: phi({a}, 0) = {a} for strongly critical {a}"),
        ));
    }
    None
}

/// Local normal-form check for `psi_n(a)` with an already-valid argument.
pub(crate) fn psi_nf_ok(n: u32, a: &OrdTerm) -> bool {
    first_arg_violation(n, a, a).is_none()
}

impl fmt::Display for OrdTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            TermNode::Zero => f.write_str("0"),
            TermNode::Gamma(b) => write!(f, "G_{b}"),
            TermNode::Omega(i) => write!(f, "O_{i}"),
            TermNode::Phi(a, b) => {
                if a.is_zero() && b.is_zero() {
                    f.write_str("1")
                } else {
                    write!(f, "phi({a}, {b})")
                }
            }
            TermNode::Psi(n, a) => write!(f, "psi_{n}({a})"),
            TermNode::Sum(parts) => {
                // Maximal runs of 1-parts print as decimal numerals, so the
                // printer inverts the parser's numeral expansion.
                let one = OrdTerm::one();
                let mut first = true;
                let mut i = 0;
                while i < parts.len() {
                    if !first {
                        f.write_str(" + ")?;
                    }
                    first = false;
                    if parts[i] == one {
                        let mut run = 0;
                        while i < parts.len() && parts[i] == one {
                            run += 1;
                            i += 1;
                        }
                        write!(f, "{run}")?;
                    } else {
                        write!(f, "{}", parts[i])?;
                        i += 1;
                    }
                }
                Ok(())
            }
        }
    }
}
