//! A second comparator for the Omega/psi-free fragment, transcribed
//! directly from the textbook characterization of the two-place Veblen
//! function: additive normal forms compare lexicographically on their
//! principal parts, principal parts compare by the fixpoint-level
//! trichotomy, and a term lies below a strongly critical atom exactly when
//! both of its arguments do.
//!
//! Deliberately shares no code with the main comparison module.

use std::cmp::Ordering;

use crate::oracle::OracleError;
use crate::term::{OrdTerm, TermNode};

/// Compares two Omega/psi-free normal-form terms.
pub fn cnf_oracle_compare(a: &OrdTerm, b: &OrdTerm) -> Result<Ordering, OracleError> {
    check_fragment(a)?;
    check_fragment(b)?;
    Ok(term_cmp(a, b))
}

fn check_fragment(t: &OrdTerm) -> Result<(), OracleError> {
    let ok = match t.node() {
        TermNode::Zero | TermNode::Gamma(_) => true,
        TermNode::Omega(_) | TermNode::Psi(..) => false,
        TermNode::Sum(parts) => return parts.iter().try_for_each(check_fragment),
        TermNode::Phi(x, y) => {
            check_fragment(x)?;
            check_fragment(y)?;
            true
        }
    };
    if ok {
        Ok(())
    } else {
        Err(OracleError::OutsideFragment { term: t.to_string() })
    }
}

fn term_cmp(a: &OrdTerm, b: &OrdTerm) -> Ordering {
    let (xs, ys) = (a.cnf_parts(), b.cnf_parts());
    for (x, y) in xs.iter().zip(ys.iter()) {
        match principal_cmp(x, y) {
            Ordering::Equal => continue,
            decided => return decided,
        }
    }
    xs.len().cmp(&ys.len())
}

fn principal_cmp(x: &OrdTerm, y: &OrdTerm) -> Ordering {
    if x == y {
        Ordering::Equal
    } else if principal_less(x, y) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Strict order on distinct principal terms (Gamma atoms and phi
/// applications).
fn principal_less(x: &OrdTerm, y: &OrdTerm) -> bool {
    match (x.node(), y.node()) {
        (TermNode::Gamma(i), TermNode::Gamma(j)) => i < j,
        // phi(a, b) lies below a strongly critical atom exactly when both
        // arguments do; distinct terms are never equal.
        (TermNode::Phi(a, b), TermNode::Gamma(_)) => {
            term_cmp(a, y) == Ordering::Less && term_cmp(b, y) == Ordering::Less
        }
        (TermNode::Gamma(_), TermNode::Phi(a, b)) => {
            !(term_cmp(a, x) == Ordering::Less && term_cmp(b, x) == Ordering::Less)
        }
        // phi(a1, b1) < phi(a2, b2) iff
        //   a1 = a2 and b1 < b2, or
        //   a1 < a2 and b1 < phi(a2, b2), or
        //   a1 > a2 and phi(a1, b1) <= b2.
        (TermNode::Phi(a1, b1), TermNode::Phi(a2, b2)) => match term_cmp(a1, a2) {
            Ordering::Equal => term_cmp(b1, b2) == Ordering::Less,
            Ordering::Less => term_cmp(b1, y) == Ordering::Less,
            Ordering::Greater => term_cmp(x, b2) != Ordering::Greater,
        },
        _ => unreachable!("principal comparison outside the fragment"),
    }
}
