//! Exhaustive enumeration of normal-form terms.
//!
//! Complexity alone does not bound a term's size (a sum of any length adds
//! only one complexity step), so enumeration is driven by constructor
//! count (`node_count`) with complexity as a second filter; complexity
//! never exceeds the node count, so every term of complexity `c` appears
//! once the node budget reaches `c`.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::context::ThetaContext;
use crate::oracle::OracleError;
use crate::order::{cmp_terms, is_additive_principal};
use crate::term::{complexity, phi_nf_violation, psi_nf_ok, OrdTerm};

/// Generation parameters for a universe.
#[derive(Clone, Debug)]
pub struct UniverseParams {
    pub max_complexity: u32,
    pub max_nodes: u32,
    /// Keep only terms strictly below this value.
    pub value_cap: Option<OrdTerm>,
    /// Restrict to the Omega/psi-free fragment (values below the first
    /// collapse).
    pub omega_free: bool,
}

impl UniverseParams {
    pub fn new(max_complexity: u32, max_nodes: u32) -> Self {
        UniverseParams { max_complexity, max_nodes, value_cap: None, omega_free: false }
    }

    pub fn with_value_cap(mut self, cap: OrdTerm) -> Self {
        self.value_cap = Some(cap);
        self
    }

    pub fn omega_free(mut self) -> Self {
        self.omega_free = true;
        self
    }
}

/// All normal-form terms meeting the parameters, sorted strictly
/// increasing.
#[derive(Clone, Debug)]
pub struct Universe {
    ctx: ThetaContext,
    params: UniverseParams,
    terms: Vec<OrdTerm>,
    index: HashMap<OrdTerm, usize>,
}

impl Universe {
    pub fn terms(&self) -> &[OrdTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, t: &OrdTerm) -> bool {
        self.index.contains_key(t)
    }

    /// Position in the sorted order, i.e. the count of members strictly
    /// below.
    pub fn position(&self, t: &OrdTerm) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn ctx(&self) -> &ThetaContext {
        &self.ctx
    }

    pub fn params(&self) -> &UniverseParams {
        &self.params
    }

    /// Whether every subterm of every member is itself a member (true
    /// exactly when neither restriction is set).
    pub fn subterm_closed(&self) -> bool {
        self.params.value_cap.is_none() && !self.params.omega_free
    }
}

/// Enumerates every normal-form term within the node, complexity, and
/// value bounds, sorted by the term order.
pub fn enumerate(ctx: &ThetaContext, params: UniverseParams) -> Result<Universe, OracleError> {
    let guard = ctx.limits.max_universe;
    let mut atoms = vec![OrdTerm::zero()];
    for b in 0..=ctx.theta {
        atoms.push(OrdTerm::gamma(b));
    }
    if !params.omega_free {
        for n in 0..=ctx.limits.max_subscript {
            atoms.push(OrdTerm::omega(n));
        }
        atoms.push(OrdTerm::omega_limit());
    }

    // by_nodes[k] = all NF terms of node count k and complexity within the
    // budget (complexity is strictly monotone under each constructor, so
    // over-budget terms cannot reappear inside later ones).
    let mut by_nodes: Vec<Vec<OrdTerm>> = vec![atoms];
    let mut total = by_nodes[0].len();
    for k in 1..=params.max_nodes as usize {
        let mut level = Vec::new();
        for i in 0..k {
            let j = k - 1 - i;
            for a in &by_nodes[i] {
                for b in &by_nodes[j] {
                    if phi_nf_violation(a, b).is_none() {
                        level.push(OrdTerm::phi(a.clone(), b.clone()));
                    }
                }
            }
        }
        if !params.omega_free {
            for n in 0..=ctx.limits.max_subscript {
                for a in &by_nodes[k - 1] {
                    if psi_nf_ok(n, a) {
                        level.push(OrdTerm::psi(n, a.clone()));
                    }
                }
            }
        }
        // Sums arise uniquely by prepending a leading principal part to the
        // rest of the sum (itself a principal term or a shorter sum).
        for i in 0..k {
            let j = k - 1 - i;
            for p in &by_nodes[i] {
                if !is_additive_principal(p) {
                    continue;
                }
                for q in &by_nodes[j] {
                    let rest = q.cnf_parts();
                    if rest.is_empty() || cmp_terms(p, &rest[0]) == Ordering::Less {
                        continue;
                    }
                    let mut parts = Vec::with_capacity(rest.len() + 1);
                    parts.push(p.clone());
                    parts.extend_from_slice(rest);
                    level.push(OrdTerm::sum(parts));
                }
            }
        }
        level.retain(|t| complexity(t) <= params.max_complexity);
        total += level.len();
        if total > guard {
            return Err(OracleError::UniverseTooLarge { cap: guard });
        }
        by_nodes.push(level);
    }

    let mut terms: Vec<OrdTerm> = by_nodes.into_iter().flatten().collect();
    if let Some(cap) = &params.value_cap {
        terms.retain(|t| cmp_terms(t, cap) == Ordering::Less);
    }
    terms.sort_by(cmp_terms);
    let mut index = HashMap::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let prior = index.insert(t.clone(), i);
        debug_assert!(prior.is_none(), "duplicate universe member {t}");
    }
    Ok(Universe { ctx: ctx.clone(), params, terms, index })
}

/// The order type of `a` within the universe: the count of members
/// strictly below it.
pub fn order_type(a: &OrdTerm, universe: &Universe) -> Result<usize, OracleError> {
    universe.position(a).ok_or_else(|| OracleError::NotInUniverse { term: a.to_string() })
}
