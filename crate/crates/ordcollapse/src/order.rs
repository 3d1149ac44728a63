//! The linear order on notation terms.
//!
//! On valid normal forms the order is total and equality coincides with
//! structural identity. The comparison is also total (and deterministic) on
//! arbitrary term shapes so that diagnostics and enumeration never panic, but
//! its laws are only guaranteed for normal forms.
//!
//! Rule sketch:
//! - 0 is least; sums compare lexicographically on their CNF parts, a proper
//!   prefix being smaller;
//! - atom bands: `G_0 < ... < G_theta < psi_0-terms < O_0 < psi_1-terms < O_1
//!   < ... < O_w`;
//! - `psi_n(a)` vs `psi_n(b)` compares the arguments (collapses with the same
//!   subscript are order-preserving on their valid arguments);
//! - `phi(a1, b1)` vs `phi(a2, b2)` by the Veblen trichotomy: on equal first
//!   arguments compare the second; if a1 < a2 then the left is smaller exactly
//!   when b1 is below the whole right term; symmetrically otherwise;
//! - `phi(a, b)` vs a strongly critical term s: smaller exactly when both a
//!   and b are below s.

use std::cmp::Ordering;

use crate::context::ThetaContext;
use crate::term::{validate, Diagnostic, OmegaIndex, OrdTerm, TermNode};

/// True for terms denoting additive principal ordinals (everything except 0
/// and sums).
pub fn is_additive_principal(t: &OrdTerm) -> bool {
    !matches!(t.node(), TermNode::Zero | TermNode::Sum(_))
}

/// True for terms denoting strongly critical ordinals: the `G` atoms, the
/// stage atoms, and collapses. Normal-form `phi` terms are never strongly
/// critical.
pub fn is_strongly_critical(t: &OrdTerm) -> bool {
    matches!(t.node(), TermNode::Gamma(_) | TermNode::Omega(_) | TermNode::Psi(_, _))
}

/// One step of a traced comparison, printable as
/// `RULE <name> <lhs> <rhs> -> <LT|EQ|GT>`.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub rule: &'static str,
    pub lhs: OrdTerm,
    pub rhs: OrdTerm,
    pub verdict: Ordering,
}

pub fn verdict_str(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "LT",
        Ordering::Equal => "EQ",
        Ordering::Greater => "GT",
    }
}

impl std::fmt::Display for TraceStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RULE {} {} {} -> {}", self.rule, self.lhs, self.rhs, verdict_str(self.verdict))
    }
}

trait TraceSink {
    fn record(&mut self, rule: &'static str, lhs: &OrdTerm, rhs: &OrdTerm, verdict: Ordering);
}

struct NoTrace;

impl TraceSink for NoTrace {
    #[inline(always)]
    fn record(&mut self, _: &'static str, _: &OrdTerm, _: &OrdTerm, _: Ordering) {}
}

impl TraceSink for Vec<TraceStep> {
    fn record(&mut self, rule: &'static str, lhs: &OrdTerm, rhs: &OrdTerm, verdict: Ordering) {
        self.push(TraceStep { rule, lhs: lhs.clone(), rhs: rhs.clone(), verdict });
    }
}

/// Compares two valid terms, validating both first.
pub fn compare(a: &OrdTerm, b: &OrdTerm, ctx: &ThetaContext) -> Result<Ordering, Diagnostic> {
    validate(a, ctx)?;
    validate(b, ctx)?;
    Ok(cmp_terms(a, b))
}

/// Like [`compare`], also returning the rule applications in evaluation order
/// (subcomparisons first, each step post-recorded with its verdict).
pub fn compare_traced(
    a: &OrdTerm,
    b: &OrdTerm,
    ctx: &ThetaContext,
) -> Result<(Ordering, Vec<TraceStep>), Diagnostic> {
    validate(a, ctx)?;
    validate(b, ctx)?;
    let mut trace = Vec::new();
    let verdict = cmp_with(a, b, &mut trace);
    Ok((verdict, trace))
}

/// Raw structural comparison without validation. Total on any term shapes;
/// lawful on normal forms.
pub(crate) fn cmp_terms(a: &OrdTerm, b: &OrdTerm) -> Ordering {
    cmp_with(a, b, &mut NoTrace)
}

fn cmp_with<S: TraceSink>(a: &OrdTerm, b: &OrdTerm, sink: &mut S) -> Ordering {
    if OrdTerm::ptr_eq(a, b) {
        sink.record("identical", a, b, Ordering::Equal);
        return Ordering::Equal;
    }
    let verdict = match (a.node(), b.node()) {
        (TermNode::Zero, TermNode::Zero) => {
            sink.record("zero", a, b, Ordering::Equal);
            return Ordering::Equal;
        }
        (TermNode::Zero, _) => {
            sink.record("zero", a, b, Ordering::Less);
            return Ordering::Less;
        }
        (_, TermNode::Zero) => {
            sink.record("zero", a, b, Ordering::Greater);
            return Ordering::Greater;
        }
        (TermNode::Sum(xs), TermNode::Sum(ys)) => cmp_lex(xs, ys, sink),
        (TermNode::Sum(xs), _) => cmp_lex(xs, std::slice::from_ref(b), sink),
        (_, TermNode::Sum(ys)) => cmp_lex(std::slice::from_ref(a), ys, sink),
        _ => cmp_principal(a, b, sink),
    };
    sink.record("cnf-lex", a, b, verdict);
    verdict
}

/// Lexicographic comparison of CNF part lists; a strict prefix is smaller.
fn cmp_lex<S: TraceSink>(xs: &[OrdTerm], ys: &[OrdTerm], sink: &mut S) -> Ordering {
    let mut i = 0;
    loop {
        match (xs.get(i), ys.get(i)) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => match cmp_principal_or_general(x, y, sink) {
                Ordering::Equal => i += 1,
                o => return o,
            },
        }
    }
}

/// Parts of valid sums are additive principal; tolerate anything else by
/// falling back to the general comparison.
fn cmp_principal_or_general<S: TraceSink>(a: &OrdTerm, b: &OrdTerm, sink: &mut S) -> Ordering {
    if is_additive_principal(a) && is_additive_principal(b) {
        cmp_principal(a, b, sink)
    } else {
        cmp_with(a, b, sink)
    }
}

fn cmp_principal<S: TraceSink>(a: &OrdTerm, b: &OrdTerm, sink: &mut S) -> Ordering {
    if OrdTerm::ptr_eq(a, b) {
        sink.record("identical", a, b, Ordering::Equal);
        return Ordering::Equal;
    }
    use TermNode::*;
    let (rule, verdict) = match (a.node(), b.node()) {
        (Gamma(i), Gamma(j)) => ("gamma-index", i.cmp(j)),
        // G atoms sit below every collapse and every stage.
        (Gamma(_), Omega(_) | Psi(_, _)) => ("atom-band", Ordering::Less),
        (Omega(_) | Psi(_, _), Gamma(_)) => ("atom-band", Ordering::Greater),
        (Omega(i), Omega(j)) => ("omega-index", i.cmp(j)),
        // psi_n-terms lie strictly between O_{n-1} and O_n.
        (Omega(i), Psi(n, _)) => (
            "psi-band",
            match i {
                OmegaIndex::Finite(k) if k < n => Ordering::Less,
                _ => Ordering::Greater,
            },
        ),
        (Psi(n, _), Omega(j)) => (
            "psi-band",
            match j {
                OmegaIndex::Finite(k) if k < n => Ordering::Greater,
                _ => Ordering::Less,
            },
        ),
        (Psi(n, x), Psi(m, y)) => {
            if n == m {
                ("psi-argument", cmp_with(x, y, sink))
            } else {
                ("psi-band", n.cmp(m))
            }
        }
        (Phi(a1, b1), Phi(a2, b2)) => (
            "phi-trichotomy",
            match cmp_with(a1, a2, sink) {
                Ordering::Equal => cmp_with(b1, b2, sink),
                Ordering::Less => cmp_with(b1, b, sink),
                Ordering::Greater => cmp_with(a, b2, sink),
            },
        ),
        (Phi(x, y), Gamma(_) | Omega(_) | Psi(_, _)) => (
            "phi-vs-critical",
            if cmp_with(x, b, sink) == Ordering::Less && cmp_with(y, b, sink) == Ordering::Less {
                Ordering::Less
            } else {
                Ordering::Greater
            },
        ),
        (Gamma(_) | Omega(_) | Psi(_, _), Phi(x, y)) => (
            "phi-vs-critical",
            if cmp_with(x, a, sink) == Ordering::Less && cmp_with(y, a, sink) == Ordering::Less {
                Ordering::Greater
            } else {
                Ordering::Less
            },
        ),
        // Non-principal shapes inside a principal slot (invalid input).
        _ => ("cnf-lex", cmp_with(a, b, sink)),
    };
    sink.record(rule, a, b, verdict);
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> ThetaContext {
        ThetaContext::new(2)
    }

    fn lt(a: &OrdTerm, b: &OrdTerm) {
        assert_eq!(cmp_terms(a, b), Ordering::Less, "expected {a} < {b}");
        assert_eq!(cmp_terms(b, a), Ordering::Greater, "expected {b} > {a}");
    }

    #[test]
    fn atom_bands() {
        let g0 = OrdTerm::gamma(0);
        let g2 = OrdTerm::gamma(2);
        let o0 = OrdTerm::omega(0);
        let o1 = OrdTerm::omega(1);
        let ow = OrdTerm::omega_limit();
        lt(&OrdTerm::zero(), &g0);
        lt(&g0, &g2);
        lt(&g2, &o0);
        lt(&o0, &o1);
        lt(&o1, &ow);
    }

    #[test]
    fn collapse_bands() {
        // psi_0 terms sit between the G atoms and O_0, whatever the argument.
        let p0_big = OrdTerm::psi(0, OrdTerm::omega_limit());
        lt(&OrdTerm::gamma(2), &p0_big);
        lt(&p0_big, &OrdTerm::omega(0));
        // psi_1 terms sit between O_0 and O_1.
        let p1 = OrdTerm::psi(1, OrdTerm::zero());
        lt(&OrdTerm::omega(0), &p1);
        lt(&p1, &OrdTerm::omega(1));
        lt(&p0_big, &p1);
        // Every collapse is below O_w.
        lt(&OrdTerm::psi(3, OrdTerm::omega_limit()), &OrdTerm::omega_limit());
    }

    #[test]
    fn same_subscript_collapses_compare_arguments() {
        let a = OrdTerm::psi(0, OrdTerm::omega(0));
        let b = OrdTerm::psi(0, OrdTerm::sum(vec![OrdTerm::omega(0), OrdTerm::one()]));
        lt(&a, &b);
        assert_eq!(cmp_terms(&a, &a.clone()), Ordering::Equal);
    }

    #[test]
    fn sums_compare_lexicographically_with_prefix_smaller() {
        let o0 = OrdTerm::omega(0);
        let g0 = OrdTerm::gamma(0);
        let s1 = OrdTerm::sum(vec![o0.clone(), g0.clone()]);
        let s2 = OrdTerm::sum(vec![o0.clone(), g0.clone(), g0.clone()]);
        lt(&o0, &s1);
        lt(&s1, &s2);
        let s3 = OrdTerm::sum(vec![o0.clone(), o0.clone()]);
        lt(&s2, &s3);
        lt(&s3, &OrdTerm::omega(1));
    }

    #[test]
    fn veblen_trichotomy_examples() {
        // phi(1, 0) = eps_0 vs phi(0, phi(0, 1)) = w^w.
        let eps0 = OrdTerm::phi(OrdTerm::one(), OrdTerm::zero());
        let w_w = OrdTerm::phi(OrdTerm::zero(), OrdTerm::omega_order_type());
        lt(&w_w, &eps0);
        // Same first argument compares second: w^1 < w^2.
        let w1 = OrdTerm::omega_order_type();
        let w2 = OrdTerm::phi(OrdTerm::zero(), OrdTerm::numeral(2));
        lt(&w1, &w2);
        // 1 < w.
        lt(&OrdTerm::one(), &w1);
    }

    #[test]
    fn phi_against_strongly_critical() {
        let g0 = OrdTerm::gamma(0);
        // phi with both arguments below G_0 stays below G_0.
        let t = OrdTerm::phi(OrdTerm::one(), OrdTerm::numeral(2));
        lt(&t, &g0);
        // phi with an argument at or above G_0 is above G_0.
        let u = OrdTerm::phi(g0.clone(), g0.clone());
        lt(&g0, &u);
        // An omega power above O_w.
        let big = OrdTerm::phi(
            OrdTerm::zero(),
            OrdTerm::sum(vec![OrdTerm::omega_limit(), OrdTerm::one()]),
        );
        lt(&OrdTerm::omega_limit(), &big);
    }

    #[test]
    fn psi_zero_of_zero_is_least_collapse() {
        // psi_0(0) is above every G atom and below O_0.
        let p = OrdTerm::psi(0, OrdTerm::zero());
        lt(&OrdTerm::gamma(2), &p);
        lt(&p, &OrdTerm::omega(0));
        lt(&p, &OrdTerm::psi(0, OrdTerm::one()));
    }

    #[test]
    fn compare_validates_inputs() {
        let bad = OrdTerm::gamma(9);
        assert!(compare(&bad, &OrdTerm::zero(), &ctx()).is_err());
    }

    #[test]
    fn trace_records_rules() {
        let (v, trace) = compare_traced(
            &OrdTerm::psi(0, OrdTerm::zero()),
            &OrdTerm::omega(0),
            &ctx(),
        )
        .unwrap();
        assert_eq!(v, Ordering::Less);
        assert!(!trace.is_empty());
        let rendered = trace.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("\n");
        assert!(rendered.contains("RULE psi-band psi_0(0) O_0 -> LT"), "{rendered}");
    }

    #[test]
    fn order_agrees_with_structural_equality_on_normal_forms() {
        let terms = [
            OrdTerm::zero(),
            OrdTerm::one(),
            OrdTerm::gamma(1),
            OrdTerm::omega(0),
            OrdTerm::psi(1, OrdTerm::omega(3)),
            OrdTerm::sum(vec![OrdTerm::omega(0), OrdTerm::gamma(0)]),
        ];
        for a in &terms {
            for b in &terms {
                let same = a == b;
                assert_eq!(cmp_terms(a, b) == Ordering::Equal, same, "{a} vs {b}");
            }
        }
    }
}
