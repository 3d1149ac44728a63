//! Randomized law checks over the public API, driven by proptest-generated
//! terms. The generators go through the normalizing constructors, so every
//! sampled term is a valid normal form by construction.

use std::cmp::Ordering;

use once_cell::sync::Lazy;
use proptest::prelude::*;

use ordcollapse::arith::{add, natural_sum, omega_power, psi, veblen};
use ordcollapse::parse::parse_term;
use ordcollapse::term::{in_b, validate};
use ordcollapse::{compare, is_additive_principal, Limits, OrdTerm, ThetaContext};

static CTX: Lazy<ThetaContext> = Lazy::new(|| {
    let mut limits = Limits::default();
    limits.max_subscript = 4;
    ThetaContext::with_limits(2, limits)
});

fn atom() -> impl Strategy<Value = OrdTerm> {
    prop_oneof![
        Just(OrdTerm::zero()),
        Just(OrdTerm::one()),
        (2u32..5).prop_map(OrdTerm::numeral),
        (0u32..=2).prop_map(OrdTerm::gamma),
        (0u32..=4).prop_map(OrdTerm::omega),
        Just(OrdTerm::omega_limit()),
        Just(OrdTerm::omega_order_type()),
    ]
}

fn term() -> impl Strategy<Value = OrdTerm> {
    atom().prop_recursive(3, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| add(&a, &b)),
            inner.clone().prop_map(|a| omega_power(&a)),
            // Out-of-domain or fixpoint arguments fall back to the argument.
            (inner.clone(), inner.clone()).prop_map(|(a, b)| veblen(&a, &b).unwrap_or(b)),
            (0u32..=4, inner).prop_map(|(n, a)| psi(n, &a, &CTX).unwrap_or(a)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sampled_terms_are_valid(t in term()) {
        validate(&t, &CTX).unwrap();
    }

    #[test]
    fn comparison_is_antisymmetric_with_identity_equality(a in term(), b in term()) {
        let ab = compare(&a, &b, &CTX).unwrap();
        let ba = compare(&b, &a, &CTX).unwrap();
        prop_assert_eq!(ab, ba.reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
    }

    #[test]
    fn addition_is_associative_with_identity(a in term(), b in term(), c in term()) {
        prop_assert_eq!(add(&add(&a, &b), &c), add(&a, &add(&b, &c)));
        prop_assert_eq!(add(&a, &OrdTerm::zero()), a.clone());
        prop_assert_eq!(add(&OrdTerm::zero(), &a), a);
    }

    #[test]
    fn addition_is_monotone(a in term(), b in term()) {
        let s = add(&a, &b);
        if b.is_zero() {
            prop_assert_eq!(s, a);
        } else {
            prop_assert_eq!(compare(&s, &a, &CTX).unwrap(), Ordering::Greater);
            prop_assert_ne!(compare(&s, &b, &CTX).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn natural_sum_is_commutative_and_dominates_addition(a in term(), b in term()) {
        let n = natural_sum(&a, &b);
        prop_assert_eq!(natural_sum(&b, &a), n.clone());
        prop_assert_ne!(compare(&n, &add(&a, &b), &CTX).unwrap(), Ordering::Less);
    }

    #[test]
    fn omega_power_is_principal_and_strictly_monotone(a in term(), b in term()) {
        let pa = omega_power(&a);
        prop_assert!(is_additive_principal(&pa));
        prop_assert_eq!(
            compare(&pa, &omega_power(&b), &CTX).unwrap(),
            compare(&a, &b, &CTX).unwrap()
        );
    }

    #[test]
    fn lower_veblen_absorbs_higher_values(a in term(), c in term(), b in term()) {
        if compare(&a, &c, &CTX).unwrap() == Ordering::Less {
            if let Ok(inner) = veblen(&c, &b) {
                if let Ok(outer) = veblen(&a, &inner) {
                    prop_assert_eq!(outer, inner);
                }
            }
        }
    }

    #[test]
    fn collapse_lands_in_its_band(n in 0u32..=4, a in term()) {
        if let Ok(t) = psi(n, &a, &CTX) {
            prop_assert_eq!(compare(&t, &OrdTerm::omega(n), &CTX).unwrap(), Ordering::Less);
            if n > 0 {
                prop_assert_eq!(
                    compare(&OrdTerm::omega(n - 1), &t, &CTX).unwrap(),
                    Ordering::Less
                );
            } else {
                let base = OrdTerm::psi(0, OrdTerm::zero());
                prop_assert_ne!(compare(&t, &base, &CTX).unwrap(), Ordering::Less);
            }
        }
    }

    #[test]
    fn printed_terms_parse_back(t in term()) {
        let back = parse_term(&t.to_string(), &CTX).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn membership_criterion_is_monotone_in_the_bound(
        n in 0u32..=3,
        t in term(),
        lo in term(),
        hi in term(),
    ) {
        let (lo, hi) = match compare(&lo, &hi, &CTX).unwrap() {
            Ordering::Greater => (hi, lo),
            _ => (lo, hi),
        };
        if in_b(n, &t, &lo, &CTX).unwrap() {
            prop_assert!(in_b(n, &t, &hi, &CTX).unwrap());
        }
    }
}
