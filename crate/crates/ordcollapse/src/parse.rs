//! The term grammar:
//!
//! ```text
//! term := sum
//! sum  := prim ("+" prim)*
//! prim := "0" | numeral | "G_" nat | "O_" (nat | "w")
//!       | "phi(" term "," term ")" | "psi_" nat "(" term ")"
//!       | "w" | "w^" prim | "e_" nat | "wt_" nat
//! ```
//!
//! Parsing is structural: numerals expand to sums of `1` = `phi(0, 0)`,
//! `w^p` to `phi(0, p)`, `e_n` and `wt_n` to their defining recursions, and
//! `+` splices the parts of each summand in the order written. No
//! reordering or absorption happens here — ill-formed combinations are left
//! for normal-form validation to reject.

use thiserror::Error;

use crate::arith;
use crate::context::ThetaContext;
use crate::term::OrdTerm;

/// Hard recursion guard for nested `phi`/`psi` in the source text.
const MAX_PARSE_DEPTH: u32 = 512;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TermParseError {
    /// Malformed input (usage-level error).
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    /// Well-formed input naming something outside the configured system
    /// (domain-level error), e.g. a `G` index above theta.
    #[error("at byte {pos}: {msg}")]
    Range { pos: usize, msg: String },
}

/// Parses a complete term.
pub fn parse_term(src: &str, ctx: &ThetaContext) -> Result<OrdTerm, TermParseError> {
    let bytes = src.as_bytes();
    let mut pos = 0usize;
    let t = parse_sum(bytes, &mut pos, ctx, 0)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(TermParseError::Syntax { pos, msg: "trailing input".to_string() });
    }
    Ok(t)
}

/// Parses a term starting at `*pos`, stopping at the first byte that cannot
/// continue the grammar (used to embed terms in the formula language).
pub(crate) fn parse_term_prefix(
    bytes: &[u8],
    pos: &mut usize,
    ctx: &ThetaContext,
) -> Result<OrdTerm, TermParseError> {
    parse_sum(bytes, pos, ctx, 0)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> TermParseError {
    TermParseError::Syntax { pos, msg: msg.into() }
}

fn expect(bytes: &[u8], pos: &mut usize, token: u8) -> Result<(), TermParseError> {
    skip_ws(bytes, pos);
    if bytes.get(*pos) == Some(&token) {
        *pos += 1;
        Ok(())
    } else {
        Err(syntax(*pos, format!("expected `{}`", token as char)))
    }
}

fn parse_nat(bytes: &[u8], pos: &mut usize) -> Result<u32, TermParseError> {
    skip_ws(bytes, pos);
    let start = *pos;
    let mut value: u64 = 0;
    while let Some(d) = bytes.get(*pos).filter(|b| b.is_ascii_digit()) {
        value = value * 10 + u64::from(d - b'0');
        if value > u64::from(u32::MAX) {
            return Err(TermParseError::Range { pos: start, msg: "number too large".to_string() });
        }
        *pos += 1;
    }
    if *pos == start {
        return Err(syntax(start, "expected a number"));
    }
    Ok(value as u32)
}

fn parse_sum(
    bytes: &[u8],
    pos: &mut usize,
    ctx: &ThetaContext,
    depth: u32,
) -> Result<OrdTerm, TermParseError> {
    let mut parts: Vec<OrdTerm> = Vec::new();
    loop {
        let prim = parse_prim(bytes, pos, ctx, depth)?;
        parts.extend(prim.cnf_parts().iter().cloned());
        skip_ws(bytes, pos);
        if bytes.get(*pos) == Some(&b'+') {
            *pos += 1;
        } else {
            break;
        }
    }
    Ok(match parts.len() {
        0 => OrdTerm::zero(),
        1 => parts.pop().unwrap(),
        _ => OrdTerm::sum(parts),
    })
}

fn parse_prim(
    bytes: &[u8],
    pos: &mut usize,
    ctx: &ThetaContext,
    depth: u32,
) -> Result<OrdTerm, TermParseError> {
    if depth > MAX_PARSE_DEPTH {
        return Err(syntax(*pos, "nesting too deep"));
    }
    skip_ws(bytes, pos);
    let start = *pos;
    match bytes.get(*pos) {
        Some(b) if b.is_ascii_digit() => {
            let n = parse_nat(bytes, pos)?;
            if n > ctx.limits.max_numeral {
                return Err(TermParseError::Range {
                    pos: start,
                    msg: format!("numeral {n} exceeds limit {}", ctx.limits.max_numeral),
                });
            }
            Ok(OrdTerm::numeral(n))
        }
        Some(b'G') => {
            *pos += 1;
            expect_underscore(bytes, pos)?;
            let b = parse_nat(bytes, pos)?;
            if b > ctx.theta {
                return Err(TermParseError::Range {
                    pos: start,
                    msg: format!("G index {b} exceeds theta = {}", ctx.theta),
                });
            }
            Ok(OrdTerm::gamma(b))
        }
        Some(b'O') => {
            *pos += 1;
            expect_underscore(bytes, pos)?;
            if bytes.get(*pos) == Some(&b'w') {
                *pos += 1;
                Ok(OrdTerm::omega_limit())
            } else {
                let n = parse_nat(bytes, pos)?;
                if n > ctx.limits.max_subscript {
                    return Err(TermParseError::Range {
                        pos: start,
                        msg: format!(
                            "O subscript {n} exceeds limit {}",
                            ctx.limits.max_subscript
                        ),
                    });
                }
                Ok(OrdTerm::omega(n))
            }
        }
        Some(b'p') => {
            if bytes[*pos..].starts_with(b"phi") {
                *pos += 3;
                expect(bytes, pos, b'(')?;
                let a = parse_sum(bytes, pos, ctx, depth + 1)?;
                expect(bytes, pos, b',')?;
                let b = parse_sum(bytes, pos, ctx, depth + 1)?;
                expect(bytes, pos, b')')?;
                Ok(OrdTerm::phi(a, b))
            } else if bytes[*pos..].starts_with(b"psi") {
                *pos += 3;
                expect_underscore(bytes, pos)?;
                let n = parse_nat(bytes, pos)?;
                if n > ctx.limits.max_subscript {
                    return Err(TermParseError::Range {
                        pos: start,
                        msg: format!(
                            "psi subscript {n} exceeds limit {}",
                            ctx.limits.max_subscript
                        ),
                    });
                }
                expect(bytes, pos, b'(')?;
                let a = parse_sum(bytes, pos, ctx, depth + 1)?;
                expect(bytes, pos, b')')?;
                Ok(OrdTerm::psi(n, a))
            } else {
                Err(syntax(*pos, "expected `phi` or `psi`"))
            }
        }
        Some(b'w') => {
            if bytes[*pos..].starts_with(b"wt_") {
                *pos += 2;
                expect_underscore(bytes, pos)?;
                let n = parse_nat(bytes, pos)?;
                if n > ctx.limits.max_chain {
                    return Err(TermParseError::Range {
                        pos: start,
                        msg: format!("tower height {n} exceeds limit {}", ctx.limits.max_chain),
                    });
                }
                Ok(arith::omega_tower(n))
            } else if bytes.get(*pos + 1) == Some(&b'^') {
                *pos += 2;
                let p = parse_prim(bytes, pos, ctx, depth + 1)?;
                Ok(OrdTerm::phi(OrdTerm::zero(), p))
            } else {
                *pos += 1;
                Ok(OrdTerm::omega_order_type())
            }
        }
        Some(b'e') => {
            *pos += 1;
            expect_underscore(bytes, pos)?;
            let n = parse_nat(bytes, pos)?;
            if n > ctx.limits.max_chain {
                return Err(TermParseError::Range {
                    pos: start,
                    msg: format!("chain index {n} exceeds limit {}", ctx.limits.max_chain),
                });
            }
            Ok(arith::e_seq(n))
        }
        _ => Err(syntax(*pos, "expected a term")),
    }
}

fn expect_underscore(bytes: &[u8], pos: &mut usize) -> Result<(), TermParseError> {
    if bytes.get(*pos) == Some(&b'_') {
        *pos += 1;
        Ok(())
    } else {
        Err(syntax(*pos, "expected `_`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{validate, TermNode};

    fn ctx() -> ThetaContext {
        ThetaContext::new(2)
    }

    fn p(src: &str) -> OrdTerm {
        parse_term(src, &ctx()).unwrap()
    }

    #[test]
    fn parses_atoms_and_sugar() {
        assert_eq!(p("0"), OrdTerm::zero());
        assert_eq!(p("1"), OrdTerm::one());
        assert_eq!(p("3"), OrdTerm::numeral(3));
        assert_eq!(p("G_2"), OrdTerm::gamma(2));
        assert_eq!(p("O_0"), OrdTerm::omega(0));
        assert_eq!(p("O_w"), OrdTerm::omega_limit());
        assert_eq!(p("w^1"), OrdTerm::omega_order_type());
        assert_eq!(p("w^0"), OrdTerm::one());
    }

    #[test]
    fn parses_composite_terms() {
        assert_eq!(
            p("psi_0(O_w + 1)"),
            OrdTerm::psi(0, OrdTerm::sum(vec![OrdTerm::omega_limit(), OrdTerm::one()]))
        );
        assert_eq!(
            p("phi(1, 0)"),
            OrdTerm::phi(OrdTerm::one(), OrdTerm::zero())
        );
        assert_eq!(
            p("O_0 + G_1 + G_1"),
            OrdTerm::sum(vec![OrdTerm::omega(0), OrdTerm::gamma(1), OrdTerm::gamma(1)])
        );
    }

    #[test]
    fn numerals_splice_into_sums() {
        assert_eq!(
            p("O_w + 2"),
            OrdTerm::sum(vec![OrdTerm::omega_limit(), OrdTerm::one(), OrdTerm::one()])
        );
        assert_eq!(p("2 + 1"), OrdTerm::numeral(3));
        assert_eq!(p("1 + 0"), OrdTerm::one());
    }

    #[test]
    fn chain_sugar_expands_structurally() {
        let e0 = OrdTerm::sum(vec![OrdTerm::omega_limit(), OrdTerm::one()]);
        assert_eq!(p("e_0"), e0);
        assert_eq!(p("e_1"), OrdTerm::phi(OrdTerm::zero(), p("e_0")));
        assert_eq!(p("wt_0"), OrdTerm::one());
        assert_eq!(p("wt_1"), OrdTerm::omega_order_type());
        assert_eq!(p("wt_2"), OrdTerm::phi(OrdTerm::zero(), OrdTerm::omega_order_type()));
    }

    #[test]
    fn parse_is_structural_not_normalizing() {
        // w^G_0 parses to a non-normal fixpoint and fails validation.
        let t = p("w^G_0");
        assert_eq!(t, OrdTerm::phi(OrdTerm::zero(), OrdTerm::gamma(0)));
        assert!(validate(&t, &ctx()).is_err());
        // Ill-ordered sums parse as written.
        let t = p("G_0 + G_1");
        assert!(matches!(t.node(), TermNode::Sum(parts) if parts.len() == 2));
        assert!(validate(&t, &ctx()).is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        for src in [
            "0",
            "1",
            "5",
            "G_2",
            "O_w",
            "psi_0(O_w + 1)",
            "phi(1, 0)",
            "O_0 + 2",
            "psi_1(psi_0(G_1 + 1))",
            "phi(0, O_w + 1)",
        ] {
            let t = p(src);
            assert_eq!(parse_term(&t.to_string(), &ctx()).unwrap(), t, "{src}");
            assert_eq!(t.to_string(), src, "canonical spelling of {src}");
        }
    }

    #[test]
    fn range_errors_are_distinguished_from_syntax_errors() {
        assert!(matches!(
            parse_term("G_5", &ctx()),
            Err(TermParseError::Range { .. })
        ));
        assert!(matches!(
            parse_term("O_99", &ctx()),
            Err(TermParseError::Range { .. })
        ));
        assert!(matches!(
            parse_term("psi_99(0)", &ctx()),
            Err(TermParseError::Range { .. })
        ));
        assert!(matches!(
            parse_term("phi(1", &ctx()),
            Err(TermParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_term("x", &ctx()),
            Err(TermParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_term("G_1 G_1", &ctx()),
            Err(TermParseError::Syntax { .. })
        ));
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(p(" psi_0( O_w + 1 ) "), p("psi_0(O_w + 1)"));
        assert_eq!(p("phi( 0 ,O_0 )"), p("phi(0, O_0)"));
    }
}
