//! Text syntax for set terms and formulas.
//!
//! Formulas use prefix keywords, binders are named and converted to de
//! Bruijn indices:
//!
//! ```text
//! formula := in(term, term) | nin(term, term)
//!          | ad(term) | nad(term)
//!          | and(formula, formula) | or(formula, formula)
//!          | all(term, name. formula) | ex(term, name. formula)
//!          | eq(term, term) | neq(term, term)
//! term    := name | hf-set | L(ordinal) | sep(ordinal, name. formula)
//! ```
//!
//! `eq`/`neq` are sugar for the extensionality expansion and require closed
//! arguments. The printers in this module's sibling produce this syntax
//! back (`x`, `y`, `z`, `x3`, ... as binder names).

use thiserror::Error;

use crate::hf::HfError;
use crate::parse::{parse_term_prefix, TermParseError};
use crate::rs::ast::{eq, neq};
use crate::rs::{RsContext, RsFormula, RsTerm};

/// Parse failure for the formula language.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RsParseError {
    /// Malformed input (usage-level error).
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    /// Well-formed input outside the configured limits (domain-level error).
    #[error("at byte {pos}: {msg}")]
    Range { pos: usize, msg: String },
}

impl From<TermParseError> for RsParseError {
    fn from(e: TermParseError) -> Self {
        match e {
            TermParseError::Syntax { pos, msg } => RsParseError::Syntax { pos, msg },
            TermParseError::Range { pos, msg } => RsParseError::Range { pos, msg },
        }
    }
}

/// Parses a closed formula.
pub fn parse_formula(src: &str, ctx: &RsContext) -> Result<RsFormula, RsParseError> {
    let mut p = Parser::new(src, ctx);
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses a closed set term.
pub fn parse_rs_term(src: &str, ctx: &RsContext) -> Result<RsTerm, RsParseError> {
    let mut p = Parser::new(src, ctx);
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ctx: &'a RsContext,
    /// Innermost binder last; de Bruijn index = distance from the end.
    binders: Vec<String>,
}

const FORMULA_KEYWORDS: [&str; 10] =
    ["in", "nin", "ad", "nad", "and", "or", "all", "ex", "eq", "neq"];

impl<'a> Parser<'a> {
    fn new(src: &'a str, ctx: &'a RsContext) -> Self {
        Parser { bytes: src.as_bytes(), pos: 0, ctx, binders: Vec::new() }
    }

    fn finish(&mut self) -> Result<(), RsParseError> {
        self.skip_ws();
        if self.pos < self.bytes.len() {
            return Err(self.syntax("trailing input"));
        }
        Ok(())
    }

    fn syntax(&self, msg: &str) -> RsParseError {
        RsParseError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), RsParseError> {
        self.skip_ws();
        if self.pos < self.bytes.len() && self.bytes[self.pos] == byte {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(&format!("expected '{}'", byte as char)))
        }
    }

    fn ident(&mut self) -> Result<String, RsParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax("expected an identifier"));
        }
        Ok(String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
    }

    fn ordinal(&mut self) -> Result<crate::term::OrdTerm, RsParseError> {
        self.skip_ws();
        Ok(parse_term_prefix(self.bytes, &mut self.pos, self.ctx.theta_ctx())?)
    }

    fn formula(&mut self) -> Result<RsFormula, RsParseError> {
        self.skip_ws();
        let at = self.pos;
        let head = self.ident()?;
        self.expect(b'(')?;
        let f = match head.as_str() {
            "in" | "nin" => {
                let s = self.term()?;
                self.expect(b',')?;
                let t = self.term()?;
                if head == "in" {
                    RsFormula::In(s, t)
                } else {
                    RsFormula::NotIn(s, t)
                }
            }
            "ad" => RsFormula::Ad(self.term()?),
            "nad" => RsFormula::NotAd(self.term()?),
            "and" | "or" => {
                let l = self.formula()?;
                self.expect(b',')?;
                let r = self.formula()?;
                if head == "and" {
                    RsFormula::and(l, r)
                } else {
                    RsFormula::or(l, r)
                }
            }
            "all" | "ex" => {
                let bound = self.term()?;
                self.expect(b',')?;
                let body = self.binder_body()?;
                if head == "all" {
                    RsFormula::all(bound, body)
                } else {
                    RsFormula::ex(bound, body)
                }
            }
            "eq" | "neq" => {
                let s = self.closed_term()?;
                self.expect(b',')?;
                let t = self.closed_term()?;
                if head == "eq" {
                    eq(&s, &t)
                } else {
                    neq(&s, &t)
                }
            }
            other => {
                self.pos = at;
                return Err(self.syntax(&format!("unknown formula head '{other}'")));
            }
        };
        self.expect(b')')?;
        Ok(f)
    }

    /// `name. formula` with the name in scope for the body.
    fn binder_body(&mut self) -> Result<RsFormula, RsParseError> {
        self.skip_ws();
        let at = self.pos;
        let name = self.ident()?;
        if FORMULA_KEYWORDS.contains(&name.as_str()) || name == "L" || name == "sep" {
            self.pos = at;
            return Err(self.syntax("binder name clashes with a keyword"));
        }
        self.expect(b'.')?;
        self.binders.push(name);
        let body = self.formula();
        self.binders.pop();
        body
    }

    fn term(&mut self) -> Result<RsTerm, RsParseError> {
        self.skip_ws();
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b'{' {
            let start = self.pos;
            let set = parse_hf_at(self.bytes, &mut self.pos, self.ctx, start)?;
            return Ok(RsTerm::Basic(set));
        }
        let at = self.pos;
        let name = self.ident()?;
        match name.as_str() {
            "L" => {
                self.expect(b'(')?;
                let alpha = self.ordinal()?;
                self.expect(b')')?;
                Ok(RsTerm::LStage(alpha))
            }
            "sep" => {
                self.expect(b'(')?;
                let alpha = self.ordinal()?;
                self.expect(b',')?;
                let body = self.binder_body()?;
                self.expect(b')')?;
                Ok(RsTerm::sep(alpha, body))
            }
            _ => {
                if let Some(i) = self.binders.iter().rev().position(|b| *b == name) {
                    Ok(RsTerm::Var(i as u32))
                } else {
                    self.pos = at;
                    Err(self.syntax(&format!("unbound variable '{name}'")))
                }
            }
        }
    }

    /// A term with no free variables, for the equality sugar.
    fn closed_term(&mut self) -> Result<RsTerm, RsParseError> {
        self.skip_ws();
        let at = self.pos;
        let t = self.term()?;
        if has_free_var(&t, 0) {
            return Err(RsParseError::Syntax {
                pos: at,
                msg: "eq/neq arguments must be closed".to_string(),
            });
        }
        Ok(t)
    }
}

fn has_free_var(t: &RsTerm, depth: u32) -> bool {
    match t {
        RsTerm::Var(i) => *i >= depth,
        RsTerm::Basic(_) | RsTerm::LStage(_) => false,
        RsTerm::Sep(_, body) => formula_has_free_var(body, depth + 1),
    }
}

fn formula_has_free_var(f: &RsFormula, depth: u32) -> bool {
    match f {
        RsFormula::In(s, t) | RsFormula::NotIn(s, t) => {
            has_free_var(s, depth) || has_free_var(t, depth)
        }
        RsFormula::Ad(t) | RsFormula::NotAd(t) => has_free_var(t, depth),
        RsFormula::And(l, r) | RsFormula::Or(l, r) => {
            formula_has_free_var(l, depth) || formula_has_free_var(r, depth)
        }
        RsFormula::All(t, body) | RsFormula::Ex(t, body) => {
            has_free_var(t, depth) || formula_has_free_var(body, depth + 1)
        }
    }
}

fn parse_hf_at(
    bytes: &[u8],
    pos: &mut usize,
    ctx: &RsContext,
    start: usize,
) -> Result<crate::hf::HfSet, RsParseError> {
    crate::hf::parse_hf_at(bytes, pos, &ctx.theta_ctx().limits).map_err(|e| match e {
        HfError::Syntax { pos, msg } => RsParseError::Syntax { pos, msg },
        other => RsParseError::Range { pos: start, msg: other.to_string() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Limits;
    use crate::term::OrdTerm;

    fn ctx() -> RsContext {
        RsContext::new(1, Limits::default()).unwrap()
    }

    #[test]
    fn parses_terms() {
        let c = ctx();
        assert_eq!(parse_rs_term("{}", &c).unwrap(), RsTerm::basic_empty());
        assert_eq!(
            parse_rs_term("L(O_0 + 1)", &c).unwrap(),
            RsTerm::LStage(OrdTerm::sum(vec![OrdTerm::omega(0), OrdTerm::one()]))
        );
        let sep = parse_rs_term("sep(O_1, x. in(x, L(O_0)))", &c).unwrap();
        assert_eq!(
            sep,
            RsTerm::sep(
                OrdTerm::omega(1),
                RsFormula::In(RsTerm::Var(0), RsTerm::LStage(OrdTerm::omega(0))),
            )
        );
    }

    #[test]
    fn binder_names_map_to_indices() {
        let c = ctx();
        let f = parse_formula("all(L(O_1), a. ex(a, b. in(b, a)))", &c).unwrap();
        assert_eq!(
            f,
            RsFormula::all(
                RsTerm::LStage(OrdTerm::omega(1)),
                RsFormula::ex(
                    RsTerm::Var(0),
                    RsFormula::In(RsTerm::Var(0), RsTerm::Var(1)),
                ),
            )
        );
        // Shadowing picks the innermost binder.
        let f = parse_formula("all(L(0), x. ex(L(0), x. in(x, x)))", &c).unwrap();
        assert_eq!(
            f,
            RsFormula::all(
                RsTerm::LStage(OrdTerm::zero()),
                RsFormula::ex(
                    RsTerm::LStage(OrdTerm::zero()),
                    RsFormula::In(RsTerm::Var(0), RsTerm::Var(0)),
                ),
            )
        );
    }

    #[test]
    fn display_round_trips() {
        let c = ctx();
        for src in [
            "in({}, {{}})",
            "nad(L(O_w))",
            "and(ad(L(O_0)), or(in({}, L(1)), nin({}, L(1))))",
            "all(L(O_0), x. ex(L(O_1), y. in(x, y)))",
            "ex(sep(O_1, x. in(x, L(O_0))), x. ad(x))",
            "all(L(1), x. all(L(2), y. ex(L(3), z. all(L(4), x3. in(x3, z)))))",
        ] {
            let f = parse_formula(src, &c).unwrap();
            assert_eq!(f.to_string(), src);
            assert_eq!(parse_formula(&f.to_string(), &c).unwrap(), f);
        }
    }

    #[test]
    fn eq_sugar_expands() {
        let c = ctx();
        let f = parse_formula("eq({}, L(0))", &c).unwrap();
        assert_eq!(f, eq(&RsTerm::basic_empty(), &RsTerm::LStage(OrdTerm::zero())));
        // Open arguments are rejected: the expansion has no variable shifting.
        let err = parse_formula("all(L(1), x. eq(x, L(0)))", &c).unwrap_err();
        assert!(matches!(err, RsParseError::Syntax { .. }));
        assert!(err.to_string().contains("closed"));
    }

    #[test]
    fn error_positions_and_kinds() {
        let c = ctx();
        // Unknown head is a syntax error at the head.
        assert!(matches!(
            parse_formula("imp(ad(L(0)), ad(L(0)))", &c),
            Err(RsParseError::Syntax { pos: 0, .. })
        ));
        // Unbound variable.
        assert!(matches!(
            parse_formula("in(y, L(0))", &c),
            Err(RsParseError::Syntax { pos: 3, .. })
        ));
        // Ordinal range faults surface as range errors.
        assert!(matches!(
            parse_formula("ad(L(G_9))", &c),
            Err(RsParseError::Range { .. })
        ));
        // Trailing garbage.
        assert!(matches!(
            parse_rs_term("L(0) junk", &c),
            Err(RsParseError::Syntax { .. })
        ));
    }
}
