//! Hereditarily finite sets: brace-notation parsing, canonical form,
//! set-theoretic rank and transitive closure.
//!
//! A set is kept in canonical form: elements sorted by rank, then
//! lexicographically by canonical serialization, with duplicates removed.
//! Canonical serialization uses no whitespace, e.g. `{{},{{}}}`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

use crate::context::Limits;

/// A hereditarily finite set in canonical form.
#[derive(Clone, Debug)]
pub struct HfSet {
    rank: u32,
    repr: String,
    elems: Vec<HfSet>,
}

impl HfSet {
    /// Builds a set from elements, canonicalizing (sort + dedup).
    pub fn new(mut elems: Vec<HfSet>) -> HfSet {
        elems.sort();
        elems.dedup();
        let rank = elems.iter().map(|e| e.rank + 1).max().unwrap_or(0);
        let mut repr = String::from("{");
        for (i, e) in elems.iter().enumerate() {
            if i > 0 {
                repr.push(',');
            }
            repr.push_str(&e.repr);
        }
        repr.push('}');
        HfSet { rank, repr, elems }
    }

    pub fn empty() -> HfSet {
        HfSet::new(Vec::new())
    }

    /// The set-theoretic rank: 0 for the empty set, else max(rank(e)+1).
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn elems(&self) -> &[HfSet] {
        &self.elems
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, e: &HfSet) -> bool {
        self.elems.binary_search(e).is_ok()
    }

    /// The transitive closure TC({self}) — the set itself plus everything
    /// hereditarily contained in it — in canonical order.
    ///
    /// Errors if the closure would exceed `limits.hf_tc`.
    pub fn transitive_closure(&self, limits: &Limits) -> Result<Vec<HfSet>, HfError> {
        let mut seen: BTreeSet<HfSet> = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(s) = stack.pop() {
            if seen.contains(&s) {
                continue;
            }
            for e in s.elems() {
                stack.push(e.clone());
            }
            seen.insert(s);
            if seen.len() > limits.hf_tc {
                return Err(HfError::TcTooLarge { cap: limits.hf_tc });
            }
        }
        Ok(seen.into_iter().collect())
    }
}

impl PartialEq for HfSet {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr
    }
}

impl Eq for HfSet {}

impl std::hash::Hash for HfSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

impl PartialOrd for HfSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HfSet {
    /// Canonical order: by rank, then lexicographically on serialization.
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank.cmp(&other.rank).then_with(|| self.repr.cmp(&other.repr))
    }
}

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.repr)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum HfError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("nesting depth exceeds limit {cap}")]
    TooDeep { cap: u32 },
    #[error("set has more than {cap} hereditary members")]
    TcTooLarge { cap: usize },
}

/// Parses brace notation: `hf := "{" (hf ("," hf)*)? "}"`.
/// Whitespace is ignored; the result is canonical (sorted, deduplicated).
pub fn parse_hf(src: &str, limits: &Limits) -> Result<HfSet, HfError> {
    let bytes = src.as_bytes();
    let mut pos = 0usize;
    let mut count = 0usize;
    let set = parse_set(bytes, &mut pos, 0, limits, &mut count)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(HfError::Syntax { pos, msg: "trailing input".to_string() });
    }
    Ok(set)
}

/// Parses one set starting at `*pos`; used by the formula parser for
/// `u:{...}` literals embedded in larger input.
pub(crate) fn parse_hf_at(bytes: &[u8], pos: &mut usize, limits: &Limits) -> Result<HfSet, HfError> {
    let mut count = 0usize;
    parse_set(bytes, pos, 0, limits, &mut count)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_set(
    bytes: &[u8],
    pos: &mut usize,
    depth: u32,
    limits: &Limits,
    count: &mut usize,
) -> Result<HfSet, HfError> {
    if depth >= limits.hf_depth {
        return Err(HfError::TooDeep { cap: limits.hf_depth });
    }
    *count += 1;
    if *count > limits.hf_tc {
        return Err(HfError::TcTooLarge { cap: limits.hf_tc });
    }
    skip_ws(bytes, pos);
    if bytes.get(*pos) != Some(&b'{') {
        return Err(HfError::Syntax { pos: *pos, msg: "expected `{`".to_string() });
    }
    *pos += 1;
    let mut elems = Vec::new();
    skip_ws(bytes, pos);
    if bytes.get(*pos) == Some(&b'}') {
        *pos += 1;
        return Ok(HfSet::new(elems));
    }
    loop {
        elems.push(parse_set(bytes, pos, depth + 1, limits, count)?);
        skip_ws(bytes, pos);
        match bytes.get(*pos) {
            Some(&b',') => {
                *pos += 1;
            }
            Some(&b'}') => {
                *pos += 1;
                return Ok(HfSet::new(elems));
            }
            _ => {
                return Err(HfError::Syntax { pos: *pos, msg: "expected `,` or `}`".to_string() })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    fn hf(s: &str) -> HfSet {
        parse_hf(s, &limits()).unwrap()
    }

    #[test]
    fn parse_canonicalizes_order_and_duplicates() {
        // {{{}},{}} parses to the canonical {{},{{}}}.
        assert_eq!(hf("{{{}},{}}").to_string(), "{{},{{}}}");
        assert_eq!(hf("{{},{}}").to_string(), "{{}}");
        assert_eq!(hf("{}"), HfSet::empty());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(hf("{}").rank(), 0);
        assert_eq!(hf("{{}}").rank(), 1);
        assert_eq!(hf("{{},{{}}}").rank(), 2);
        // von Neumann 3 = {0,1,2}
        assert_eq!(hf("{{},{{}},{{},{{}}}}").rank(), 3);
    }

    #[test]
    fn transitive_closure_is_sorted_and_complete() {
        let x = hf("{{}}");
        let tc = x.transitive_closure(&limits()).unwrap();
        assert_eq!(
            tc.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            vec!["{}", "{{}}"]
        );
        let y = hf("{{},{{}}}");
        let tc = y.transitive_closure(&limits()).unwrap();
        assert_eq!(tc.len(), 3);
        assert!(tc.windows(2).all(|w| w[0] < w[1]));
        // Every member's members are present (transitivity).
        for s in &tc {
            for e in s.elems() {
                assert!(tc.contains(e));
            }
        }
    }

    #[test]
    fn canonical_order_is_rank_then_serialization() {
        let a = hf("{}");
        let b = hf("{{}}");
        let c = hf("{{},{{}}}");
        assert!(a < b && b < c);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_hf("{{}", &limits()).unwrap_err();
        assert!(matches!(err, HfError::Syntax { .. }));
        let err = parse_hf("{} x", &limits()).unwrap_err();
        assert!(matches!(err, HfError::Syntax { pos: 3, .. }));
    }

    #[test]
    fn depth_limit_enforced() {
        let mut deep = String::new();
        for _ in 0..20 {
            deep.push('{');
        }
        for _ in 0..20 {
            deep.push('}');
        }
        assert!(matches!(parse_hf(&deep, &limits()), Err(HfError::TooDeep { .. })));
    }

    #[test]
    fn membership_uses_canonical_equality() {
        let x = hf("{{},{{}}}");
        assert!(x.contains(&hf("{}")));
        assert!(x.contains(&hf("{{}}")));
        assert!(!x.contains(&x.clone()));
    }
}
