//! The notation-system parameter `theta` and resource limits.

use thiserror::Error;

/// Resource limits shared by parsers, enumeration and the self-check suite.
///
/// Every field can be overridden through the `ORDCOLLAPSE_LIMITS` environment
/// variable (a comma-separated `key=value` list, see [`Limits::apply_overrides`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest finite subscript allowed on `O_n` and `psi_n`.
    pub max_subscript: u32,
    /// Largest complexity accepted for universe enumeration requests.
    pub max_complexity: u32,
    /// Hard cap on enumerated universe size.
    pub max_universe: usize,
    /// Maximum brace nesting depth accepted by the HF parser.
    pub hf_depth: u32,
    /// Maximum transitive-closure cardinality for HF sets.
    pub hf_tc: usize,
    /// Largest decimal numeral accepted by the term parser.
    pub max_numeral: u32,
    /// Largest subscript accepted for the `e_n` / `wt_n` grammar sugar and the
    /// corresponding arithmetic chains.
    pub max_chain: u32,
    /// Iteration cap for the brute-force closure oracle.
    pub iteration_cap: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_subscript: 12,
            max_complexity: 6,
            max_universe: 1_000_000,
            hf_depth: 16,
            hf_tc: 4096,
            max_numeral: 4096,
            max_chain: 24,
            iteration_cap: 8,
        }
    }
}

/// A malformed limit-override string.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("bad limits override `{entry}`: {reason}")]
pub struct LimitsError {
    pub entry: String,
    pub reason: String,
}

impl Limits {
    /// Applies overrides of the form `max_subscript=9,max_universe=200000`.
    /// Unknown keys and unparseable values are errors.
    pub fn apply_overrides(&mut self, spec: &str) -> Result<(), LimitsError> {
        for entry in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = entry.split_once('=').ok_or_else(|| LimitsError {
                entry: entry.to_string(),
                reason: "expected key=value".to_string(),
            })?;
            let parse = |v: &str| -> Result<u64, LimitsError> {
                v.trim().parse().map_err(|_| LimitsError {
                    entry: entry.to_string(),
                    reason: "value is not a number".to_string(),
                })
            };
            let v = parse(value)?;
            match key.trim() {
                "max_subscript" => self.max_subscript = v as u32,
                "max_complexity" => self.max_complexity = v as u32,
                "max_universe" => self.max_universe = v as usize,
                "hf_depth" => self.hf_depth = v as u32,
                "hf_tc" => self.hf_tc = v as usize,
                "max_numeral" => self.max_numeral = v as u32,
                "max_chain" => self.max_chain = v as u32,
                "iteration_cap" => self.iteration_cap = v as u32,
                other => {
                    return Err(LimitsError {
                        entry: entry.to_string(),
                        reason: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        Ok(())
    }
}

/// The `theta` parameter of the notation system together with limits.
///
/// `theta` is the set-theoretic rank of the underlying hereditarily finite
/// set; `G_b` is a valid atom exactly for `b <= theta`.
#[derive(Clone, Debug)]
pub struct ThetaContext {
    pub theta: u32,
    pub limits: Limits,
}

impl ThetaContext {
    pub fn new(theta: u32) -> Self {
        ThetaContext { theta, limits: Limits::default() }
    }

    pub fn with_limits(theta: u32, limits: Limits) -> Self {
        ThetaContext { theta, limits }
    }
}
