//! Command-line front end: parse and compare notation terms, apply the
//! arithmetic operations, enumerate initial segments, compute theory
//! bounds, query the formula measures, and run the self-check suite.
//!
//! Exit codes: 0 success, 1 domain error (out-of-range subscript,
//! non-collapsible argument, level violation, ...), 2 syntax or usage
//! error, 3 self-check failure.

use std::process::exit;

use clap::{Args, Parser, Subcommand};
use ordcollapse::arith::{self, ArithError, BoundParam, Theory};
use ordcollapse::hf::{parse_hf, HfError};
use ordcollapse::oracle::{enumerate, run_property_suite, OracleError, SuiteSizes, UniverseParams};
use ordcollapse::order::verdict_str;
use ordcollapse::parse::{parse_term, TermParseError};
use ordcollapse::rs::{
    characteristic_premises, k_set, level, parse_formula, parse_rs_term, rank_formula, rank_term,
    RsContext, RsError, RsParseError,
};
use ordcollapse::term::{complexity, node_count, Diagnostic};
use ordcollapse::{compare, compare_traced, Limits, OrdTerm, ThetaContext};
use serde_json::json;

#[derive(Parser)]
#[command(name = "ordcollapse", version, about = "Ordinal notation system with collapsing functions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Highest admissible G subscript (the rank parameter).
    #[arg(long, global = true, conflicts_with = "x", value_name = "N")]
    theta: Option<u32>,

    /// Hereditarily finite set literal, e.g. "{{},{{}}}"; theta becomes
    /// its rank and its hereditary members become the basic terms.
    #[arg(long, global = true, value_name = "SET")]
    x: Option<String>,

    /// Emit one JSON document on standard output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a term; print it back in canonical spelling.
    Check {
        term: String,
    },
    /// Compare two terms; print LT, EQ, or GT.
    Cmp {
        a: String,
        b: String,
        /// Also print each comparison rule applied, in evaluation order.
        #[arg(long)]
        trace: bool,
    },
    /// Ordinal sum a + b.
    Add { a: String, b: String },
    /// Binary Veblen function phi(a, b).
    Phi { a: String, b: String },
    /// Omega power w^a.
    Wpow { a: String },
    /// Collapse psi_n(a).
    Psi { n: u32, a: String },
    /// Enumerate every normal form within the complexity and size bounds,
    /// in ascending order.
    Enum {
        /// Maximum build complexity.
        #[arg(long)]
        complexity: u32,
        /// Maximum interior node count (defaults to the complexity bound).
        #[arg(long)]
        nodes: Option<u32>,
        /// Keep only terms strictly below this term.
        #[arg(long, value_name = "TERM")]
        below: Option<String>,
    },
    /// Stage bound of a theory (kpl, kplr, wkpl) at a proof parameter:
    /// a natural number for kpl/kplr, an ordinal term for wkpl.
    Bound { theory: String, param: String },
    /// Rank of a formula or term.
    Rank { input: String },
    /// Level of a term.
    Level { term: String },
    /// Ordinal parameters of a formula, sorted ascending.
    Kset { formula: String },
    /// Characteristic premises of a non-basic formula under a level cap.
    Premises {
        formula: String,
        /// Level cap for witness terms.
        #[arg(long, default_value = "O_2", value_name = "TERM")]
        cap: String,
    },
    /// Run the seeded property suite; exit 3 on any failure.
    Selfcheck {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

/// A failed command, tagged with the exit code it maps to.
enum Failure {
    /// Exit 1: input parses but lies outside the system or an operation's
    /// domain.
    Domain(String),
    /// Exit 2: malformed input or bad flag combination.
    Usage(String),
    /// Exit 3: the self-check suite found a counterexample.
    Selfcheck,
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Selfcheck => 3,
        }
    }
}

impl From<TermParseError> for Failure {
    fn from(e: TermParseError) -> Self {
        match e {
            TermParseError::Syntax { .. } => Failure::Usage(e.to_string()),
            TermParseError::Range { .. } => Failure::Domain(e.to_string()),
        }
    }
}

impl From<RsParseError> for Failure {
    fn from(e: RsParseError) -> Self {
        match e {
            RsParseError::Syntax { .. } => Failure::Usage(e.to_string()),
            RsParseError::Range { .. } => Failure::Domain(e.to_string()),
        }
    }
}

impl From<HfError> for Failure {
    fn from(e: HfError) -> Self {
        match e {
            HfError::Syntax { .. } => Failure::Usage(e.to_string()),
            HfError::TooDeep { .. } | HfError::TcTooLarge { .. } => Failure::Domain(e.to_string()),
        }
    }
}

impl From<Diagnostic> for Failure {
    fn from(e: Diagnostic) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<ArithError> for Failure {
    fn from(e: ArithError) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<RsError> for Failure {
    fn from(e: RsError) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => {}
        Err(f) => {
            match &f {
                Failure::Domain(msg) | Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Selfcheck => eprintln!("error: self-check failed"),
            }
            exit(f.code());
        }
    }
}

fn load_limits() -> Result<Limits, Failure> {
    let mut limits = Limits::default();
    if let Ok(spec) = std::env::var("ORDCOLLAPSE_LIMITS") {
        limits.apply_overrides(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(limits)
}

fn theta_ctx(global: &Global, limits: &Limits) -> Result<ThetaContext, Failure> {
    let theta = match &global.x {
        Some(src) => parse_hf(src, limits)?.rank(),
        None => global.theta.unwrap_or(1),
    };
    Ok(ThetaContext::with_limits(theta, limits.clone()))
}

fn rs_ctx(global: &Global, limits: &Limits) -> Result<RsContext, Failure> {
    let ctx = match &global.x {
        Some(src) => RsContext::with_set(parse_hf(src, limits)?, limits.clone())?,
        None => RsContext::new(global.theta.unwrap_or(1), limits.clone())?,
    };
    Ok(ctx)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let limits = load_limits()?;
    let global = &cli.global;
    match &cli.cmd {
        Cmd::Check { term } => {
            let ctx = theta_ctx(global, &limits)?;
            let t = parse_term(term, &ctx)?;
            if global.json {
                emit(json!({
                    "term": t.to_string(),
                    "complexity": complexity(&t),
                    "nodes": node_count(&t),
                }));
            } else {
                println!("{t}");
            }
        }
        Cmd::Cmp { a, b, trace } => {
            let ctx = theta_ctx(global, &limits)?;
            let a = parse_term(a, &ctx)?;
            let b = parse_term(b, &ctx)?;
            if *trace {
                let (verdict, steps) = compare_traced(&a, &b, &ctx)?;
                if global.json {
                    emit(json!({
                        "verdict": verdict_str(verdict),
                        "trace": steps.iter().map(|s| json!({
                            "rule": s.rule,
                            "lhs": s.lhs.to_string(),
                            "rhs": s.rhs.to_string(),
                            "verdict": verdict_str(s.verdict),
                        })).collect::<Vec<_>>(),
                    }));
                } else {
                    for s in &steps {
                        println!("{s}");
                    }
                    println!("{}", verdict_str(verdict));
                }
            } else {
                let verdict = compare(&a, &b, &ctx)?;
                if global.json {
                    emit(json!({ "verdict": verdict_str(verdict) }));
                } else {
                    println!("{}", verdict_str(verdict));
                }
            }
        }
        Cmd::Add { a, b } => {
            let ctx = theta_ctx(global, &limits)?;
            let a = parse_term(a, &ctx)?;
            let b = parse_term(b, &ctx)?;
            print_term(global, &arith::add(&a, &b));
        }
        Cmd::Phi { a, b } => {
            let ctx = theta_ctx(global, &limits)?;
            let a = parse_term(a, &ctx)?;
            let b = parse_term(b, &ctx)?;
            print_term(global, &arith::veblen(&a, &b)?);
        }
        Cmd::Wpow { a } => {
            let ctx = theta_ctx(global, &limits)?;
            let a = parse_term(a, &ctx)?;
            print_term(global, &arith::omega_power(&a));
        }
        Cmd::Psi { n, a } => {
            let ctx = theta_ctx(global, &limits)?;
            let a = parse_term(a, &ctx)?;
            print_term(global, &arith::psi(*n, &a, &ctx)?);
        }
        Cmd::Enum { complexity, nodes, below } => {
            let ctx = theta_ctx(global, &limits)?;
            let mut params = UniverseParams::new(*complexity, nodes.unwrap_or(*complexity));
            if let Some(src) = below {
                params = params.with_value_cap(parse_term(src, &ctx)?);
            }
            let universe = enumerate(&ctx, params)?;
            if global.json {
                emit(json!({
                    "theta": ctx.theta,
                    "count": universe.len(),
                    "terms": universe.terms().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                }));
            } else {
                for t in universe.terms() {
                    println!("{t}");
                }
            }
        }
        Cmd::Bound { theory, param } => {
            let ctx = theta_ctx(global, &limits)?;
            let theory: Theory = theory.parse().map_err(Failure::Usage)?;
            let param = match theory {
                Theory::KPl | Theory::KPlr => BoundParam::Nat(
                    param
                        .parse::<u32>()
                        .map_err(|e| Failure::Usage(format!("parameter `{param}`: {e}")))?,
                ),
                Theory::WKPl => BoundParam::Ord(parse_term(param, &ctx)?),
            };
            let report = arith::bound(theory, param, &ctx)?;
            if global.json {
                emit(report.to_json());
            } else {
                for (name, term) in &report.intermediates {
                    println!("{name} = {term}");
                }
                println!("stage = {}", report.stage);
            }
        }
        Cmd::Rank { input } => {
            let ctx = rs_ctx(global, &limits)?;
            let rank = if looks_like_formula(input) {
                rank_formula(&parse_formula(input, &ctx)?, &ctx)?
            } else {
                rank_term(&parse_rs_term(input, &ctx)?, &ctx)?
            };
            print_measure(global, "rank", &rank);
        }
        Cmd::Level { term } => {
            let ctx = rs_ctx(global, &limits)?;
            let t = parse_rs_term(term, &ctx)?;
            print_measure(global, "level", &level(&t, &ctx)?);
        }
        Cmd::Kset { formula } => {
            let ctx = rs_ctx(global, &limits)?;
            let f = parse_formula(formula, &ctx)?;
            let ks = k_set(&f, &ctx)?;
            if global.json {
                emit(json!(ks.iter().map(|t| t.to_string()).collect::<Vec<_>>()));
            } else {
                let items: Vec<String> = ks.iter().map(|t| t.to_string()).collect();
                println!("{{{}}}", items.join(", "));
            }
        }
        Cmd::Premises { formula, cap } => {
            let ctx = rs_ctx(global, &limits)?;
            let f = parse_formula(formula, &ctx)?;
            let cap = parse_term(cap, ctx.theta_ctx())?;
            let premises = characteristic_premises(&f, &cap, &ctx)?;
            if global.json {
                emit(json!(premises.iter().map(|p| json!({
                    "formula": p.formula.to_string(),
                    "term": p.term.to_string(),
                })).collect::<Vec<_>>()));
            } else {
                for p in &premises {
                    println!("{}  [{}]", p.formula, p.term);
                }
            }
        }
        Cmd::Selfcheck { seed } => {
            let ctx = theta_ctx(global, &limits)?;
            let report = run_property_suite(&ctx, *seed, SuiteSizes::default());
            if global.json {
                println!("{}", report.to_json());
            } else {
                for p in &report.properties {
                    let status = if p.failures.is_empty() { "PASS" } else { "FAIL" };
                    println!("{status} {} ({} samples)", p.property, p.samples);
                    for f in &p.failures {
                        println!("  inputs {:?}: expected {}, got {}", f.inputs, f.expected, f.got);
                    }
                }
            }
            if !report.passed {
                return Err(Failure::Selfcheck);
            }
        }
    }
    Ok(())
}

/// Formulas always open with a connective keyword and a parenthesis; terms
/// never do.
fn looks_like_formula(src: &str) -> bool {
    let head: String =
        src.trim_start().chars().take_while(|c| c.is_ascii_alphabetic()).collect();
    matches!(
        head.as_str(),
        "in" | "nin" | "ad" | "nad" | "and" | "or" | "all" | "ex" | "eq" | "neq"
    )
}

fn print_term(global: &Global, t: &OrdTerm) {
    if global.json {
        emit(json!({ "term": t.to_string() }));
    } else {
        println!("{t}");
    }
}

fn print_measure(global: &Global, key: &str, value: &OrdTerm) {
    if global.json {
        emit(json!({ key: value.to_string() }));
    } else {
        println!("{value}");
    }
}

fn emit(doc: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&doc).expect("serialization cannot fail"));
}
