//! Argument parsing and command dispatch for the `tspace` binary.
//!
//! [`run`] does all the work and returns the text destined for stdout and
//! stderr together with the exit code, so tests can drive the CLI in-process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use tspace_core::canonical::{normal_form, Modulus, SSNormalForm};
use tspace_core::expr::{parse, parse_grassmann};
use tspace_core::families::{enumerate_w, phi_prime, w, PhiVariant};
use tspace_core::grassmann::{
    check_central, check_identity, evaluate, strategy, strategy_names, Assignment,
};
use tspace_core::lab::{run_timed, LabParams, Registry, VerificationReport};
use tspace_core::spans::{member, Coordinates, MemberOptions, SpaceSpec, SpanConfig};
use tspace_core::{AlgebraError, Field, Mode, Polynomial};

/// JSON Schema (draft-07) for everything printed with `--format json`.
pub const SCHEMA: &str = include_str!("../schema/tspace.schema.json");

/// Exit code for a question answered, or every check passed.
pub const EXIT_OK: i32 = 0;
/// Exit code for a failed identity, centrality or verification check.
pub const EXIT_FAILED: i32 = 1;
/// Exit code for bad usage, unparsable input or an exceeded budget.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "tspace",
    version,
    about = "Free algebras over F_p modulo Grassmann identities, and T-space membership"
)]
pub struct Cli {
    /// Characteristic: an odd prime no larger than 251.
    #[arg(long, global = true, default_value_t = 3)]
    pub p: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Maximum substitution instances per component.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Refuse components with more words than this.
    #[arg(long, global = true)]
    pub max_words: Option<u128>,
    /// Work in the unitary free algebra (constants allowed).
    #[arg(long, global = true)]
    pub unitary: bool,
    /// Worker threads for `verify` (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Record wall-clock time per suite; output is then no longer reproducible.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModArg {
    T3,
    Tg0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    #[value(name = "G")]
    G,
    #[value(name = "G0")]
    G0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoordsArg {
    Words,
    Ss,
    Bss,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form modulo T3 (SS terms) or TG0 (BSS terms).
    Nf {
        #[arg(long = "mod", value_enum, default_value_t = ModArg::T3)]
        modulus: ModArg,
        expr: String,
    },
    /// Evaluate on a Grassmann algebra under explicit images `x<k>=<element>`.
    Eval {
        #[arg(long, value_enum, default_value_t = AlgebraArg::G0)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 8)]
        rank: u32,
        #[arg(long = "assign", value_name = "xK=EXPR")]
        assign: Vec<String>,
        expr: String,
    },
    /// Check that an expression vanishes on a Grassmann algebra.
    Identity(CheckArgs),
    /// Check that every value of an expression is central.
    Central(CheckArgs),
    /// Decide membership in a sum of T-ideals and T-spaces, e.g. `S2+TG0`.
    Member {
        #[arg(long)]
        space: String,
        #[arg(long, value_enum)]
        coords: Option<CoordsArg>,
        /// Most monomials summed into one variable of a non-multilinear generator.
        #[arg(long)]
        sum_terms: Option<usize>,
        /// Longest monomial allowed inside such a sum.
        #[arg(long)]
        sum_len: Option<usize>,
        /// Take commutator instances over all words instead of a basis.
        #[arg(long)]
        all_words: bool,
        expr: String,
    },
    /// Print members of the polynomial families.
    Gen {
        #[command(subcommand)]
        family: GenCommand,
    },
    /// Run verification suites by id, or `all`.
    Verify {
        suite: Option<String>,
        /// List the available suites.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
        /// Also run the slower brute-force cross-checks.
        #[arg(long)]
        thorough: bool,
    },
    /// Print the JSON Schema of the JSON output.
    Schema,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, default_value = "random")]
    pub strategy: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 20_240_601)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = AlgebraArg::G0)]
    pub algebra: AlgebraArg,
    #[arg(long, default_value_t = 8)]
    pub rank: u32,
    pub expr: String,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// The product of kappa over the pairs (x1,x2), ..., (x_(2m-1),x_(2m)).
    Wm {
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// The word-product variants of w_m.
    Phiprime {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value = "bracketed")]
        variant: String,
    },
    /// Every w_j, j <= m, on increasing variable tuples up to x_maxvar.
    #[command(name = "W")]
    W {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 4)]
        maxvar: u32,
    },
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let field = match Field::new(cli.p) {
        Ok(f) => f,
        Err(e) => return Outcome::error(e),
    };
    let result = match &cli.command {
        Command::Nf { modulus, expr } => nf(cli, field, *modulus, expr),
        Command::Eval {
            algebra,
            rank,
            assign,
            expr,
        } => eval(cli, field, *algebra, *rank, assign, expr),
        Command::Identity(args) => identity(cli, field, args),
        Command::Central(args) => central(cli, field, args),
        Command::Member {
            space,
            coords,
            sum_terms,
            sum_len,
            all_words,
            expr,
        } => {
            let mut cfg = span_config(cli);
            if let Some(k) = sum_terms {
                cfg.sum_terms = *k;
            }
            if sum_len.is_some() {
                cfg.sum_monomial_len = *sum_len;
            }
            cfg.commutators_over_words = *all_words;
            membership(cli, field, space, *coords, cfg, expr)
        }
        Command::Gen { family } => generate(cli, field, family),
        Command::Verify {
            suite,
            list,
            m,
            seed,
            trials,
            thorough,
        } => {
            return verify(cli, suite.as_deref(), *list, *m, *seed, *trials, *thorough);
        }
        Command::Schema => Ok(Outcome::ok(format!("{SCHEMA}\n"))),
    };
    result.unwrap_or_else(Outcome::error)
}

fn mode(cli: &Cli) -> Mode {
    if cli.unitary {
        Mode::Unitary
    } else {
        Mode::Nonunitary
    }
}

fn span_config(cli: &Cli) -> SpanConfig {
    let mut cfg = SpanConfig::default();
    if let Some(b) = cli.budget {
        cfg.max_instances = b;
    }
    if let Some(w) = cli.max_words {
        cfg.max_words = w;
    }
    cfg
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn poly_json(f: &Polynomial) -> Value {
    serde_json::to_value(f).expect("polynomials serialize")
}

fn nf_terms(nf: &SSNormalForm) -> Value {
    Value::Array(
        nf.terms()
            .map(|(t, c)| json!({"coef": c, "term": t.to_string()}))
            .collect(),
    )
}

fn nf(cli: &Cli, field: Field, modulus: ModArg, expr: &str) -> Result<Outcome, AlgebraError> {
    let f = parse(expr, field, mode(cli))?;
    let modulus = match modulus {
        ModArg::T3 => Modulus::T3,
        ModArg::Tg0 => Modulus::TG0,
    };
    let nf = normal_form(&f, modulus);
    Ok(Outcome::ok(match cli.format {
        Format::Text => format!("{nf}\n"),
        Format::Json => to_json(&json!({
            "input": poly_json(&f),
            "modulus": modulus.to_string(),
            "normal_form": nf_terms(&nf),
            "embedded": poly_json(&nf.embed()),
            "text": nf.to_string(),
        })),
    }))
}

fn algebra_mode(cli: &Cli, algebra: AlgebraArg) -> (Mode, Mode) {
    let elements = match algebra {
        AlgebraArg::G => Mode::Unitary,
        AlgebraArg::G0 => Mode::Nonunitary,
    };
    let poly = if cli.unitary || algebra == AlgebraArg::G {
        Mode::Unitary
    } else {
        Mode::Nonunitary
    };
    (poly, elements)
}

fn algebra_name(a: AlgebraArg) -> &'static str {
    match a {
        AlgebraArg::G => "G",
        AlgebraArg::G0 => "G0",
    }
}

fn parse_assignment(
    text: &str,
    field: Field,
    rank: u32,
    mode: Mode,
) -> Result<(u32, tspace_core::grassmann::GrassmannElement), AlgebraError> {
    let bad = || AlgebraError::Parse {
        pos: 0,
        msg: format!("expected `x<k>=<element>`, got `{text}`"),
    };
    let (lhs, rhs) = text.split_once('=').ok_or_else(bad)?;
    let v: u32 = lhs
        .trim()
        .strip_prefix('x')
        .and_then(|k| k.parse().ok())
        .filter(|&k| k > 0)
        .ok_or_else(bad)?;
    Ok((v, parse_grassmann(rhs, field, rank, mode)?))
}

fn eval(
    cli: &Cli,
    field: Field,
    algebra: AlgebraArg,
    rank: u32,
    assign: &[String],
    expr: &str,
) -> Result<Outcome, AlgebraError> {
    let (pm, em) = algebra_mode(cli, algebra);
    let f = parse(expr, field, pm)?;
    let mut a = Assignment::new();
    for text in assign {
        let (v, g) = parse_assignment(text, field, rank, em)?;
        a.insert(v, g);
    }
    if a.is_empty() {
        // Constants still need an algebra to live in.
        if let Some(v) = f.variables().into_iter().next() {
            return Err(AlgebraError::MissingAssignment(v));
        }
        a.insert(
            0,
            tspace_core::grassmann::GrassmannElement::zero(field, rank, em)?,
        );
    }
    let value = evaluate(&f, &a)?;
    Ok(Outcome::ok(match cli.format {
        Format::Text => format!("{value}\n"),
        Format::Json => to_json(&json!({
            "input": poly_json(&f),
            "algebra": algebra_name(algebra),
            "rank": rank,
            "assignment": a.iter().filter(|(v, _)| **v > 0).map(|(v, g)| (format!("x{v}"), Value::String(g.to_string()))).collect::<serde_json::Map<_, _>>(),
            "value": value.to_string(),
            "central": value.is_central(),
        })),
    }))
}

fn identity(cli: &Cli, field: Field, args: &CheckArgs) -> Result<Outcome, AlgebraError> {
    let (pm, em) = algebra_mode(cli, args.algebra);
    let f = parse(&args.expr, field, pm)?;
    let strat = strategy(&args.strategy, args.trials, args.seed)?;
    let verdict = check_identity(&f, em, args.rank, strat.as_ref())?;
    let code = if verdict.holds() {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    let mut v = serde_json::to_value(&verdict).expect("verdicts serialize");
    let text = match cli.format {
        Format::Json => {
            v["input"] = poly_json(&f);
            to_json(&v)
        }
        Format::Text => {
            let mut s = format!(
                "{} on {} rank {} ({})\n",
                v["verdict"].as_str().unwrap_or(""),
                args_algebra(&v),
                args.rank,
                v["strategy"].as_str().unwrap_or("")
            );
            if let Some(n) = v.get("evaluations") {
                let _ = writeln!(s, "evaluations: {n}");
            }
            if let Some(wit) = v.get("witness") {
                write_witness(&mut s, "witness", wit);
            }
            s
        }
    };
    Ok(Outcome::with_code(code, text))
}

fn args_algebra(v: &Value) -> &str {
    v["algebra"].as_str().unwrap_or("")
}

fn write_witness(s: &mut String, label: &str, wit: &Value) {
    let _ = writeln!(s, "{label}:");
    for pair in wit["assignment"].as_array().into_iter().flatten() {
        let _ = writeln!(
            s,
            "  {} -> {}",
            pair[0].as_str().unwrap_or(""),
            pair[1].as_str().unwrap_or("")
        );
    }
    let _ = writeln!(s, "  value {}", wit["value"].as_str().unwrap_or(""));
    if let Some(g) = wit.get("against").and_then(Value::as_str) {
        let _ = writeln!(s, "  does not commute with {g}");
    }
}

fn central(cli: &Cli, field: Field, args: &CheckArgs) -> Result<Outcome, AlgebraError> {
    let (pm, em) = algebra_mode(cli, args.algebra);
    let f = parse(&args.expr, field, pm)?;
    let strat = strategy(&args.strategy, args.trials, args.seed)?;
    let verdict = check_central(&f, em, args.rank, strat.as_ref())?;
    let code = if verdict.central {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    let mut v = serde_json::to_value(&verdict).expect("verdicts serialize");
    v["central_polynomial"] = json!(verdict.is_central_polynomial());
    let text = match cli.format {
        Format::Json => {
            v["input"] = poly_json(&f);
            to_json(&v)
        }
        Format::Text => {
            let what = match (verdict.central, verdict.nonzero_seen) {
                (false, _) => "not central",
                (true, true) => "central",
                (true, false) => "central (every sampled value was zero)",
            };
            let mut s = format!(
                "{what} on {} rank {} ({}, {} evaluations)\n",
                verdict.algebra, verdict.rank, verdict.strategy, verdict.evaluations
            );
            if let Some(wit) = v.get("non_central_witness").filter(|w| !w.is_null()) {
                write_witness(&mut s, "witness", wit);
            }
            s
        }
    };
    Ok(Outcome::with_code(code, text))
}

fn membership(
    cli: &Cli,
    field: Field,
    space: &str,
    coords: Option<CoordsArg>,
    config: SpanConfig,
    expr: &str,
) -> Result<Outcome, AlgebraError> {
    let m = mode(cli);
    let f = parse(expr, field, m)?;
    let spec = SpaceSpec::parse(space, field, m)?;
    let coords = coords.map(|c| match c {
        CoordsArg::Words => Coordinates::Words,
        CoordsArg::Ss => Coordinates::SS,
        CoordsArg::Bss => Coordinates::BSS,
    });
    let cert = member(&f, &spec, &MemberOptions { coords, config })?;
    Ok(Outcome::ok(match cli.format {
        Format::Json => to_json(&serde_json::to_value(&cert).expect("certificates serialize")),
        Format::Text => {
            let v = serde_json::to_value(&cert).expect("certificates serialize");
            let mut s = format!(
                "{}{} in {} ({} coordinates, rank {})\n",
                v["verdict"].as_str().unwrap_or(""),
                if cert.exact {
                    ""
                } else {
                    " (inexact: some spans are truncated)"
                },
                cert.space,
                v["coordinates"].as_str().unwrap_or(""),
                cert.rank
            );
            for e in &cert.certificate {
                let _ = writeln!(s, "  {} * {}", field.signed(e.coef), e.instance);
            }
            for c in cert.components.iter().filter(|c| !c.member) {
                let residual: Vec<String> = c
                    .residual
                    .iter()
                    .map(|(t, k)| format!("{}*{t}", field.signed(*k)))
                    .collect();
                let _ = writeln!(
                    s,
                    "  component {}: dim {}, rank {}, residual {}",
                    c.multidegree,
                    c.dim,
                    c.rank,
                    residual.join(" + ")
                );
            }
            s
        }
    }))
}

fn generate(cli: &Cli, field: Field, family: &GenCommand) -> Result<Outcome, AlgebraError> {
    let m = mode(cli);
    let (name, params, polys) = match family {
        GenCommand::Wm { m: k } => ("wm", json!({"m": k}), vec![w(*k, field, m)?]),
        GenCommand::Phiprime { m: k, variant } => {
            let v: PhiVariant = variant.parse()?;
            (
                "phiprime",
                json!({"m": k, "variant": v.to_string()}),
                vec![phi_prime(*k, v, field, m)?],
            )
        }
        GenCommand::W { m: k, maxvar } => (
            "W",
            json!({"m": k, "maxvar": maxvar}),
            enumerate_w(*k, *maxvar, field, m)?,
        ),
    };
    let text: Vec<String> = polys.iter().map(|f| f.to_string()).collect();
    Ok(Outcome::ok(match cli.format {
        Format::Text => text.iter().map(|t| format!("{t}\n")).collect(),
        Format::Json => to_json(&json!({
            "family": name,
            "parameters": params,
            "polynomials": polys.iter().map(poly_json).collect::<Vec<_>>(),
            "text": text,
        })),
    }))
}

fn verify(
    cli: &Cli,
    suite: Option<&str>,
    list: bool,
    m: Option<u32>,
    seed: Option<u64>,
    trials: Option<u64>,
    thorough: bool,
) -> Outcome {
    let registry = Registry::default();
    if list {
        return Outcome::ok(match cli.format {
            Format::Text => registry
                .iter()
                .map(|s| format!("{:<18} {}\n", s.id(), s.title()))
                .collect(),
            Format::Json => to_json(&json!(registry
                .iter()
                .map(|s| json!({"id": s.id(), "title": s.title()}))
                .collect::<Vec<_>>())),
        });
    }
    let Some(which) = suite else {
        return Outcome::error(format!(
            "name a suite or `all`; known: {}",
            registry.ids().join(", ")
        ));
    };
    let ids: Vec<&str> = if which == "all" {
        registry.ids()
    } else {
        match registry.get(which) {
            Some(s) => vec![s.id()],
            None => {
                return Outcome::error(format!(
                    "unknown suite `{which}`; known: {}",
                    registry.ids().join(", ")
                ))
            }
        }
    };
    let defaults = LabParams::default();
    let params = LabParams {
        p: cli.p,
        m: m.unwrap_or(defaults.m),
        seed: seed.unwrap_or(defaults.seed),
        trials: trials.unwrap_or(defaults.trials),
        thorough,
        span: span_config(cli),
    };
    if let Err(e) = params.field() {
        return Outcome::error(e);
    }
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => return Outcome::error(e),
    };
    let timings = cli.timings;
    let results: Vec<Result<VerificationReport, AlgebraError>> = pool.install(|| {
        ids.par_iter()
            .map(|id| {
                let s = registry.get(id).expect("listed id");
                if timings {
                    run_timed(s, &params)
                } else {
                    s.run(&params)
                }
            })
            .collect()
    });

    let mut errors = String::new();
    let mut reports = Vec::new();
    for (id, r) in ids.iter().zip(results) {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => {
                let _ = writeln!(errors, "error: suite {id}: {e}");
            }
        }
    }
    if !errors.is_empty() {
        return Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: errors,
        };
    }
    let passed = reports.iter().all(|r| r.passed);
    let stdout = match cli.format {
        Format::Json => to_json(&json!({
            "suites": ids,
            "passed": passed,
            "reports": reports,
        })),
        Format::Text => render_reports(&reports),
    };
    Outcome::with_code(if passed { EXIT_OK } else { EXIT_FAILED }, stdout)
}

fn render_reports(reports: &[VerificationReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let time = r
            .duration_ms
            .map(|ms| format!(" in {ms} ms"))
            .unwrap_or_default();
        let _ = writeln!(
            s,
            "[{}] {}: {}{time}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.title
        );
        for c in &r.checks {
            let kind = serde_json::to_value(c.kind).expect("kinds serialize");
            let _ = writeln!(
                s,
                "  {} {:<7} {}: expected {}; observed {}",
                if c.passed { "ok  " } else { "FAIL" },
                kind.as_str().unwrap_or(""),
                c.name,
                c.expected,
                c.observed
            );
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed == 0 {
        let _ = writeln!(s, "{} of {} suites passed", reports.len(), reports.len());
    } else {
        let _ = writeln!(s, "{failed} of {} suites failed", reports.len());
    }
    s
}

/// Names accepted by `--strategy`.
pub fn strategies() -> &'static [&'static str] {
    strategy_names()
}

/// Suite ids in registry order.
pub fn suite_ids() -> Vec<&'static str> {
    Registry::default().ids()
}
