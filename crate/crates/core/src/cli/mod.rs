//! Command-line front end: `sum`, `verify`, `sweep` and `chars`.
//!
//! Exit codes: 0 success, 1 identity failure, 2 configuration error,
//! 3 arithmetic precondition failure (`gcd(a, c) != 1`).

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::chargroup::{
    characters, count_primitive_twists, count_primitive_with_parity, factorize, phi_star,
    primitive_characters, DirichletCharacter,
};
use crate::dedekind::{
    crossed_hom_residual, inverse_residuals, negate_residual, random_gamma0, scale_residual,
    CharacterPair, DedekindContext,
};
use crate::moments::{
    bounds_sweep, fourier_brute, fourier_closed, relative_residual, second_moment_closed,
    second_moment_closed_extended,
    walum_lhs, walum_rhs,
};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IDENTITY: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_ARITHMETIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "dedekind", version, about = "Generalized Dedekind sums and their second moment")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// A character chosen by its index in the enumeration of `characters(q)`, or all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    Index(usize),
    All,
}

impl FromStr for Selector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(Selector::All);
        }
        s.parse().map(Selector::Index).map_err(|_| format!("expected an index or \"all\", got {s:?}"))
    }
}

/// An integer or `all`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgA {
    Value(i64),
    All,
}

impl FromStr for ArgA {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(ArgA::All);
        }
        s.parse().map(ArgA::Value).map_err(|_| format!("expected an integer or \"all\", got {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Formula {
    Direct,
    B1chi,
    Single,
    Cotangent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Symmetry,
    Cotangent,
    Fourier,
    Moment,
    Walum,
    Counts,
    Crossed,
}

#[derive(Debug, Clone, clap::Args)]
pub struct PairArgs {
    #[arg(long, default_value_t = 1)]
    pub q1: u64,
    #[arg(long, default_value_t = 1)]
    pub q2: u64,
    /// Index into the characters mod q1 (default: the first primitive one).
    #[arg(long)]
    pub chi1: Option<Selector>,
    /// Index into the characters mod q2 (default: the first primitive one).
    #[arg(long)]
    pub chi2: Option<Selector>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate S(a, c).
    Sum {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value = "all")]
        a: ArgA,
        #[arg(long)]
        c: u64,
        #[arg(long, value_enum, default_value_t = Formula::B1chi)]
        formula: Formula,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check an identity and report per-case residuals.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        pair: PairArgs,
        /// A single c (default: q1 q2).
        #[arg(long)]
        c: Option<u64>,
        /// Check every multiple of q1 q2 up to this bound instead of a single c.
        #[arg(long)]
        cmax: Option<u64>,
        #[arg(long, default_value_t = 101)]
        pmax: u64,
        #[arg(long, default_value_t = 500)]
        nmax: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the suite's tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Moment suite only: evaluate the closed form for pairs outside the
        /// nontrivial-primitive setting. Residuals are reported, never judged.
        #[arg(long)]
        experimental: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Second moments over multiples of q1 q2, as CSV.
    Sweep {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        cmax: Option<u64>,
        /// Explicit comma-separated list of c values.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        c_list: Option<Vec<u64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the characters modulo q.
    Chars {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotCoprime { .. } => EXIT_ARITHMETIC,
            Error::Identity(_) => EXIT_IDENTITY,
            _ => EXIT_CONFIG,
        };
        Failure { code, message: e.to_string() }
    }
}

fn config(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_CONFIG, message: message.into() }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses the process arguments, runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    configure_threads();
    match run(&cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Sizes the rayon pool from `DEDEKIND_THREADS` when set.
fn configure_threads() {
    if let Some(n) = std::env::var("DEDEKIND_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

pub fn run(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Sum { pair, a, c, formula, format } => cmd_sum(pair, *a, *c, *formula, *format, out),
        Command::Verify { suite, pair, c, cmax, pmax, nmax, trials, seed, tol, experimental, format } => {
            let cfg = VerifyConfig {
                suite: *suite,
                pair: pair.clone(),
                c: *c,
                cmax: *cmax,
                pmax: *pmax,
                nmax: *nmax,
                trials: *trials,
                seed: *seed,
                tol: *tol,
                experimental: *experimental,
            };
            if tol.is_some_and(|t| t.is_nan() || t <= 0.0) {
                return Err(config("tolerance must be positive"));
            }
            cmd_verify(&cfg, *format, out)
        }
        Command::Sweep { pair, cmax, c_list, out: path } => {
            cmd_sweep(pair, *cmax, c_list.as_deref(), path.as_ref(), out, err)
        }
        Command::Chars { q, format } => cmd_chars(*q, *format, out),
    }
}

fn io(e: std::io::Error) -> Failure {
    config(format!("output error: {e}"))
}

/// Resolves a selector against `characters(q)`; `None` picks the first
/// primitive character, or the principal one when none exists.
fn resolve(q: u64, sel: Option<Selector>) -> CliResult<Vec<DirichletCharacter>> {
    if q == 0 {
        return Err(config("modulus must be positive"));
    }
    let all = characters(q);
    match sel {
        None => Ok(vec![all.iter().find(|c| c.is_primitive()).unwrap_or(&all[0]).clone()]),
        Some(Selector::All) => Ok(all),
        Some(Selector::Index(i)) => all.get(i).cloned().map(|c| vec![c]).ok_or_else(|| {
            config(format!("character index {i} out of range: there are {} characters mod {q}", all.len()))
        }),
    }
}

fn resolve_one(q: u64, sel: Option<Selector>) -> CliResult<DirichletCharacter> {
    if sel == Some(Selector::All) {
        return Err(config("this command needs a single character, not \"all\""));
    }
    Ok(resolve(q, sel)?.remove(0))
}

fn resolve_pairs(args: &PairArgs) -> CliResult<Vec<CharacterPair>> {
    let first = resolve(args.q1, args.chi1)?;
    let second = resolve(args.q2, args.chi2)?;
    let mut out = Vec::with_capacity(first.len() * second.len());
    for chi1 in &first {
        for chi2 in &second {
            out.push(CharacterPair::new(chi1.clone(), chi2.clone()));
        }
    }
    Ok(out)
}

/// Rounds to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn num(x: f64) -> Value {
    json!(round15(x))
}

/// `v` with every float rounded to 15 significant digits.
fn rounded(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => num(n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(items) => Value::Array(items.into_iter().map(rounded).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, x)| (k, rounded(x))).collect()),
        other => other,
    }
}

/// `x` with six significant digits, `%g` style without the exponent form.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{}", if x == 0.0 { 0.0 } else { x });
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (5 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn fmt_complex(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        fmt_sig(re)
    } else {
        let sign = if im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{}i", fmt_sig(re), fmt_sig(im.abs()))
    }
}

fn evaluate(ctx: &DedekindContext, a: i64, formula: Formula) -> CliResult<Complex64> {
    Ok(match formula {
        Formula::Direct => ctx.s_direct(a),
        Formula::B1chi => ctx.s_b1chi(a)?,
        Formula::Single => ctx.s_single_b1(a)?,
        Formula::Cotangent => ctx.s_cotangent(a),
    })
}

fn cmd_sum(
    args: &PairArgs,
    a: ArgA,
    c: u64,
    formula: Formula,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let chi1 = resolve_one(args.q1, args.chi1)?;
    let chi2 = resolve_one(args.q2, args.chi2)?;
    let ctx = DedekindContext::new(chi1, chi2, c)?;
    let ci = c as i64;
    let a_values: Vec<i64> = match a {
        ArgA::Value(a) => {
            let g = a.gcd(&ci);
            if g != 1 {
                return Err(Error::NotCoprime { a, c: ci, gcd: g }.into());
            }
            vec![a]
        }
        ArgA::All => (0..ci).filter(|x| x.gcd(&ci) == 1).collect(),
    };
    let values = a_values
        .iter()
        .map(|&x| evaluate(&ctx, x, formula).map(|v| (x, v)))
        .collect::<CliResult<Vec<_>>>()?;
    match format {
        Format::Text => {
            for (x, v) in &values {
                if a == ArgA::All {
                    writeln!(out, "{x} {}", fmt_complex(*v)).map_err(io)?;
                } else {
                    writeln!(out, "{}", fmt_complex(*v)).map_err(io)?;
                }
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["a", "re", "im"]).map_err(|e| config(e.to_string()))?;
            for (x, v) in &values {
                w.write_record([x.to_string(), round15(v.re).to_string(), round15(v.im).to_string()])
                    .map_err(|e| config(e.to_string()))?;
            }
            w.flush().map_err(io)?;
        }
        Format::Json => {
            let body = json!({
                "context": context_json(&ctx),
                "formula": format!("{formula:?}").to_lowercase(),
                "values": values.iter().map(|(x, v)| json!({"a": x, "re": num(v.re), "im": num(v.im)})).collect::<Vec<_>>(),
            });
            writeln!(out, "{body}").map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn context_json(ctx: &DedekindContext) -> Value {
    json!({
        "q1": ctx.q1(),
        "q2": ctx.q2(),
        "chi1": ctx.chi1().label(),
        "chi2": ctx.chi2().label(),
        "c": ctx.c(),
    })
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub pair: PairArgs,
    pub c: Option<u64>,
    pub cmax: Option<u64>,
    pub pmax: u64,
    pub nmax: u64,
    pub trials: usize,
    pub seed: u64,
    pub tol: Option<f64>,
    pub experimental: bool,
}

/// One checked case.
#[derive(Debug, Clone)]
struct Case {
    name: String,
    residual: f64,
    tol: f64,
    report: Option<Value>,
}

impl Case {
    fn pass(&self) -> bool {
        self.residual.is_finite() && self.residual < self.tol
    }
}

/// The values of `c` a verify run covers for `pair`.
fn c_values(cfg: &VerifyConfig, level: u64) -> CliResult<Vec<u64>> {
    let list = match (cfg.c, cfg.cmax) {
        (Some(c), _) => vec![c],
        (None, Some(cmax)) => (1..).map(|k| k * level).take_while(|&c| c <= cmax).collect(),
        (None, None) => vec![level],
    };
    if let Some(&bad) = list.iter().find(|&&c| c == 0 || c % level != 0) {
        return Err(config(format!("c = {bad} is not a positive multiple of q1 q2 = {level}")));
    }
    Ok(list)
}

fn units(c: u64) -> impl Iterator<Item = i64> {
    let ci = c as i64;
    (1..=ci).filter(move |a| a.gcd(&ci) == 1)
}

fn label(pair: &CharacterPair, c: u64) -> String {
    format!("({}, {}) c={c}", pair.chi1, pair.chi2)
}

fn verify_cases(cfg: &VerifyConfig) -> CliResult<Vec<Case>> {
    let tol = |default: f64| cfg.tol.unwrap_or(default);
    let mut cases = Vec::new();
    match cfg.suite {
        Suite::Walum => {
            for p in (3..=cfg.pmax).filter(|&p| factorize(p as i64).map(|f| f.factors() == [(p, 1)]).unwrap_or(false)) {
                let r = relative_residual(walum_lhs(p)?, walum_rhs(p)?);
                cases.push(Case { name: format!("p={p}"), residual: r, tol: tol(1e-8), report: None });
            }
        }
        Suite::Counts => {
            for n in 1..=cfg.nmax {
                let diff = (phi_star(n) as f64 - primitive_characters(n).len() as f64).abs();
                cases.push(Case { name: format!("phi*({n})"), residual: diff, tol: 0.5, report: None });
            }
            for (p, e, pe) in (2..=cfg.nmax.min(243)).filter_map(|m| {
                let f = factorize(m as i64).ok()?;
                let pp: Vec<_> = f.prime_powers().collect();
                (pp.len() == 1).then(|| pp[0])
            }) {
                if p > 2 {
                    let bound = phi_star(pe) as f64 / 2.0 - 1.0;
                    for sign in [1i8, -1] {
                        let shortfall = (bound - count_primitive_with_parity(pe, sign) as f64).max(0.0);
                        cases.push(Case {
                            name: format!("parity class {sign:+} mod {pe}"),
                            residual: shortfall,
                            tol: 0.5,
                            report: None,
                        });
                    }
                }
                for k in 0..=e {
                    for xi in characters(p.pow(k)) {
                        let parts = [(1, e > k, pe), (2, p > 3, pe), (3, ![3, 4, 8].contains(&pe), pe / p)];
                        for (part, applies, min_conductor) in parts {
                            if !applies {
                                continue;
                            }
                            for sign in [1i8, -1] {
                                let n = count_primitive_twists(pe, &xi, sign, true, min_conductor)?;
                                cases.push(Case {
                                    name: format!("twist part {part} mod {pe} xi={xi} psi xi {sign:+}"),
                                    residual: if n == 0 { 1.0 } else { 0.0 },
                                    tol: 0.5,
                                    report: None,
                                });
                            }
                        }
                    }
                }
            }
            for k in 0..=3u32 {
                for xi in characters(2u64.pow(k)) {
                    let n = count_primitive_twists(8, &xi, -1, true, 4)?;
                    cases.push(Case {
                        name: format!("twist mod 8 xi={xi} psi xi odd"),
                        residual: if n == 0 { 1.0 } else { 0.0 },
                        tol: 0.5,
                        report: None,
                    });
                }
            }
        }
        _ => {
            for pair in resolve_pairs(&cfg.pair)? {
                for c in c_values(cfg, pair.level())? {
                    pair_cases(cfg, &pair, c, &mut cases)?;
                }
            }
        }
    }
    Ok(cases)
}

fn pair_cases(cfg: &VerifyConfig, pair: &CharacterPair, c: u64, cases: &mut Vec<Case>) -> CliResult<()> {
    let tol = |default: f64| cfg.tol.unwrap_or(default);
    let name = label(pair, c);
    let ctx = pair.context(c)?;
    match cfg.suite {
        Suite::Symmetry => {
            for a in units(c) {
                for alpha in [2, 3] {
                    let r = scale_residual(pair, a, c, alpha)?.norm();
                    cases.push(Case { name: format!("{name} a={a} scale {alpha}"), residual: r, tol: tol(1e-9), report: None });
                }
                if pair.parity() == -1 {
                    let r = ctx.s_direct(a).norm();
                    cases.push(Case { name: format!("{name} a={a} vanishing"), residual: r, tol: tol(1e-9), report: None });
                } else {
                    let r = negate_residual(&ctx, a).norm();
                    cases.push(Case { name: format!("{name} a={a} negation"), residual: r, tol: tol(1e-9), report: None });
                    let r = inverse_residuals(&ctx, a)?.statement.norm();
                    cases.push(Case { name: format!("{name} a={a} inverse"), residual: r, tol: tol(1e-9), report: None });
                }
            }
        }
        Suite::Cotangent => {
            for a in units(c) {
                let direct = ctx.s_direct(a);
                let mut others = vec![("cotangent", ctx.s_cotangent(a))];
                if let Ok(v) = ctx.s_b1chi(a) {
                    others.push(("b1chi", v));
                }
                if let Ok(v) = ctx.s_single_b1(a) {
                    others.push(("single", v));
                }
                for (form, v) in others {
                    cases.push(Case {
                        name: format!("{name} a={a} {form}"),
                        residual: (v - direct).norm(),
                        tol: tol(1e-8),
                        report: None,
                    });
                }
            }
        }
        Suite::Fourier => {
            let phi = crate::chargroup::euler_phi(c) as f64;
            for xi in characters(c) {
                let r = (fourier_closed(&ctx, &xi)? - fourier_brute(&ctx, &xi)?).norm() / phi;
                cases.push(Case { name: format!("{name} xi={xi}"), residual: r, tol: tol(1e-7), report: None });
            }
        }
        Suite::Moment => {
            let (report, default) = if cfg.experimental {
                (second_moment_closed_extended(&ctx)?, f64::INFINITY)
            } else {
                (second_moment_closed(&ctx)?, if c <= 400 { 1e-7 } else { 1e-6 })
            };
            let value = serde_json::to_value(&report).map(rounded).ok();
            cases.push(Case { name, residual: report.residual, tol: tol(default), report: value });
        }
        Suite::Crossed => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for t in 0..cfg.trials {
                let g1 = random_gamma0(&mut rng, pair.level(), 3);
                let g2 = random_gamma0(&mut rng, pair.level(), 3);
                let r = crossed_hom_residual(pair, &g1, &g2)?.norm();
                cases.push(Case { name: format!("{name} trial {t}"), residual: r, tol: tol(1e-8), report: None });
            }
        }
        Suite::Walum | Suite::Counts => unreachable!("handled without a pair"),
    }
    Ok(())
}

fn cmd_verify(cfg: &VerifyConfig, format: Format, out: &mut dyn Write) -> CliResult<i32> {
    let cases = verify_cases(cfg)?;
    let failed = cases.iter().filter(|c| !c.pass()).count();
    let suite = format!("{:?}", cfg.suite).to_lowercase();
    match format {
        Format::Json => {
            let body = json!({
                "suite": suite,
                "pass": failed == 0,
                "cases": cases.iter().map(|c| {
                    let mut v = json!({
                        "case": c.name, "residual": num(c.residual), "tol": num(c.tol), "pass": c.pass(),
                    });
                    if let Some(r) = &c.report {
                        v["report"] = r.clone();
                    }
                    v
                }).collect::<Vec<_>>(),
            });
            writeln!(out, "{body}").map_err(io)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["case", "residual", "tol", "pass"]).map_err(|e| config(e.to_string()))?;
            for c in &cases {
                w.write_record([
                    c.name.clone(),
                    format!("{:e}", round15(c.residual)),
                    format!("{:e}", c.tol),
                    c.pass().to_string(),
                ])
                .map_err(|e| config(e.to_string()))?;
            }
            w.flush().map_err(io)?;
        }
        Format::Text => {
            let mut text = String::new();
            for c in &cases {
                let verdict = if c.pass() { "ok" } else { "FAIL" };
                let _ = writeln!(text, "{verdict} {} residual {:.3e}", c.name, c.residual);
            }
            let verdict = if failed == 0 { "PASS" } else { "FAIL" };
            let _ = writeln!(text, "{suite}: {verdict} ({} cases, {failed} failed)", cases.len());
            out.write_all(text.as_bytes()).map_err(io)?;
        }
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_IDENTITY })
}

fn cmd_sweep(
    args: &PairArgs,
    cmax: Option<u64>,
    c_list: Option<&[u64]>,
    path: Option<&PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let chi1 = resolve_one(args.q1, args.chi1)?;
    let chi2 = resolve_one(args.q2, args.chi2)?;
    let level = chi1.modulus() * chi2.modulus();
    let cs: Vec<u64> = match (c_list, cmax) {
        (Some(list), _) => list.to_vec(),
        (None, Some(cmax)) => (1..).map(|k| k * level).take_while(|&c| c <= cmax).collect(),
        (None, None) => return Err(config("sweep needs --cmax or --c-list")),
    };
    if let Some(&bad) = cs.iter().find(|&&c| c == 0 || c % level != 0) {
        return Err(config(format!("c = {bad} is not a positive multiple of q1 q2 = {level}")));
    }
    let sweep = bounds_sweep(&chi1, &chi2, &cs)?;
    let mut buf = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(["c", "q1", "q2", "moment", "ratio", "slope_running"])
            .map_err(|e| config(e.to_string()))?;
        for row in &sweep.rows {
            w.write_record([
                row.c.to_string(),
                row.q1.to_string(),
                row.q2.to_string(),
                round15(row.moment).to_string(),
                round15(row.ratio).to_string(),
                row.slope_running.map(|s| round15(s).to_string()).unwrap_or_default(),
            ])
            .map_err(|e| config(e.to_string()))?;
        }
        w.flush().map_err(io)?;
    }
    match path {
        Some(p) => std::fs::write(p, &buf).map_err(io)?,
        None => out.write_all(&buf).map_err(io)?,
    }
    match sweep.slope {
        Some(s) => writeln!(err, "slope {}", round15(s)).map_err(io)?,
        None => writeln!(err, "slope undefined ({} rows)", sweep.rows.len()).map_err(io)?,
    }
    Ok(EXIT_OK)
}

fn cmd_chars(q: u64, format: Format, out: &mut dyn Write) -> CliResult<i32> {
    let chars = resolve(q, Some(Selector::All))?;
    let rows: Vec<(usize, &DirichletCharacter)> = chars.iter().enumerate().collect();
    let exps = |c: &DirichletCharacter| {
        c.exponents().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    };
    match format {
        Format::Text => {
            writeln!(out, "index exponents conductor parity primitive").map_err(io)?;
            for (i, c) in rows {
                writeln!(
                    out,
                    "{i} [{}] {} {} {}",
                    exps(c),
                    c.conductor(),
                    if c.parity() == 1 { "even" } else { "odd" },
                    c.is_primitive()
                )
                .map_err(io)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["index", "exponents", "conductor", "parity", "primitive"])
                .map_err(|e| config(e.to_string()))?;
            for (i, c) in rows {
                w.write_record([
                    i.to_string(),
                    exps(c),
                    c.conductor().to_string(),
                    c.parity().to_string(),
                    c.is_primitive().to_string(),
                ])
                .map_err(|e| config(e.to_string()))?;
            }
            w.flush().map_err(io)?;
        }
        Format::Json => {
            let body: Vec<Value> = rows
                .into_iter()
                .map(|(i, c)| {
                    json!({
                        "index": i,
                        "exponents": c.exponents(),
                        "conductor": c.conductor(),
                        "parity": c.parity(),
                        "primitive": c.is_primitive(),
                    })
                })
                .collect();
            writeln!(out, "{}", Value::Array(body)).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}
