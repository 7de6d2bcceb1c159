//! The `pdiv` command line: argument parsing, input loading, reports.
//!
//! Exit codes: 0 success, 1 mathematical refusal, 2 input error, 3 resource
//! guard.

pub mod input;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factor::{absolute_irreducibility_with, factor, FactorConfig};
use crate::finitefield::{construct_field, FieldDescriptor};
use crate::foliation::{chart_restrict, singular_points_with_budget, Chart, ProjOneForm, SingularPoint, SINGULAR_SCAN_BUDGET};
use crate::invariance::{beta_form, is_invariant, is_invariant_unchecked};
use crate::jouanolou::{make_jouanolou, non_p_closed_criterion, scan_with_budget, ScanRow, ScanVerdict};
use crate::multipoly::MultiPoly;
use crate::newton::gao_test;
use crate::pdivisor::{
    expected_degree, p_divisor_affine_with_budget, p_divisor_section_with_budget, p_divisor_with_budget, pullback_check,
    PlaneDivisor, DEFAULT_TERM_BUDGET,
};

pub use input::{IntegerForm, IntegerPoly, ParsedForm};

/// Environment variable overriding the default term budget.
pub const BUDGET_ENV: &str = "PDIV_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "pdiv", version, about = "p-divisors of plane foliations over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized factorization steps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest number of terms an intermediate polynomial may reach.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Form file: header `p=…, k=…, d=…` and lines A, B, C.
    #[arg(long, conflicts_with = "jouanolou")]
    pub form: Option<PathBuf>,
    /// Use the Jouanolou foliation of this degree.
    #[arg(long)]
    pub jouanolou: Option<u32>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub k: Option<u32>,
    /// Expected degree of the foliation.
    #[arg(long)]
    pub d: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// p-divisor of a foliation, factored.
    Pdivisor {
        #[command(flatten)]
        source: Source,
        /// Also decide absolute irreducibility of each component.
        #[arg(long)]
        absolute: bool,
        /// Also print the section in an affine chart.
        #[arg(long)]
        chart: Option<String>,
    },
    /// Whether a foliation is p-closed.
    Pclosed {
        #[command(flatten)]
        source: Source,
    },
    /// Factor a polynomial over F_{p^k}.
    Factor {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        absolute: bool,
    },
    /// Gao's Newton polytope criterion for a bivariate polynomial.
    Gao {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Invariance of a reduced curve, with the cofactor.
    Invariant {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        curve: PathBuf,
    },
    /// Whether (foliation, curve) is a special pair.
    SpecialPair {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        curve: PathBuf,
    },
    /// Singular points over F_{p^K} (`--k`), or via roots of unity for `--jouanolou` without `--k`.
    Singularities {
        #[arg(long, conflicts_with = "jouanolou")]
        form: Option<PathBuf>,
        #[arg(long)]
        jouanolou: Option<u32>,
        #[arg(long)]
        p: Option<u64>,
        /// Extension degree of the search field.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Compare Δ_G with Φ*Δ_F + p·D for the power map Φ = [x^n : y^n : z^n].
    Pullback {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        n: u32,
    },
    /// Classify the p-divisors of J_d for d in a range.
    ScanJouanolou {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        dmin: u32,
        #[arg(long, default_value_t = 27)]
        dmax: u32,
        /// Human table (the default without `--json`).
        #[arg(long)]
        table: bool,
    },
    /// Reduce an integer-coefficient form modulo p.
    Reduce {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Describe F_{p^k}.
    FieldInfo {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    json: bool,
    seed: u64,
    budget: usize,
    cfg: FactorConfig,
}

/// A successful payload: JSON result plus human-readable text.
struct Payload {
    field: Option<FieldDescriptor>,
    inputs: Value,
    result: Value,
    text: String,
    code: i32,
}

fn budget_from(flag: Option<usize>) -> Result<usize> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::InvalidArgument(format!("{BUDGET_ENV}={v} is not a count"))),
        Err(_) => Ok(DEFAULT_TERM_BUDGET),
    }
}

fn field_json(f: &FieldDescriptor) -> Value {
    let modulus = if f.is_prime_field() { None } else { Some(f.modulus_string()) };
    json!({ "p": f.p(), "k": f.k(), "order": f.order(), "modulus": modulus })
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let budget = match budget_from(cli.budget) {
        Ok(b) => b,
        Err(e) => return failure(cli.json, &e),
    };
    let ctx = Ctx { json: cli.json, seed: cli.seed, budget, cfg: FactorConfig::with_seed(cli.seed) };
    let name = command_name(&cli.command);
    match dispatch(&cli.command, &ctx) {
        Ok(p) => {
            let stdout = if ctx.json {
                let report = json!({
                    "command": name,
                    "inputs": p.inputs,
                    "field": p.field.as_ref().map(field_json),
                    "seed": ctx.seed,
                    "budget": ctx.budget,
                    "version": env!("CARGO_PKG_VERSION"),
                    "millis": start.elapsed().as_millis() as u64,
                    "result": p.result,
                });
                serde_json::to_string_pretty(&report).expect("serializable") + "\n"
            } else {
                p.text
            };
            Outcome { code: p.code, stdout, stderr: String::new() }
        }
        Err(e) => failure(ctx.json, &e),
    }
}

fn failure(json_out: bool, e: &Error) -> Outcome {
    let code = e.exit_code();
    let stdout = if json_out {
        serde_json::to_string_pretty(&json!({ "error": e.to_string(), "exit_code": code })).expect("serializable") + "\n"
    } else {
        String::new()
    };
    Outcome { code, stdout, stderr: format!("error: {e}\n") }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Pdivisor { .. } => "pdivisor",
        Command::Pclosed { .. } => "pclosed",
        Command::Factor { .. } => "factor",
        Command::Gao { .. } => "gao",
        Command::Invariant { .. } => "invariant",
        Command::SpecialPair { .. } => "special-pair",
        Command::Singularities { .. } => "singularities",
        Command::Pullback { .. } => "pullback",
        Command::ScanJouanolou { .. } => "scan-jouanolou",
        Command::Reduce { .. } => "reduce",
        Command::FieldInfo { .. } => "field-info",
    }
}

fn dispatch(c: &Command, ctx: &Ctx) -> Result<Payload> {
    match c {
        Command::Pdivisor { source, absolute, chart } => cmd_pdivisor(source, *absolute, chart.as_deref(), ctx),
        Command::Pclosed { source } => cmd_pclosed(source, ctx),
        Command::Factor { poly, p, k, absolute } => cmd_factor(poly, *p, *k, *absolute, ctx),
        Command::Gao { poly, p, k } => cmd_gao(poly, *p, *k),
        Command::Invariant { source, curve } => cmd_invariant(source, curve, false),
        Command::SpecialPair { source, curve } => cmd_invariant(source, curve, true),
        Command::Singularities { form, jouanolou, p, k } => cmd_singularities(form.as_ref(), *jouanolou, *p, *k),
        Command::Pullback { source, n } => cmd_pullback(source, *n, ctx),
        Command::ScanJouanolou { p, dmin, dmax, .. } => cmd_scan(*p, *dmin, *dmax, ctx),
        Command::Reduce { form, p, k } => cmd_reduce(form, *p, *k),
        Command::FieldInfo { p, k } => cmd_field_info(*p, *k),
    }
}

/// The form of a `--form`/`--jouanolou` source, with an echo of the inputs.
fn load_source(s: &Source) -> Result<(ProjOneForm, Value)> {
    let (w, echo) = match (&s.form, s.jouanolou) {
        (Some(path), None) => {
            let parsed = input::parse_form(&input::read_file(path)?)?;
            let integer = matches!(parsed, ParsedForm::Integer(_));
            let w = input::resolve_form(&parsed, s.p, s.k)?;
            (w, json!({ "form": path.display().to_string(), "integer_coefficients": integer }))
        }
        (None, Some(d)) => {
            let p = s.p.ok_or_else(|| Error::InvalidArgument("--jouanolou needs --p".into()))?;
            let j = make_jouanolou(d, p, false)?;
            let w = match s.k {
                Some(k) if k > 1 => j.form.embed(&j.form.field().extension(k)?),
                _ => j.form,
            };
            (w, json!({ "jouanolou": d }))
        }
        _ => return Err(Error::InvalidArgument("give exactly one of --form FILE or --jouanolou D".into())),
    };
    if let Some(d) = s.d {
        if d != w.degree() {
            return Err(Error::InvalidArgument(format!("--d {d} but the foliation has degree {}", w.degree())));
        }
    }
    let mut echo = echo;
    echo["d"] = json!(w.degree());
    echo["omega"] = json!(w.to_string());
    Ok((w, echo))
}

fn load_curve(path: &PathBuf, field: &FieldDescriptor) -> Result<MultiPoly> {
    input::parse_poly_file(&input::read_file(path)?, Some(field.p()), Some(field.k()), Some(3))
        .map(|f| if f.nvars() == 3 { f } else { f.insert_var(2) })
}

fn divisor_text(div: &PlaneDivisor) -> String {
    let mut s = format!("degree: {}\nsection: {}\ncomponents:\n", div.total_degree, div.section);
    for (g, e) in &div.entries {
        s += &format!("  ({g})^{e}    [degree {}]\n", g.degree().unwrap_or(0));
    }
    s
}

fn cmd_pdivisor(source: &Source, absolute: bool, chart: Option<&str>, ctx: &Ctx) -> Result<Payload> {
    let (w, inputs) = load_source(source)?;
    let p = w.field().p();
    let div = p_divisor_with_budget(&w, &ctx.cfg, ctx.budget)?;
    let mut result = div.to_json();
    result["expected_degree"] = json!(expected_degree(p, w.degree()));
    result["irreducible"] = json!(div.entries.len() == 1 && div.entries[0].1 == 1);
    let mut text = divisor_text(&div);
    let mut details = Vec::new();
    for (g, e) in &div.entries {
        let invariant = is_invariant_unchecked(&w, g)?.is_some();
        let mut entry = json!({ "component": g.to_string(), "invariant": invariant, "multiplicity_mod_p": (*e as u64) % p });
        if absolute {
            let abs = absolute_irreducibility_with(g, &ctx.cfg)?;
            entry["absolutely_irreducible"] = json!(abs);
            text += &format!("  {g}: invariant {invariant}, absolutely irreducible {abs}\n");
        } else {
            text += &format!("  {g}: invariant {invariant}\n");
        }
        details.push(entry);
    }
    result["component_checks"] = Value::Array(details);
    if let Some(c) = chart {
        let chart = Chart::parse(c)?;
        let pp = u32::try_from(p).map_err(|_| Error::InvalidArgument("characteristic too large".into()))?;
        let v = chart_restrict(&w, chart).saturate();
        let s = p_divisor_affine_with_budget(&v, pp, ctx.budget)?;
        result["chart"] = json!({ "chart": chart, "vector_field": v.to_string(), "section": s.to_string() });
        text += &format!("chart {c}: v = {v}\n  D_p(v) = {s}\n");
    }
    Ok(Payload { field: Some(w.field().clone()), inputs, result, text, code: 0 })
}

fn cmd_pclosed(source: &Source, ctx: &Ctx) -> Result<Payload> {
    let (w, inputs) = load_source(source)?;
    let closed = p_divisor_section_with_budget(&w, ctx.budget)?.is_zero();
    let verdict = if closed { "pClosed" } else { "notPClosed" };
    let mut result = json!({ "verdict": verdict, "p_closed": closed });
    let mut text = format!("verdict: {verdict}\n");
    if let (Some(d), p) = (source.jouanolou, w.field().p()) {
        if p != 2 {
            let crit = non_p_closed_criterion(d, p)?;
            text += &format!("criterion: {:?} (hypotheses hold: {})\n", crit.verdict, crit.hypotheses_hold);
            result["criterion"] = serde_json::to_value(&crit).expect("serializable");
        }
    }
    Ok(Payload { field: Some(w.field().clone()), inputs, result, text, code: 0 })
}

fn cmd_factor(poly: &PathBuf, p: Option<u64>, k: Option<u32>, absolute: bool, ctx: &Ctx) -> Result<Payload> {
    let f = input::parse_poly_file(&input::read_file(poly)?, p, k, None)?;
    let fact = factor(&f, &ctx.cfg)?;
    let mut result = fact.to_json();
    result["irreducible"] = json!(fact.is_irreducible());
    let mut text = format!("unit: {}\n", fact.unit);
    for (g, e) in &fact.factors {
        text += &format!("({g})^{e}\n");
    }
    if absolute {
        let abs = absolute_irreducibility_with(&f, &ctx.cfg)?;
        result["absolutely_irreducible"] = json!(abs);
        text += &format!("absolutely irreducible: {abs}\n");
    }
    let inputs = json!({ "poly": poly.display().to_string(), "polynomial": f.to_string() });
    Ok(Payload { field: Some(f.field().clone()), inputs, result, text, code: 0 })
}

fn cmd_gao(poly: &PathBuf, p: Option<u64>, k: Option<u32>) -> Result<Payload> {
    let f = input::parse_poly_file(&input::read_file(poly)?, p, k, Some(2))?;
    let verdict = gao_test(&f)?;
    let result = serde_json::to_value(&verdict).expect("serializable");
    let text = serde_json::to_string_pretty(&result).expect("serializable") + "\n";
    let inputs = json!({ "poly": poly.display().to_string(), "polynomial": f.to_string() });
    Ok(Payload { field: Some(f.field().clone()), inputs, result, text, code: 0 })
}

fn cmd_invariant(source: &Source, curve: &PathBuf, special: bool) -> Result<Payload> {
    let (w, mut inputs) = load_source(source)?;
    let f = load_curve(curve, w.field())?;
    inputs["curve"] = json!(f.to_string());
    let witness = is_invariant(&w, &f)?;
    let mut result = json!({ "invariant": witness.is_some() });
    let mut text = format!("invariant: {}\n", witness.is_some());
    if let Some(wit) = &witness {
        result["theta"] = json!(wit.theta.iter().map(|t| t.to_string()).collect::<Vec<_>>());
        text += &format!("theta: ({})dy^dz + ({})dx^dz + ({})dx^dy\n", wit.theta[0], wit.theta[1], wit.theta[2]);
        if (w.degree() as u64 + 2) % w.field().p() != 0 {
            let b = beta_form(&w, &f, wit)?;
            result["b"] = json!(b.to_string());
            result["special"] = json!(b.is_zero());
            text += &format!("b: {b}\nspecial: {}\n", b.is_zero());
        } else if special {
            return Err(Error::Precondition(format!("p = {} divides d + 2", w.field().p())));
        }
    } else if special {
        return Err(Error::Precondition(format!("{f} is not invariant")));
    }
    Ok(Payload { field: Some(w.field().clone()), inputs, result, text, code: 0 })
}

fn point_json(s: &SingularPoint) -> Value {
    json!({
        "coords": s.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "eigen_ratio": s.eigen_ratio.as_ref().map(|a| a.to_string()),
        "eigen_ratio_field": s.eigen_ratio.as_ref().map(|a| a.field().to_string()),
        "p_reduced": s.p_reduced,
    })
}

fn cmd_singularities(form: Option<&PathBuf>, jouanolou: Option<u32>, p: Option<u64>, k: Option<u32>) -> Result<Payload> {
    let (w, pts, inputs) = match (form, jouanolou) {
        (Some(path), None) => {
            let parsed = input::parse_form(&input::read_file(path)?)?;
            let w = input::resolve_form(&parsed, p, None)?;
            let k = k.unwrap_or(w.field().k());
            let pts = singular_points_with_budget(&w, k, SINGULAR_SCAN_BUDGET)?;
            (w, pts, json!({ "form": path.display().to_string(), "k": k }))
        }
        (None, Some(d)) => {
            let p = p.ok_or_else(|| Error::InvalidArgument("--jouanolou needs --p".into()))?;
            match k {
                Some(k) => {
                    let j = make_jouanolou(d, p, false)?;
                    let pts = singular_points_with_budget(&j.form, k, SINGULAR_SCAN_BUDGET)?;
                    (j.form, pts, json!({ "jouanolou": d, "k": k }))
                }
                None => {
                    let j = make_jouanolou(d, p, true)?;
                    let pts = j.singularities()?;
                    (j.form.clone(), pts, json!({ "jouanolou": d, "k": j.k, "method": "roots of unity" }))
                }
            }
        }
        _ => return Err(Error::InvalidArgument("give exactly one of --form FILE or --jouanolou D".into())),
    };
    let mut text = format!("{} singular point(s)\n", pts.len());
    for s in &pts {
        let [a, b, c] = &s.coords;
        text += &format!("[{a} : {b} : {c}]");
        if let Some(al) = &s.eigen_ratio {
            text += &format!("  alpha = {al}  p-reduced = {}", s.p_reduced.unwrap_or(false));
        }
        text += "\n";
    }
    let result = json!({ "count": pts.len(), "points": pts.iter().map(point_json).collect::<Vec<_>>() });
    Ok(Payload { field: Some(w.field().clone()), inputs, result, text, code: 0 })
}

fn entries_json(v: &[(MultiPoly, u32)]) -> Value {
    json!(v.iter().map(|(g, e)| json!({ "component": g.to_string(), "multiplicity": e })).collect::<Vec<_>>())
}

fn cmd_pullback(source: &Source, n: u32, ctx: &Ctx) -> Result<Payload> {
    let (w, mut inputs) = load_source(source)?;
    inputs["n"] = json!(n);
    let r = pullback_check(&w, n, &ctx.cfg)?;
    let result = json!({
        "pulled_back_form": r.pulled_back_form.to_string(),
        "pulled_back_degree": r.pulled_back_form.degree(),
        "delta_f": r.delta_f.to_json(),
        "delta_g": r.delta_g.to_json(),
        "predicted": entries_json(&r.predicted),
        "equal": r.equal,
    });
    let mut text = format!("G = {}\nDelta_F:\n{}Delta_G:\n{}", r.pulled_back_form, divisor_text(&r.delta_f), divisor_text(&r.delta_g));
    text += &format!("Delta_G = Phi*Delta_F + p(n-1)({{x}}+{{y}}+{{z}}): {}\n", r.equal);
    Ok(Payload { field: Some(w.field().clone()), inputs, result, text, code: 0 })
}

fn paren(f: &str) -> String {
    if f.contains(' ') {
        format!("({f})")
    } else {
        f.to_string()
    }
}

/// One line of the scan table: d | d²+d+1 | deg(C) | l | R.
pub fn scan_table_row(r: &ScanRow) -> String {
    let (deg_c, l, rpart) = match &r.verdict {
        ScanVerdict::PClosed => ("-".to_string(), "-".to_string(), "p-closed".to_string()),
        ScanVerdict::Irreducible => (r.delta_degree.map_or("-".into(), |d| d.to_string()), "-".into(), "irreducible".into()),
        ScanVerdict::Special { deg_c, l, r_part, .. } => {
            let coeff = |m: u32| if m == 1 { String::new() } else { format!("{m}·") };
            let r = match r_part.first() {
                Some(first) if r_part.iter().all(|f| f.multiplicity == first.multiplicity) => {
                    let prod: Vec<String> = r_part.iter().map(|f| paren(&f.factor)).collect();
                    format!("{}{{{}=0}}", coeff(first.multiplicity), prod.join("*"))
                }
                _ => {
                    let rs: Vec<String> =
                        r_part.iter().map(|f| format!("{}{{{}=0}}", coeff(f.multiplicity), f.factor)).collect();
                    rs.join(" + ")
                }
            };
            (deg_c.to_string(), l.to_string(), r)
        }
        ScanVerdict::Other { decomposition } => {
            let rs: Vec<String> = decomposition.iter().map(|f| format!("deg {}^{}", f.degree, f.multiplicity)).collect();
            ("-".into(), "-".into(), format!("other: {}", rs.join(", ")))
        }
        ScanVerdict::Failed { error } => ("-".into(), "-".into(), format!("failed: {error}")),
    };
    format!("{:>4} | {:>6} | {:>6} | {:>3} | {}", r.d, r.m, deg_c, l, rpart)
}

fn cmd_scan(p: u64, dmin: u32, dmax: u32, ctx: &Ctx) -> Result<Payload> {
    if dmin < 2 || dmin > dmax {
        return Err(Error::InvalidArgument(format!("bad range [{dmin}, {dmax}]; need 2 ≤ dmin ≤ dmax")));
    }
    let field = construct_field(p, 1)?;
    let rows = scan_with_budget(p, dmin, dmax, &ctx.cfg, ctx.budget);
    let mut text = format!("{:>4} | {:>6} | {:>6} | {:>3} | R\n", "d", "d²+d+1", "deg(C)", "l");
    for r in &rows {
        text += &scan_table_row(r);
        text += "\n";
    }
    let code = if rows.iter().any(|r| matches!(&r.verdict, ScanVerdict::Failed { error } if error.contains("resource"))) {
        3
    } else {
        0
    };
    let result = json!({ "rows": serde_json::to_value(&rows).expect("serializable") });
    Ok(Payload { field: Some(field), inputs: json!({ "p": p, "dmin": dmin, "dmax": dmax }), result, text, code })
}

fn cmd_reduce(form: &PathBuf, p: u64, k: Option<u32>) -> Result<Payload> {
    let parsed = input::parse_form(&input::read_file(form)?)?;
    let (w, integer) = match &parsed {
        ParsedForm::Integer(f) => (f.reduce_mod_p(p, k.unwrap_or(1))?, Some(f)),
        ParsedForm::Modular(_) => (input::resolve_form(&parsed, Some(p), k)?, None),
    };
    let [a, b, c] = w.components();
    let result = json!({
        "d": w.degree(),
        "integer_form": integer.map(|f| f.to_string()),
        "content": integer.map(|f| f.content.to_string()),
        "A": a.to_string(), "B": b.to_string(), "C": c.to_string(),
    });
    let text = format!("p={}, k={}, d={}\n{a}\n{b}\n{c}\n", p, w.field().k(), w.degree());
    Ok(Payload { field: Some(w.field().clone()), inputs: json!({ "form": form.display().to_string() }), result, text, code: 0 })
}

fn cmd_field_info(p: u64, k: u32) -> Result<Payload> {
    let f = construct_field(p, k)?;
    let g = f.primitive_element();
    let result = json!({ "primitive_element": f.format(g), "characteristic": p, "degree": k });
    let text = format!("{f}\norder: {}\nmodulus: {}\nprimitive element: {}\n", f.order(), f.modulus_string(), f.format(g));
    Ok(Payload { field: Some(f), inputs: json!({ "p": p, "k": k }), result, text, code: 0 })
}
