//! Command-line front end: curve sampling, frame queries, derived-curve
//! generation, and audit suites, exported as CSV or JSON.
//!
//! Exit codes: 0 success; 1 audit failures (`verify` only); 2 configuration
//! error; 3 at least one sample row flagged singular or domain-error (the
//! rows are still written); 4 unwritable output path.
//!
//! All numeric output uses the shortest decimal representation that round
//! trips back to the same binary float, so identical invocations produce
//! byte-identical files.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use nullcone::cone_frame::{build_frame_jets, curvature_jets, frenet_residuals, gram_residuals};
use nullcone::null_curve::{ConeCurve, Grid};
use nullcone::scalar_expr::{parse, v4_value};
use nullcone::smarandache::{
    smarandache_curve, AngleSet, FormulaMode, SmarandacheKind, SmarandacheSpec,
};
use nullcone::verify::{render_text, run_suite, AuditConfig, GridSpec, SuiteId, Tolerances};
use nullcone::Error;

const EXIT_AUDIT_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_FLAGGED: u8 = 3;
const EXIT_UNWRITABLE: u8 = 4;

/// A terminal failure: message for the diagnostic stream plus exit code.
struct Failure {
    code: u8,
    message: String,
}

fn config_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

#[derive(Parser)]
#[command(
    name = "nullcone",
    version,
    about = "Null curves on the (2,2) lightlike cone: sampling, frames, derived curves, audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a canonical or derived curve over a parameter grid.
    Eval(EvalArgs),
    /// Alias of `eval` that requires `--kind`.
    Smarandache(EvalArgs),
    /// Emit frame vectors, curvatures, and residuals per point (JSON).
    Frame(FrameArgs),
    /// Run audit suites and write the report.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CurveArgs {
    /// JSON config file; command-line flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Built-in generator pair: "hyperbolic" or "trigonometric".
    #[arg(long)]
    fixture: Option<String>,
    /// Frequency of the built-in generator pair.
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Mixing constant of the curve assembly.
    #[arg(long, allow_negative_numbers = true)]
    m: Option<f64>,
    /// Explicit generator expression f(t); requires --g, overrides --fixture.
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// Explicit generator expression g(t); requires --f, overrides --fixture.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// Grid start (default -1).
    #[arg(long, allow_negative_numbers = true)]
    t0: Option<f64>,
    /// Grid end (default 1).
    #[arg(long, allow_negative_numbers = true)]
    t1: Option<f64>,
    /// Grid sample count, at least 2 (default 101).
    #[arg(long)]
    samples: Option<usize>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Derived-curve family: gamma-w, xi-n, w-n, gamma-zeta-n, xi-n-w,
    /// gamma-xi-w, or gamma-xi-n-w. Omit to sample the base curve.
    #[arg(long)]
    kind: Option<String>,
    /// Angle expression for single-angle families.
    #[arg(long, allow_hyphen_values = true)]
    psi: Option<String>,
    /// Angle expression for the xi-n-w family (synonym of --psi).
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    /// First angle for gamma-zeta-n.
    #[arg(long, allow_hyphen_values = true)]
    phi1: Option<String>,
    /// Second angle for gamma-zeta-n.
    #[arg(long, allow_hyphen_values = true)]
    phi2: Option<String>,
    /// First angle for gamma-xi-w and gamma-xi-n-w.
    #[arg(long, allow_hyphen_values = true)]
    omega1: Option<String>,
    /// Second angle for gamma-xi-w and gamma-xi-n-w.
    #[arg(long, allow_hyphen_values = true)]
    omega2: Option<String>,
    /// Output format: "csv" (default) or "json".
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct FrameArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Single parameter value instead of a grid.
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    /// Output format; the frame command emits JSON only.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON config file; command-line flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suite to run (default "all").
    #[arg(long)]
    suite: Option<String>,
    /// Table mode to audit: "literal", "corrected", or "both" (default).
    #[arg(long)]
    formula_mode: Option<String>,
    /// Seed for randomized checks.
    #[arg(long)]
    seed: Option<u64>,
    /// Sample count for randomized checks.
    #[arg(long)]
    samples: Option<usize>,
    /// Treat closed-form mismatch verdicts as failures (exit 1).
    #[arg(long)]
    strict: bool,
    /// Output format: "json" (default) or "text".
    #[arg(long)]
    format: Option<String>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Config-file schema: every field optional, flags override field-by-field.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    fixture: Option<String>,
    a: Option<f64>,
    m: Option<f64>,
    f: Option<String>,
    g: Option<String>,
    t0: Option<f64>,
    t1: Option<f64>,
    samples: Option<usize>,
    t: Option<f64>,
    kind: Option<String>,
    psi: Option<String>,
    phi: Option<String>,
    phi1: Option<String>,
    phi2: Option<String>,
    omega1: Option<String>,
    omega2: Option<String>,
    format: Option<String>,
    out: Option<String>,
    suite: Option<String>,
    formula_mode: Option<String>,
    seed: Option<u64>,
    audit_samples: Option<usize>,
    strict: Option<bool>,
    tolerances: Option<Tolerances>,
    grid: Option<GridSpec>,
    audit_grid: Option<GridSpec>,
}

fn load_config(path: &Option<PathBuf>) -> Result<FileConfig, Failure> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| config_error(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| config_error(format!("invalid config {}: {e}", path.display())))
}

fn pick<T: Clone>(flag: &Option<T>, file: &Option<T>, default: T) -> T {
    flag.clone().or_else(|| file.clone()).unwrap_or(default)
}

fn pick_opt<T: Clone>(flag: &Option<T>, file: &Option<T>) -> Option<T> {
    flag.clone().or_else(|| file.clone())
}

struct ResolvedCurve {
    curve: ConeCurve,
    /// Effective-config fragment describing the curve source.
    describe: serde_json::Value,
    t0: f64,
    t1: f64,
    samples: usize,
    out: Option<PathBuf>,
    singular_tol: f64,
}

fn resolve_curve(args: &CurveArgs, file: &FileConfig) -> Result<ResolvedCurve, Failure> {
    let a = pick(&args.a, &file.a, 1.0);
    let m = pick(&args.m, &file.m, 2.0);
    let f_src = pick_opt(&args.f, &file.f);
    let g_src = pick_opt(&args.g, &file.g);
    let (curve, describe) = match (f_src, g_src) {
        (Some(f), Some(g)) => {
            let fe = parse(&f).map_err(|e| config_error(format!("--f: {e}")))?;
            let ge = parse(&g).map_err(|e| config_error(format!("--g: {e}")))?;
            let curve = ConeCurve::new(fe, ge, m).map_err(|e| config_error(e.to_string()))?;
            (curve, json!({ "f": f, "g": g, "m": m }))
        }
        (None, None) => {
            let fixture = pick(&args.fixture, &file.fixture, "hyperbolic".to_string());
            let curve = match fixture.as_str() {
                "hyperbolic" => ConeCurve::hyperbolic(a, m),
                "trigonometric" => ConeCurve::trigonometric(a, m),
                other => {
                    return Err(config_error(format!(
                        "unknown fixture `{other}` (expected hyperbolic or trigonometric)"
                    )))
                }
            }
            .map_err(|e| config_error(e.to_string()))?;
            (curve, json!({ "fixture": fixture, "a": a, "m": m }))
        }
        _ => {
            return Err(config_error(
                "explicit generators require both --f and --g".to_string(),
            ))
        }
    };
    let samples = pick(&args.samples, &file.samples, 101);
    if samples < 2 {
        return Err(config_error("samples must be ≥ 2".to_string()));
    }
    let out = args
        .out
        .clone()
        .or_else(|| file.out.clone().map(PathBuf::from));
    Ok(ResolvedCurve {
        curve,
        describe,
        t0: pick(&args.t0, &file.t0, -1.0),
        t1: pick(&args.t1, &file.t1, 1.0),
        samples,
        out,
        singular_tol: file
            .tolerances
            .map(|t| t.singular_abs)
            .unwrap_or_else(|| Tolerances::default().singular_abs),
    })
}

fn resolve_angles(
    kind: SmarandacheKind,
    args: &EvalArgs,
    file: &FileConfig,
) -> Result<(AngleSet, serde_json::Value), Failure> {
    let parse_angle =
        |label: &str, src: &str| parse(src).map_err(|e| config_error(format!("--{label}: {e}")));
    match kind.angle_arity() {
        1 => {
            let src = pick_opt(&args.psi, &file.psi)
                .or_else(|| pick_opt(&args.phi, &file.phi))
                .ok_or_else(|| config_error(format!("kind {kind} requires --psi (or --phi)")))?;
            Ok((
                AngleSet::One(parse_angle("psi", &src)?),
                json!({ "angle": src }),
            ))
        }
        _ => {
            let (label1, label2, first, second) = if kind == SmarandacheKind::GammaZetaN {
                (
                    "phi1",
                    "phi2",
                    pick_opt(&args.phi1, &file.phi1),
                    pick_opt(&args.phi2, &file.phi2),
                )
            } else {
                (
                    "omega1",
                    "omega2",
                    pick_opt(&args.omega1, &file.omega1),
                    pick_opt(&args.omega2, &file.omega2),
                )
            };
            let (Some(first), Some(second)) = (first, second) else {
                return Err(config_error(format!(
                    "kind {kind} requires --{label1} and --{label2}"
                )));
            };
            Ok((
                AngleSet::Two(parse_angle(label1, &first)?, parse_angle(label2, &second)?),
                json!({ "angle1": first, "angle2": second }),
            ))
        }
    }
}

/// Row flags for an evaluation error, or `None` when the error is a
/// configuration problem rather than a property of the sampled point.
fn row_flags(e: &Error) -> Option<(bool, bool)> {
    match e {
        Error::SingularFrame { .. } | Error::DenominatorZero { .. } | Error::KindDomain { .. } => {
            Some((true, false))
        }
        Error::Domain { .. } => Some((false, true)),
        _ => None,
    }
}

struct SampleRow {
    t: f64,
    gamma: Option<[f64; 4]>,
    singular: bool,
    domain_error: bool,
    error: Option<String>,
}

fn sample_rows(
    grid: &Grid,
    mut eval: impl FnMut(f64) -> nullcone::Result<[f64; 4]>,
) -> Result<Vec<SampleRow>, Failure> {
    let mut rows = Vec::with_capacity(grid.count());
    for t in grid.points() {
        match eval(t) {
            Ok(gamma) => rows.push(SampleRow {
                t,
                gamma: Some(gamma),
                singular: false,
                domain_error: false,
                error: None,
            }),
            Err(e) => {
                let Some((singular, domain_error)) = row_flags(&e) else {
                    return Err(config_error(e.to_string()));
                };
                rows.push(SampleRow {
                    t,
                    gamma: None,
                    singular,
                    domain_error,
                    error: Some(e.to_string()),
                });
            }
        }
    }
    Ok(rows)
}

fn rows_to_csv(rows: &[SampleRow]) -> String {
    let mut out = String::from("t,gamma1,gamma2,gamma3,gamma4,singular,domain-error\n");
    for row in rows {
        let cells: [String; 4] = match row.gamma {
            Some(g) => [
                format!("{}", g[0]),
                format!("{}", g[1]),
                format!("{}", g[2]),
                format!("{}", g[3]),
            ],
            None => Default::default(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.t, cells[0], cells[1], cells[2], cells[3], row.singular, row.domain_error
        ));
    }
    out
}

fn rows_to_json(effective: serde_json::Value, rows: &[SampleRow]) -> String {
    let rows: Vec<serde_json::Value> = rows
        .iter()
        .map(|r| {
            json!({
                "t": r.t,
                "gamma": r.gamma,
                "singular": r.singular,
                "domain-error": r.domain_error,
                "error": r.error,
            })
        })
        .collect();
    let doc = json!({ "command": "eval", "effective-config": effective, "rows": rows });
    let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
    s.push('\n');
    s
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => fs::write(path, content).map_err(|e| Failure {
            code: EXIT_UNWRITABLE,
            message: format!("cannot write {}: {e}", path.display()),
        }),
    }
}

fn cmd_eval(args: EvalArgs, require_kind: bool) -> CmdResult {
    let file = load_config(&args.curve.config)?;
    let resolved = resolve_curve(&args.curve, &file)?;
    let kind_src = pick_opt(&args.kind, &file.kind);
    if require_kind && kind_src.is_none() {
        return Err(config_error("smarandache requires --kind".to_string()));
    }
    let format = pick(&args.format, &file.format, "csv".to_string());
    if format != "csv" && format != "json" {
        return Err(config_error(format!(
            "unknown format `{format}` (expected csv or json)"
        )));
    }
    let grid = Grid::new(resolved.t0, resolved.t1, resolved.samples)
        .map_err(|e| config_error(e.to_string()))?;

    let mut effective = json!({
        "curve": resolved.describe,
        "t0": resolved.t0,
        "t1": resolved.t1,
        "samples": resolved.samples,
        "format": format,
    });
    let rows = match kind_src {
        Some(kind_src) => {
            let kind =
                SmarandacheKind::from_str(&kind_src).map_err(|e| config_error(e.to_string()))?;
            let (angles, angle_desc) = resolve_angles(kind, &args, &file)?;
            effective["kind"] = json!(kind.name());
            effective["angles"] = angle_desc;
            let spec = SmarandacheSpec::new(resolved.curve.clone(), kind, angles)
                .map_err(|e| config_error(e.to_string()))?;
            sample_rows(&grid, |t| smarandache_curve(&spec, t))?
        }
        None => sample_rows(&grid, |t| resolved.curve.position(t))?,
    };

    let content = match format.as_str() {
        "csv" => rows_to_csv(&rows),
        _ => rows_to_json(effective, &rows),
    };
    write_output(&resolved.out, &content)?;
    let flagged = rows.iter().any(|r| r.singular || r.domain_error);
    Ok(if flagged { EXIT_FLAGGED } else { 0 })
}

fn cmd_frame(args: FrameArgs) -> CmdResult {
    let file = load_config(&args.curve.config)?;
    let resolved = resolve_curve(&args.curve, &file)?;
    let format = pick(&args.format, &file.format, "json".to_string());
    if format != "json" {
        return Err(config_error(format!(
            "the frame command emits JSON only, got format `{format}`"
        )));
    }
    let single_t = args.t.or(file.t);
    let ts: Vec<f64> = match single_t {
        Some(t) => vec![t],
        None => Grid::new(resolved.t0, resolved.t1, resolved.samples)
            .map_err(|e| config_error(e.to_string()))?
            .points(),
    };

    let mut rows = Vec::with_capacity(ts.len());
    let mut flagged = false;
    for t in &ts {
        match build_frame_jets(&resolved.curve, *t, 3, resolved.singular_tol) {
            Ok(frame) => {
                let kj = curvature_jets(&frame);
                rows.push(json!({
                    "t": t,
                    "gamma": v4_value(&frame.gamma),
                    "xi": v4_value(&frame.xi),
                    "n": v4_value(&frame.n),
                    "w": v4_value(&frame.w),
                    "h": kj.h.value(),
                    "kappa1": kj.kappa1.value(),
                    "kappa2": kj.kappa2.value(),
                    "pairing": frame.d.value(),
                    "gram-max-abs": gram_residuals(&frame).max_abs(),
                    "frenet-max-abs": frenet_residuals(&frame).max_abs(),
                    "singular": false,
                    "domain-error": false,
                    "error": serde_json::Value::Null,
                }));
            }
            Err(e) => {
                let Some((singular, domain_error)) = row_flags(&e) else {
                    return Err(config_error(e.to_string()));
                };
                flagged = true;
                rows.push(json!({
                    "t": t,
                    "singular": singular,
                    "domain-error": domain_error,
                    "error": e.to_string(),
                }));
            }
        }
    }

    let effective = json!({
        "curve": resolved.describe,
        "t": single_t,
        "t0": resolved.t0,
        "t1": resolved.t1,
        "samples": resolved.samples,
        "singular-tolerance": resolved.singular_tol,
    });
    let doc = json!({ "command": "frame", "effective-config": effective, "rows": rows });
    let mut content = serde_json::to_string_pretty(&doc).expect("document serializes");
    content.push('\n');
    write_output(&resolved.out, &content)?;
    Ok(if flagged { EXIT_FLAGGED } else { 0 })
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let file = load_config(&args.config)?;
    let suite_src = pick(&args.suite, &file.suite, "all".to_string());
    let suite = SuiteId::from_str(&suite_src).map_err(|e| config_error(e.to_string()))?;

    let mode_src = pick(&args.formula_mode, &file.formula_mode, "both".to_string());
    let formula_mode = match mode_src.as_str() {
        "both" => None,
        other => Some(FormulaMode::from_str(other).map_err(|e| config_error(e.to_string()))?),
    };
    let defaults = AuditConfig::default();
    let config = AuditConfig {
        seed: pick(&args.seed, &file.seed, defaults.seed),
        samples: pick(&args.samples, &file.audit_samples, defaults.samples),
        formula_mode,
        tolerances: file.tolerances.unwrap_or(defaults.tolerances),
        grid: file.grid.unwrap_or(defaults.grid),
        audit_grid: file.audit_grid.unwrap_or(defaults.audit_grid),
    };
    let strict = args.strict || file.strict.unwrap_or(false);
    let format = pick(&args.format, &file.format, "json".to_string());
    if format != "json" && format != "text" {
        return Err(config_error(format!(
            "unknown format `{format}` (expected json or text)"
        )));
    }

    let report = run_suite(suite, &config).map_err(|e| config_error(e.to_string()))?;
    let content = match format.as_str() {
        "text" => render_text(&report),
        _ => report.to_json(),
    };
    let out = args
        .out
        .clone()
        .or_else(|| file.out.clone().map(PathBuf::from));
    write_output(&out, &content)?;

    let summary = &report.summary;
    let harness_failed =
        summary.unexpected_failures > 0 || summary.controls_passed_unexpectedly > 0;
    let mismatches = summary.audit.map_or(0, |a| a.mismatch);
    Ok(if harness_failed || (strict && mismatches > 0) {
        EXIT_AUDIT_FAILED
    } else {
        0
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(args) => cmd_eval(args, false),
        Command::Smarandache(args) => cmd_eval(args, true),
        Command::Frame(args) => cmd_frame(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
