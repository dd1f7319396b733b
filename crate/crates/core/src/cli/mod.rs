//! Command-line front end. [`run`] parses arguments, writes the rendered
//! output and returns the process exit code: 0 success, 1 verification
//! failure, 2 usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::charforms::{
    a_hat, anomaly_class, ch_line, ch_tangent, e8_character, extract_w, l_hat_hirzebruch, AnomalyClass, CharError, LineConvention,
    ManifoldContext, Structure,
};
use crate::modforms::{check_transformation_numeric, named_series, ModError, DEFAULT_TAUS, LAW_IDS, SERIES_NAMES};
use crate::qseries::{QExp, QSeries};
use crate::ring::{GeneratorTable, GradedPoly};
use crate::verifier::{
    build_q_top, build_q_via, fit, run_suite, select, ConstantOverride, Group, JsonReport, ModularFitResult, Route, SeriesVariant, Status,
    VariantId, VerifyError, VerifyOptions,
};

/// Characteristic-form names accepted by `expand`.
pub const FORM_NAMES: [&str; 13] = ["Ahat", "Lhat", "chT", "chL", "chW1", "chW2", "chWbar1", "A", "A1", "A2", "A3", "Q_theta", "Q_direct"];

/// Output directory used for relative `--out` paths when set.
pub const OUT_DIR_ENV: &str = "ANOMALY_FORMS_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "anomaly-forms", version, about = "Exact q-series and characteristic-form checks of E8 anomaly cancellation identities")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Truncation order in q, a multiple of 1/24 (default 6; 40 for check-transforms).
    #[arg(long, global = true)]
    pub q_order: Option<String>,
    /// Degree cap of the form ring (default: the manifold dimension).
    #[arg(long, global = true)]
    pub degree_cap: Option<u32>,
    /// Line-bundle convention, e.g. REAL2+sinh.
    #[arg(long, global = true)]
    pub convention: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record wall-clock times in reports.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a named q-series, characteristic form or anomaly series.
    Expand(ExpandArgs),
    /// Fit a series against a modular-form basis.
    Fit(FitArgs),
    /// Run the registered identity checks.
    Verify(VerifyArgs),
    /// Numeric spot checks of the theta and Eisenstein transformation laws.
    CheckTransforms(TransformArgs),
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    pub name: String,
    /// Manifold dimension for characteristic forms.
    #[arg(long, default_value_t = 12)]
    pub dim: u32,
    /// Number of E8 bundles.
    #[arg(long, default_value_t = 2)]
    pub bundles: usize,
    /// Force spin or spin^c (default: spin in dimension 12, spin^c otherwise).
    #[arg(long)]
    pub structure: Option<String>,
    /// Keep only this form degree.
    #[arg(long)]
    pub degree: Option<u32>,
    /// Twist for 12-dim Q series: q1 or q2.
    #[arg(long, default_value = "q2")]
    pub twist: String,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// A series variant (Q14_TWO_BUNDLES, Q2_12, Q2_12_ONE, ...) or a named q-series.
    pub series: String,
    /// SL2Z, GAMMA0_2 or GAMMA_UP0_2.
    pub group: String,
    pub weight: u32,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Theorem id or pattern such as `3.*`.
    #[arg(default_value = "*")]
    pub filter: String,
    /// Override a printed constant: THEOREM:NAME=VALUE.
    #[arg(long = "set")]
    pub overrides: Vec<String>,
    /// Add a constant to a fitted coefficient in the swap check: R=VALUE.
    #[arg(long)]
    pub perturb_h: Option<String>,
    /// Print both sides of every identity.
    #[arg(long)]
    pub show_forms: bool,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// Sample point, e.g. `2i` or `0.5+2i`; repeatable.
    #[arg(long = "tau")]
    pub taus: Vec<String>,
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Restrict to these law ids; repeatable.
    #[arg(long = "law")]
    pub laws: Vec<String>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Modular(#[from] ModError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            _ => 2,
        }
    }
}

/// Rendered output plus whether everything checked out.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

/// Parses `args`, executes, writes output; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|o| emit(&cli.config, &o.text).map(|_| o.ok)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match &config.out {
        Some(path) => {
            let path = match std::env::var_os(OUT_DIR_ENV) {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path.clone(),
            };
            std::fs::write(path, text)?;
        }
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Expand(a) => cmd_expand(a, &cli.config),
        Command::Fit(a) => cmd_fit(a, &cli.config),
        Command::Verify(a) => cmd_verify(a, &cli.config),
        Command::CheckTransforms(a) => cmd_check_transforms(a, &cli.config),
    }
}

fn order(config: &RunConfig, default: i64) -> Result<QExp, CliError> {
    match &config.q_order {
        None => Ok(QExp::int(default)),
        Some(text) => {
            let e = QExp::parse(text).map_err(|e| CliError::Usage(format!("--q-order {text}: {e}")))?;
            if e < QExp::ZERO {
                return Err(CliError::Usage("--q-order must be nonnegative".into()));
            }
            Ok(e)
        }
    }
}

fn convention(config: &RunConfig) -> Result<LineConvention, CliError> {
    match &config.convention {
        None => Ok(LineConvention::RESOLVED),
        Some(name) => LineConvention::parse(name).ok_or_else(|| {
            let known: Vec<String> = LineConvention::CANDIDATES.iter().map(|c| c.to_string()).collect();
            CliError::Usage(format!("unknown convention {name:?}; known: {}", known.join(", ")))
        }),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn context(a: &ExpandArgs, config: &RunConfig) -> Result<ManifoldContext, CliError> {
    let structure = match a.structure.as_deref().map(str::to_ascii_lowercase).as_deref() {
        None if a.dim == 12 => Structure::Spin,
        None => Structure::SpinC,
        Some("spin") => Structure::Spin,
        Some("spinc" | "spin^c") => Structure::SpinC,
        Some(other) => return Err(CliError::Usage(format!("unknown structure {other:?}; use spin or spinc"))),
    };
    let cap = config.degree_cap.unwrap_or(a.dim);
    Ok(ManifoldContext::with_degree_cap(a.dim, structure, a.bundles, cap)?)
}

fn pick_degree(p: GradedPoly, degree: Option<u32>) -> GradedPoly {
    match degree {
        Some(d) => p.component(d),
        None => p,
    }
}

/// Anomaly variant matching an expand context.
fn variant_for(ctx: &ManifoldContext, twist: &str) -> Result<SeriesVariant, CliError> {
    let id = match (ctx.dimension(), ctx.structure(), ctx.e8_bundles()) {
        (14, Structure::SpinC, 2) => VariantId::Q14TwoBundles,
        (14, Structure::SpinC, 1) => VariantId::Q14OneBundle,
        (10, Structure::SpinC, 1) => VariantId::R10OneBundle,
        (12, Structure::Spin, 1 | 2) => match twist.to_ascii_lowercase().as_str() {
            "q1" => VariantId::Q1_12,
            "q2" => VariantId::Q2_12,
            other => return Err(CliError::Usage(format!("unknown twist {other:?}; use q1 or q2"))),
        },
        _ => return Err(CliError::Usage(format!("no anomaly series is defined for a {ctx}"))),
    };
    Ok(SeriesVariant { id, context: ctx.clone() })
}

pub fn cmd_expand(a: &ExpandArgs, config: &RunConfig) -> Result<Outcome, CliError> {
    let order = order(config, 6)?;
    let text = if SERIES_NAMES.contains(&a.name.as_str()) {
        named_series(&a.name, order)?.to_string()
    } else if let Ok(variant) = SeriesVariant::parse(&a.name) {
        let series = crate::verifier::build_q(&variant, order, convention(config)?)?;
        render_series(series, a.degree)
    } else if FORM_NAMES.contains(&a.name.as_str()) {
        let ctx = context(a, config)?;
        let form = |p: GradedPoly| pick_degree(p, a.degree).to_string();
        match a.name.as_str() {
            "Ahat" => form(a_hat(&ctx)),
            "Lhat" => form(l_hat_hirzebruch(&ctx)),
            "chT" => form(ch_tangent(&ctx).into_value()),
            "chL" => form(ch_line(&ctx, convention(config)?.ch)?.into_value()),
            "chW1" | "chW2" | "chWbar1" => {
                let (b, n) = match a.name.as_str() {
                    "chW1" => (0, 1),
                    "chW2" => (1, 1),
                    _ => (0, 2),
                };
                form(extract_w(&e8_character(&ctx, b, QExp::int(n))?, n)?.into_value())
            }
            "A" | "A1" | "A2" | "A3" => {
                let class = match a.name.as_str() {
                    "A" => AnomalyClass::A,
                    "A1" => AnomalyClass::A1,
                    "A2" => AnomalyClass::A2,
                    _ => AnomalyClass::A3,
                };
                form(anomaly_class(&ctx, class)?)
            }
            _ => {
                let variant = variant_for(&ctx, &a.twist)?;
                let route = if a.name == "Q_theta" { Route::Theta } else { Route::Direct(convention(config)?) };
                render_series(build_q_via(&variant, order, route)?, a.degree)
            }
        }
    } else {
        let variants: Vec<&str> = VariantId::ALL.iter().map(|v| v.name()).collect();
        return Err(CliError::Usage(format!(
            "unknown object {:?}\n  series: {}\n  forms: {}\n  anomaly series: {}",
            a.name,
            SERIES_NAMES.join(", "),
            FORM_NAMES.join(", "),
            variants.join(", ")
        )));
    };
    Ok(Outcome { text: format!("{text}\n"), ok: true })
}

fn render_series(series: QSeries<GradedPoly>, degree: Option<u32>) -> String {
    let series = match degree {
        Some(d) => series.component(d),
        None => series,
    };
    let mut out = String::new();
    for (e, c) in series.terms() {
        let _ = writeln!(out, "q^{e}: {c}");
    }
    if out.is_empty() {
        out.push_str("0\n");
    }
    out.trim_end().to_string()
}

#[derive(Serialize)]
struct FitJson {
    series: String,
    group: String,
    weight: u32,
    basis: Vec<String>,
    coefficients: Vec<String>,
    fit_orders: Vec<String>,
    residuals: Vec<ResidualJson>,
    passed: bool,
}

#[derive(Serialize)]
struct ResidualJson {
    q: String,
    residual: String,
}

pub fn cmd_fit(a: &FitArgs, config: &RunConfig) -> Result<Outcome, CliError> {
    let order = order(config, 6)?;
    let group =
        Group::parse(&a.group).ok_or_else(|| CliError::Usage(format!("unknown group {:?}; use SL2Z, GAMMA0_2 or GAMMA_UP0_2", a.group)))?;
    let series = if let Ok(variant) = SeriesVariant::parse(&a.series) {
        if variant.weight() != a.weight || variant.group() != group {
            return Err(CliError::Usage(format!(
                "{} has weight {} over {}, not weight {} over {group}",
                a.series,
                variant.weight(),
                variant.group(),
                a.weight
            )));
        }
        build_q_top(&variant, order, convention(config)?)?
    } else if SERIES_NAMES.contains(&a.series.as_str()) {
        let ring = GeneratorTable::new::<&str>(&[], 0).expect("empty table");
        named_series(&a.series, order)?.promote(&ring)
    } else {
        return Err(CliError::Usage(format!("unknown series {:?}", a.series)));
    };
    let result = fit(&series, group, a.weight).map_err(|e| match e {
        VerifyError::UnsupportedWeight { .. } | VerifyError::InsufficientOrder { .. } => CliError::Usage(e.to_string()),
        other => other.into(),
    })?;
    let ok = result.passed();
    let text = match config.format {
        Format::Json => json(&fit_json(&a.series, &result)),
        Format::Text => fit_text(&a.series, &result),
    };
    Ok(Outcome { text, ok })
}

fn fit_json(series: &str, r: &ModularFitResult) -> FitJson {
    FitJson {
        series: series.to_string(),
        group: r.group.to_string(),
        weight: r.weight,
        basis: r.basis.clone(),
        coefficients: r.coefficients.iter().map(|c| c.to_string()).collect(),
        fit_orders: r.fit_orders.iter().map(|e| e.to_string()).collect(),
        residuals: r.residuals.iter().map(|(e, c)| ResidualJson { q: e.to_string(), residual: c.to_string() }).collect(),
        passed: r.passed(),
    }
}

fn fit_text(series: &str, r: &ModularFitResult) -> String {
    let mut out = format!("fit {series} over {} weight {}\n", r.group, r.weight);
    for (name, c) in r.basis.iter().zip(&r.coefficients) {
        let _ = writeln!(out, "  {name}: {c}");
    }
    let orders: Vec<String> = r.fit_orders.iter().map(|e| format!("q^{e}")).collect();
    let _ = writeln!(out, "  solved on {}", orders.join(", "));
    for (e, c) in &r.residuals {
        if c.is_zero() {
            let _ = writeln!(out, "  residual q^{e}: 0");
        } else {
            let _ = writeln!(out, "  residual q^{e}: {c}");
        }
    }
    match r.first_nonzero_residual() {
        None => {
            let through = r.certified_through().map(|e| e.to_string()).unwrap_or_else(|| "-".into());
            let _ = writeln!(out, "certified through q^{through}");
        }
        Some((e, _)) => {
            let _ = writeln!(out, "FAIL: nonzero residual at q^{e}");
        }
    }
    out
}

pub fn cmd_verify(a: &VerifyArgs, config: &RunConfig) -> Result<Outcome, CliError> {
    let selected = select(&a.filter);
    if selected.is_empty() && !a.filter.contains(['*', '?']) {
        return Err(CliError::Usage(format!("unknown theorem id {:?}; known: {}", a.filter, crate::verifier::THEOREM_IDS.join(", "))));
    }
    let mut opts =
        VerifyOptions { order: order(config, 6)?, convention: convention(config)?, degree_cap: config.degree_cap, ..Default::default() };
    for o in &a.overrides {
        opts.overrides.push(ConstantOverride::parse(o)?);
    }
    if let Some(p) = &a.perturb_h {
        let bad = || CliError::Usage(format!("--perturb-h {p}: expected R=VALUE"));
        let (r, v) = p.split_once('=').ok_or_else(bad)?;
        let r: usize = r.trim().parse().map_err(|_| bad())?;
        let v = crate::ring::parse_rational(v.trim()).map_err(|_| bad())?;
        opts.perturb_h = Some((r, v));
    }
    let (reports, summary) = run_suite(&a.filter, &opts)?;
    let ok = summary.fail == 0;
    let text = match config.format {
        Format::Json => {
            let wire: Vec<JsonReport> = reports.iter().map(|r| r.to_json(config.timings)).collect();
            json(&wire)
        }
        Format::Text => {
            let show = a.show_forms || reports.len() == 1;
            let mut out = String::new();
            for r in &reports {
                let _ = write!(out, "{}", r.summary_line());
                if config.timings {
                    let _ = write!(out, "  ({} ms)", r.elapsed_ms);
                }
                out.push('\n');
                for c in &r.constants {
                    let mark = if c.matches() { "ok" } else { "MISMATCH" };
                    let _ = writeln!(
                        out,
                        "    {:<14} printed {:>10}  derived {:>10}  {mark}",
                        c.name,
                        c.expected.to_string(),
                        c.computed.to_string()
                    );
                }
                if r.status != Status::Pass || show {
                    let _ = writeln!(out, "    lhs: {}", r.lhs);
                    let _ = writeln!(out, "    rhs: {}", r.rhs);
                    let _ = writeln!(out, "    difference: {}", r.difference);
                }
            }
            let _ = writeln!(out, "{summary}");
            out
        }
    };
    Ok(Outcome { text, ok })
}

#[derive(Serialize)]
struct LawJson {
    law: String,
    tau: String,
    residual: f64,
    tail: f64,
    passed: bool,
}

fn parse_tau(text: &str) -> Result<Complex64, CliError> {
    text.replace(' ', "").parse::<Complex64>().map_err(|_| CliError::Usage(format!("cannot parse tau {text:?}; write e.g. 0.5+2i")))
}

fn show_tau(t: Complex64) -> String {
    if t.re == 0.0 {
        format!("{}i", t.im)
    } else {
        format!("{}+{}i", t.re, t.im)
    }
}

pub fn cmd_check_transforms(a: &TransformArgs, config: &RunConfig) -> Result<Outcome, CliError> {
    let order = order(config, 40)?;
    if !a.tolerance.is_finite() || a.tolerance <= 0.0 {
        return Err(CliError::Usage("--tolerance must be positive".into()));
    }
    let taus: Vec<Complex64> =
        if a.taus.is_empty() { DEFAULT_TAUS.to_vec() } else { a.taus.iter().map(|t| parse_tau(t)).collect::<Result<_, _>>()? };
    let laws: Vec<&str> = if a.laws.is_empty() { LAW_IDS.to_vec() } else { a.laws.iter().map(String::as_str).collect() };
    let mut rows = Vec::new();
    for law in &laws {
        for &tau in &taus {
            let check = check_transformation_numeric(law, tau, order, a.tolerance).map_err(|e| match e {
                ModError::TailTooLarge { .. } => CliError::Usage(format!("{law} at tau = {}: {e}", show_tau(tau))),
                ModError::UnknownLaw(_) => CliError::Usage(format!("{e}; known: {}", LAW_IDS.join(", "))),
                other => other.into(),
            })?;
            rows.push(check);
        }
    }
    let ok = rows.iter().all(|r| r.passed);
    let text = match config.format {
        Format::Json => json(
            &rows
                .iter()
                .map(|r| LawJson { law: r.law.clone(), tau: show_tau(r.tau), residual: r.residual, tail: r.tail, passed: r.passed })
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut out = String::new();
            let mut failures = 0;
            for law in &laws {
                let mine: Vec<_> = rows.iter().filter(|r| r.law == *law).collect();
                let worst = mine.iter().map(|r| r.residual).fold(0.0, f64::max);
                let bad = mine.iter().filter(|r| !r.passed).count();
                failures += bad;
                let status = if bad == 0 { "ok".to_string() } else { format!("FAIL at {bad} of {} samples", mine.len()) };
                let _ = writeln!(out, "{law:<14} max residual {worst:.3e}  {status}");
            }
            let _ = writeln!(out, "{} checks, {failures} failed, tolerance {:.1e}, q-order {order}", rows.len(), a.tolerance);
            out
        }
    };
    Ok(Outcome { text, ok })
}
