//! The `bohr` command-line driver.
//!
//! Every command produces a list of flat rows; JSON, CSV and text output
//! are all rendered from the same rows after rounding to 12 significant
//! digits, so the three encodings carry identical numbers.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::BohrError;
use crate::extremal::{build_certified_extremal, build_extremal};
use crate::phi::{representative, PhiSpec, KERNEL_NAMES};
use crate::series::MAX_ORDER;
use crate::solver::{
    convex_bohr_radius, galpha_result, starlike_bohr_radius, threshold_scan, BohrResult, ClassKind,
    ONE_THIRD,
};
use crate::verifier::{
    verify_galpha, verify_kernel, VerificationReport, VerifyConfig, DEFAULT_SAMPLES, DEFAULT_SEED,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARAM: i32 = 2;
pub const EXIT_VERIFY: i32 = 5;

/// Radii compared by `--self-check`.
pub const SELF_CHECK_RADII: [f64; 6] = [0.05, 0.1, 0.15, 0.2, 0.25, 0.3];
const SELF_CHECK_TOL: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "bohr", version, about = "Bohr radii for Ma-Minda classes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,

    /// Function class.
    #[arg(long, value_enum, default_value = "starlike", global = true)]
    pub class: ClassArg,

    /// Kernel name.
    #[arg(long, global = true)]
    pub phi: Option<String>,

    /// Kernel or class parameter, `key=value`; repeatable.
    #[arg(long = "param", value_parser = parse_param, global = true)]
    pub params: Vec<(String, f64)>,

    #[arg(long, default_value = "1e-12", global = true)]
    pub tol: f64,

    /// Truncation order, 8..=1024.
    #[arg(long, default_value_t = 64, global = true)]
    pub order: usize,

    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,

    #[arg(long, default_value_t = DEFAULT_SAMPLES, global = true)]
    pub samples: usize,

    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Compare closed forms with the series path over the catalog first.
    #[arg(long, global = true)]
    pub self_check: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Bohr radius for the chosen class.
    Radius,
    /// Coefficients of φ, h and k.
    Coeffs,
    /// h and k at the given points.
    Eval {
        /// Evaluation point in [-1, 1); repeatable.
        #[arg(long = "at", allow_negative_numbers = true)]
        at: Vec<f64>,
    },
    /// Parameter value where the radius reaches 1/3.
    Scan {
        /// Parameter to vary; the kernel's default when omitted.
        #[arg(long)]
        over: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        low: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        high: Option<f64>,
    },
    /// Run the sampling oracles.
    Verify,
    /// Reference constants for the kernels with a threshold or cap.
    Table,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Radius => "radius",
            Command::Coeffs => "coeffs",
            Command::Eval { .. } => "eval",
            Command::Scan { .. } => "scan",
            Command::Verify => "verify",
            Command::Table => "table",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Starlike,
    Convex,
    #[value(name = "boundary_starlike", alias = "galpha")]
    BoundaryStarlike,
}

impl ClassArg {
    fn kind(self) -> ClassKind {
        match self {
            ClassArg::Starlike => ClassKind::Starlike,
            ClassArg::Convex => ClassKind::Convex,
            ClassArg::BoundaryStarlike => ClassKind::BoundaryStarlike,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn parse_param(s: &str) -> std::result::Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| format!("`{v}` is not a number"))?;
    Ok((k.trim().to_string(), v))
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Bohr(#[from] BohrError),
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0} failing samples")]
    Verification(usize),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Bohr(e) => e.exit_code(),
            CliError::Usage(_) => EXIT_PARAM,
            CliError::Verification(_) => EXIT_VERIFY,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

/// One output cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Str(String),
    Bool(bool),
    Null,
}

pub type Row = Vec<(&'static str, Cell)>;

/// Rounds to 12 significant digits (decimal, ties to even).
pub fn round12(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn num_text(x: f64) -> String {
    if !x.is_finite() {
        return String::new();
    }
    let x = round12(x);
    if x == 0.0 || (1e-4..1e15).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn cell_json(c: &Cell) -> Value {
    match c {
        Cell::Num(x) => {
            serde_json::Number::from_f64(round12(*x)).map_or(Value::Null, Value::Number)
        }
        Cell::Int(n) => json!(n),
        Cell::Str(s) => json!(s),
        Cell::Bool(b) => json!(b),
        Cell::Null => Value::Null,
    }
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Num(x) => num_text(*x),
        Cell::Int(n) => n.to_string(),
        Cell::Str(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
        Cell::Null => String::new(),
    }
}

/// Output of one invocation before encoding.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub command: String,
    pub config: Value,
    pub rows: Vec<Row>,
    pub seed: u64,
    /// Failing samples for `verify`.
    pub failures: usize,
}

impl Outcome {
    pub fn to_json(&self) -> String {
        let results: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    row.iter()
                        .map(|(k, c)| (k.to_string(), cell_json(c)))
                        .collect::<Map<_, _>>(),
                )
            })
            .collect();
        let doc = json!({
            "command": self.command,
            "config": self.config,
            "results": results,
            "version": env!("CARGO_PKG_VERSION"),
            "seed": self.seed,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if let Some(first) = self.rows.first() {
            w.write_record(first.iter().map(|(k, _)| *k)).expect("csv");
        }
        for row in &self.rows {
            w.write_record(row.iter().map(|(_, c)| cell_text(c)))
                .expect("csv");
        }
        String::from_utf8(w.into_inner().expect("csv")).expect("utf8")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                s.push('\n');
            }
            let width = row.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, c) in row {
                s.push_str(&format!("{k:width$}  {}\n", cell_text(c)));
            }
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }
}

fn params_text(spec: &PhiSpec) -> String {
    spec.params()
        .iter()
        .map(|(k, v)| format!("{k}={}", num_text(*v)))
        .collect::<Vec<_>>()
        .join(";")
}

fn config_json(cli: &Cli) -> Value {
    let params: Map<String, Value> = cli
        .params
        .iter()
        .map(|(k, v)| (k.clone(), cell_json(&Cell::Num(*v))))
        .collect();
    json!({
        "class": cli.class.kind().as_str(),
        "phi": cli.phi,
        "params": params,
        "tol": cli.tol,
        "order": cli.order,
        "samples": cli.samples,
    })
}

fn validate(cli: &Cli) -> Result<(), CliError> {
    if !(1e-14..=1e-6).contains(&cli.tol) {
        return Err(BohrError::param("tol", cli.tol, "1e-14 <= tol <= 1e-6").into());
    }
    if !(8..=MAX_ORDER).contains(&cli.order) {
        return Err(BohrError::param("order", cli.order as f64, "8 <= order <= 1024").into());
    }
    Ok(())
}

fn spec_of(cli: &Cli) -> Result<PhiSpec, CliError> {
    let name = cli.phi.as_deref().ok_or_else(|| {
        CliError::Usage(format!(
            "--phi is required; one of {}",
            KERNEL_NAMES.join(", ")
        ))
    })?;
    Ok(PhiSpec::from_name(name, &cli.params)?)
}

fn alpha_of(cli: &Cli) -> Result<f64, CliError> {
    if cli.phi.is_some() {
        return Err(CliError::Usage(
            "--phi does not apply to boundary_starlike".into(),
        ));
    }
    match cli.params.as_slice() {
        [(k, v)] if k.eq_ignore_ascii_case("alpha") => Ok(*v),
        _ => Err(CliError::Usage(
            "boundary_starlike takes exactly --param alpha=<value>".into(),
        )),
    }
}

fn radius_row(kernel: &str, params: String, r: &BohrResult) -> Row {
    vec![
        ("kernel", Cell::Str(kernel.to_string())),
        ("params", Cell::Str(params)),
        ("class", Cell::Str(r.class_kind.as_str().to_string())),
        ("radius", Cell::Num(r.radius)),
        ("root", r.root.map_or(Cell::Null, Cell::Num)),
        ("capped", Cell::Bool(r.capped)),
        ("residual", Cell::Num(r.residual)),
        ("bracket_low", Cell::Num(r.bracket.0)),
        ("bracket_high", Cell::Num(r.bracket.1)),
        ("order_used", Cell::Int(r.order_used as u64)),
    ]
}

fn cmd_radius(cli: &Cli) -> Result<Vec<Row>, CliError> {
    let row = match cli.class {
        ClassArg::BoundaryStarlike => {
            let alpha = alpha_of(cli)?;
            radius_row(
                "galpha",
                format!("alpha={}", num_text(alpha)),
                &galpha_result(alpha)?,
            )
        }
        ClassArg::Starlike => {
            let spec = spec_of(cli)?;
            radius_row(
                spec.name(),
                params_text(&spec),
                &starlike_bohr_radius(&spec, cli.tol)?,
            )
        }
        ClassArg::Convex => {
            let spec = spec_of(cli)?;
            radius_row(
                spec.name(),
                params_text(&spec),
                &convex_bohr_radius(&spec, cli.tol)?,
            )
        }
    };
    Ok(vec![row])
}

fn cmd_coeffs(cli: &Cli) -> Result<Vec<Row>, CliError> {
    let spec = spec_of(cli)?;
    let pair = build_extremal(&spec, cli.order)?;
    let phi = spec.phi_coefficients(cli.order)?;
    Ok((0..=cli.order)
        .map(|n| {
            vec![
                ("n", Cell::Int(n as u64)),
                ("phi", Cell::Num(phi.coeff(n))),
                ("h", Cell::Num(pair.h_series().coeff(n))),
                ("k", Cell::Num(pair.k_series().coeff(n))),
            ]
        })
        .collect())
}

fn cmd_eval(cli: &Cli, at: &[f64]) -> Result<Vec<Row>, CliError> {
    let spec = spec_of(cli)?;
    let pair = build_extremal(&spec, cli.order)?;
    let points: Vec<f64> = if at.is_empty() {
        vec![ONE_THIRD, -1.0]
    } else {
        at.to_vec()
    };
    points
        .iter()
        .map(|&r| {
            let (h, k) = if r == -1.0 {
                (pair.h_minus1(), pair.k_minus1())
            } else {
                (pair.eval_h(r)?, pair.eval_k(r)?)
            };
            Ok(vec![
                ("kernel", Cell::Str(spec.name().to_string())),
                ("params", Cell::Str(params_text(&spec))),
                ("r", Cell::Num(r)),
                ("h", Cell::Num(h)),
                ("k", Cell::Num(k)),
            ])
        })
        .collect()
}

/// Default scanned parameter and range for the kernels that have a threshold.
pub fn default_scan(name: &str) -> Option<(&'static str, f64, f64)> {
    match name {
        "exponential" => Some(("alpha", 0.0, 0.5)),
        "lens" => Some(("s", 0.1, std::f64::consts::FRAC_1_SQRT_2)),
        "janowski" => Some(("B", -1.0, -0.05)),
        _ => None,
    }
}

/// Threshold of `name` over `over` in `[low, high]`; other parameters are
/// taken from `fixed`.
pub fn scan_kernel(
    name: &str,
    over: &str,
    (low, high): (f64, f64),
    fixed: &[(String, f64)],
    class_kind: ClassKind,
    tol: f64,
) -> crate::error::Result<f64> {
    let family = |p: f64| {
        let mut params: Vec<(String, f64)> = fixed
            .iter()
            .filter(|(k, _)| !k.eq_ignore_ascii_case(over))
            .cloned()
            .collect();
        params.push((over.to_string(), p));
        PhiSpec::from_name(name, &params)
    };
    threshold_scan(&family, (low, high), class_kind, tol)
}

fn cmd_scan(
    cli: &Cli,
    over: Option<&str>,
    low: Option<f64>,
    high: Option<f64>,
) -> Result<Vec<Row>, CliError> {
    let name = cli
        .phi
        .as_deref()
        .ok_or_else(|| CliError::Usage("--phi is required".into()))?;
    let class_kind = match cli.class {
        ClassArg::BoundaryStarlike => {
            return Err(CliError::Usage(
                "scan applies to starlike or convex classes".into(),
            ))
        }
        c => c.kind(),
    };
    let defaults = default_scan(&name.to_ascii_lowercase());
    let over = over
        .map(str::to_string)
        .or(defaults.map(|d| d.0.to_string()))
        .ok_or_else(|| CliError::Usage(format!("no default scan for `{name}`; pass --over")))?;
    let low = low
        .or(defaults.map(|d| d.1))
        .ok_or_else(|| CliError::Usage("--low is required".into()))?;
    let high = high
        .or(defaults.map(|d| d.2))
        .ok_or_else(|| CliError::Usage("--high is required".into()))?;
    let fixed = if name.eq_ignore_ascii_case("janowski")
        && !cli.params.iter().any(|(k, _)| k.eq_ignore_ascii_case("A"))
    {
        vec![("A".to_string(), 0.5)]
    } else {
        cli.params.clone()
    };
    let t = scan_kernel(name, &over, (low, high), &fixed, class_kind, cli.tol)?;
    Ok(vec![vec![
        ("kernel", Cell::Str(name.to_ascii_lowercase())),
        ("param", Cell::Str(over)),
        ("low", Cell::Num(low)),
        ("high", Cell::Num(high)),
        ("class", Cell::Str(class_kind.as_str().to_string())),
        ("threshold", Cell::Num(t)),
    ]])
}

fn report_rows(report: &VerificationReport) -> Vec<Row> {
    report
        .checks
        .iter()
        .map(|c| {
            vec![
                ("subject", Cell::Str(report.subject.clone())),
                ("check", Cell::Str(c.name.clone())),
                ("samples", Cell::Int(c.samples as u64)),
                ("failures", Cell::Int(c.failures as u64)),
                ("worst_margin", Cell::Num(c.worst_margin)),
                ("tolerance", Cell::Num(c.tolerance)),
            ]
        })
        .collect()
}

fn cmd_verify(cli: &Cli) -> Result<(Vec<Row>, usize), CliError> {
    let cfg = VerifyConfig {
        seed: cli.seed,
        samples: cli.samples,
        order: cli.order,
    };
    let report = match cli.class {
        ClassArg::BoundaryStarlike => verify_galpha(alpha_of(cli)?, &cfg)?,
        _ => verify_kernel(&spec_of(cli)?, &cfg)?,
    };
    Ok((report_rows(&report), report.failures()))
}

/// One row per reference kernel, sorted by kernel name.
pub fn constants_table(tol: f64) -> crate::error::Result<Vec<Row>> {
    let mut names = [
        "booth",
        "cardioid",
        "exponential",
        "janowski",
        "lens",
        "rational",
    ];
    names.sort_unstable();
    names
        .iter()
        .map(|&name| {
            let spec = representative(name);
            let pair = build_certified_extremal(&spec, crate::series::DEFAULT_ORDER)?;
            let threshold = match default_scan(name) {
                Some((over, lo, hi)) => {
                    let fixed: Vec<(String, f64)> = spec
                        .params()
                        .iter()
                        .filter(|(k, _)| *k != over)
                        .map(|(k, v)| (k.to_string(), *v))
                        .collect();
                    Cell::Num(scan_kernel(
                        name,
                        over,
                        (lo, hi),
                        &fixed,
                        ClassKind::Starlike,
                        tol,
                    )?)
                }
                None => Cell::Null,
            };
            let r = starlike_bohr_radius(&spec, tol)?;
            Ok(vec![
                ("kernel", Cell::Str(name.to_string())),
                ("params", Cell::Str(params_text(&spec))),
                ("h_one_third", Cell::Num(pair.eval_h(ONE_THIRD)?)),
                ("h_minus1", Cell::Num(pair.h_minus1())),
                ("threshold", threshold),
                ("radius", Cell::Num(r.radius)),
                ("capped", Cell::Bool(r.capped)),
            ])
        })
        .collect()
}

/// Closed form against series for every catalog kernel that has one, at
/// [`SELF_CHECK_RADII`] and at `r = -1`.
pub fn self_check() -> crate::error::Result<Vec<Row>> {
    let mut rows = Vec::new();
    for spec in crate::phi::catalog() {
        if !spec.has_closed_form() {
            continue;
        }
        let pair = build_extremal(&spec, crate::series::DEFAULT_ORDER)?;
        let mut worst: f64 = 0.0;
        for &r in &SELF_CHECK_RADII {
            let closed = pair.eval_h_closed(r).expect("closed form");
            let series = pair.eval_h_series(r)?;
            if (closed - series).abs() > SELF_CHECK_TOL {
                return Err(BohrError::DualPathMismatch {
                    what: format!("{} h({r})", spec.label()),
                    closed,
                    series,
                });
            }
            worst = worst.max((closed - series).abs());
        }
        rows.push(vec![
            ("kernel", Cell::Str(spec.name().to_string())),
            ("params", Cell::Str(params_text(&spec))),
            ("max_deviation", Cell::Num(worst)),
            ("h_minus1", Cell::Num(pair.h_minus1())),
        ]);
    }
    Ok(rows)
}

/// Runs one parsed invocation.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    validate(cli)?;
    let check_rows = if cli.self_check {
        Some(self_check()?)
    } else {
        None
    };
    let mut failures = 0;
    let (command, rows) = match &cli.command {
        None => match check_rows {
            Some(rows) => ("self_check".to_string(), rows),
            None => return Err(CliError::Usage("no command given; see --help".into())),
        },
        Some(cmd) => {
            let rows = match cmd {
                Command::Radius => cmd_radius(cli)?,
                Command::Coeffs => cmd_coeffs(cli)?,
                Command::Eval { at } => cmd_eval(cli, at)?,
                Command::Scan { over, low, high } => cmd_scan(cli, over.as_deref(), *low, *high)?,
                Command::Verify => {
                    let (rows, f) = cmd_verify(cli)?;
                    failures = f;
                    rows
                }
                Command::Table => constants_table(cli.tol)?,
            };
            (cmd.name().to_string(), rows)
        }
    };
    Ok(Outcome {
        command,
        config: config_json(cli),
        rows,
        seed: cli.seed,
        failures,
    })
}

/// Parses `args`, runs, writes the output and returns the exit code.
/// `stdout` receives the rendered output unless `--out` is given.
pub fn run_with(
    args: impl IntoIterator<Item = impl Into<OsString> + Clone>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_PARAM;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    let result = execute(&cli).and_then(|out| {
        let text = out.render(cli.format);
        match &cli.out {
            Some(path) => std::fs::write(path, text)?,
            None => stdout.write_all(text.as_bytes())?,
        }
        if out.failures > 0 {
            Err(CliError::Verification(out.failures))
        } else {
            Ok(())
        }
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
