//! Command-line front end.
//!
//! Exit codes: 0 when everything ran and passed, 1 when a check failed,
//! 2 for usage and configuration errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fieldlines::{trace_many, FieldLine, TraceOptions, Vec3};
use crate::solutions::{hopfion_velocity, EnergySign, FieldKind, FieldValue, SolutionFamily, SolutionId};
use crate::spacetime::SpacetimePoint;
use crate::verify::fd::{ResidualConfig, Scheme};
use crate::verify::report::VerificationReport;
use crate::verify::sample::DEFAULT_SEED;
use crate::verify::suites::{current_line_field, run_hopf_checks, run_oracle_checks, HopfCheck, OracleCheck, Suite, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Keys a config file may set on the top-level command rather than the subcommand.
const GLOBAL_KEYS: [&str; 2] = ["seed", "threads"];

#[derive(Parser, Debug)]
#[command(name = "hopfion", version, about = "Evaluate and verify hopfion-family solutions of the Weyl, Maxwell and Dirac equations")]
#[command(args_override_self = true)]
pub struct Cli {
    /// File of `key = value` lines supplying defaults for any long flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed of the pseudo-random sample points.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a field or its current on a grid.
    Eval(EvalArgs),
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Trace current lines from one or more seeds.
    Trace(TraceArgs),
    /// Hopf map checks.
    Hopf(CheckArgs),
    /// Quadrature oracle checks.
    Oracle(CheckArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SolutionArgs {
    /// Solution family, e.g. maxwell-hopfion-1, knot-pq, psi4.
    #[arg(long)]
    pub solution: String,
    /// Scale parameter of the massless families.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    /// Mass of the Dirac families; their coordinates are in units of 1/m.
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, default_value_t = 1)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub q: u32,
    /// Free spinor index of dirac-base.
    #[arg(long, default_value_t = 0)]
    pub base_index: u8,
    /// Use the dotted parameter for dirac-base.
    #[arg(long)]
    pub dotted: bool,
    /// `+` or `-`.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    pub energy_sign: String,
}

impl SolutionArgs {
    pub fn id(&self) -> Result<SolutionId> {
        let id = SolutionId {
            family: SolutionFamily::from_str(&self.solution)?,
            a: self.a,
            m: self.m,
            p: self.p,
            q: self.q,
            base_index: self.base_index,
            base_dotted: self.dotted,
            energy_sign: EnergySign::from_str(&self.energy_sign)?,
        };
        id.validate()?;
        Ok(id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Field,
    Current,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub solution: SolutionArgs,
    /// Axis ranges such as `x=-2:2:101` or `t=0`; unset axes are fixed at 0.
    #[arg(long = "grid", value_delimiter = ',')]
    pub grid: Vec<String>,
    #[arg(long, value_enum, default_value = "field")]
    pub quantity: Quantity,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Use the verbatim tabulated psi6/psi8.
    #[arg(long)]
    pub printed: bool,
    /// Output file (default: stdout).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Comma-separated suite names or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Tolerance of the finite-difference residual checks.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    #[arg(long, default_value_t = 2.0)]
    pub radius: f64,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-3)]
    pub h: f64,
    #[arg(long, default_value = "richardson")]
    pub scheme: String,
    /// Restrict per-solution checks to one family (default parameters).
    #[arg(long)]
    pub solution: Option<String>,
    /// Add `eps (1 + t^2)` to every sampled field (self-test of the checks).
    #[arg(long)]
    pub perturb: Option<f64>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    /// Solution whose spatial current is followed, or `hopfion-velocity`.
    #[arg(long)]
    pub solution: String,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, default_value_t = 1)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub q: u32,
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    pub energy_sign: String,
    /// Seed point `x,y,z`; repeat for several lines.
    #[arg(long = "from", required = true, allow_hyphen_values = true)]
    pub from: Vec<String>,
    /// Fixed time of the traced field.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, default_value_t = 50.0)]
    pub max_length: f64,
    #[arg(long, default_value_t = 200_000)]
    pub max_steps: usize,
    #[arg(long, default_value_t = 0.05)]
    pub max_step: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub rtol: f64,
    /// Stop when |x|, |y| or |z| exceeds this.
    #[arg(long)]
    pub bounds: Option<f64>,
    /// Do not stop when the line returns to its seed.
    #[arg(long)]
    pub no_closure: bool,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// File name stem; files are `<prefix>-<i>.csv` and `<prefix>-<i>.json`.
    #[arg(long, default_value = "line")]
    pub prefix: String,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Comma-separated check names or `all`.
    #[arg(long, default_value = "all")]
    pub check: String,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

/// Axis range `min:max:count` or a single value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisRange {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisRange {
    pub fn fixed(v: f64) -> Self {
        Self { min: v, max: v, count: 1 }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let d = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i + 1 == self.count { self.max } else { self.min + d * i as f64 }).collect()
    }
}

/// Grid over `t, x, y, z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub axes: [AxisRange; 4],
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { axes: [AxisRange::fixed(0.0); 4] }
    }
}

impl GridSpec {
    pub fn parse<S: AsRef<str>>(specs: &[S]) -> Result<Self> {
        let mut g = GridSpec::default();
        for spec in specs {
            let spec = spec.as_ref().trim();
            let (name, range) = spec
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("grid axis `{spec}` is not of the form x=min:max:count")))?;
            let axis = ["t", "x", "y", "z"].iter().position(|a| *a == name.trim()).ok_or_else(|| Error::UnknownName {
                name: name.trim().to_string(),
                valid: "t, x, y, z".into(),
            })?;
            g.axes[axis] = parse_range(range)?;
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points with `x` fastest, then `y`, `z`, and `t` slowest.
    pub fn points(&self) -> Vec<SpacetimePoint> {
        let [t, x, y, z] = self.axes.map(|a| a.values());
        let mut out = Vec::with_capacity(self.len());
        for &tv in &t {
            for &zv in &z {
                for &yv in &y {
                    for &xv in &x {
                        out.push(SpacetimePoint::new(tv, xv, yv, zv));
                    }
                }
            }
        }
        out
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    let v: f64 = s.trim().parse().map_err(|_| Error::InvalidParameter(format!("`{s}` is not a number")))?;
    if !v.is_finite() {
        return Err(Error::InvalidParameter(format!("`{s}` is not finite")));
    }
    Ok(v)
}

fn parse_range(s: &str) -> Result<AxisRange> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [v] => Ok(AxisRange::fixed(parse_f64(v)?)),
        [lo, hi, n] => {
            let (min, max) = (parse_f64(lo)?, parse_f64(hi)?);
            let count: usize =
                n.trim().parse().map_err(|_| Error::InvalidParameter(format!("grid count `{n}` is not a positive integer")))?;
            if count == 0 {
                return Err(Error::InvalidParameter("grid count must be at least 1".into()));
            }
            if min > max {
                return Err(Error::InvalidParameter(format!("grid range {min}:{max} has min > max")));
            }
            if count == 1 && min != max {
                return Err(Error::InvalidParameter(format!("grid range {min}:{max} needs more than one point")));
            }
            Ok(AxisRange { min, max, count })
        }
        _ => Err(Error::InvalidParameter(format!("grid range `{s}` is not of the form min:max:count"))),
    }
}

/// Parses `x,y,z`.
pub fn parse_seed(s: &str) -> Result<Vec3> {
    let v = s.split(',').map(parse_f64).collect::<Result<Vec<f64>>>()?;
    <[f64; 3]>::try_from(v).map_err(|_| Error::InvalidParameter(format!("seed `{s}` needs three coordinates x,y,z")))
}

/// Reads a config file into `--key value` arguments.
pub fn config_args(text: &str) -> Result<(Vec<String>, Vec<String>)> {
    let (mut global, mut local) = (Vec::new(), Vec::new());
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("config line {}: expected key = value", i + 1)))?;
        let (k, v) = (k.trim().replace('_', "-"), v.trim());
        if k.is_empty() || k == "config" {
            return Err(Error::InvalidParameter(format!("config line {}: bad key `{k}`", i + 1)));
        }
        let target = if GLOBAL_KEYS.contains(&k.as_str()) { &mut global } else { &mut local };
        match v {
            "true" => target.push(format!("--{k}")),
            "false" => {}
            _ => target.push(format!("--{k}={v}")),
        }
    }
    Ok((global, local))
}

/// Splices config-file defaults into `argv` ahead of the explicit flags, so
/// that flags on the command line win.
pub fn expand_config(argv: Vec<String>) -> Result<Vec<String>> {
    let mut path = None;
    for (i, a) in argv.iter().enumerate() {
        if a == "--config" {
            path = argv.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else { return Ok(argv) };
    let text = fs::read_to_string(&path).map_err(|e| Error::InvalidParameter(format!("cannot read config {path}: {e}")))?;
    let (global, local) = config_args(&text)?;
    let sub = argv
        .iter()
        .skip(1)
        .position(|a| ["eval", "verify", "trace", "hopf", "oracle"].contains(&a.as_str()))
        .map(|p| p + 1);
    let mut out = vec![argv[0].clone()];
    out.extend(global);
    match sub {
        Some(s) => {
            out.extend(argv[1..=s].iter().cloned());
            out.extend(local);
            out.extend(argv[s + 1..].iter().cloned());
        }
        None => out.extend(argv[1..].iter().cloned()),
    }
    Ok(out)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes()).and_then(|_| so.flush()).map_err(|e| Error::InvalidParameter(format!("stdout: {e}")))
        }
    }
}

fn report_exit(report: &VerificationReport, out: Option<&Path>) -> Result<i32> {
    write_output(out, &(report.to_json() + "\n"))?;
    for f in report.failures() {
        eprintln!("FAIL {} [{}]: {:e} > {:e}", f.check, f.solution, f.max_residual, f.tolerance);
    }
    if out.is_some() {
        eprintln!("{} checks, {} failed", report.records.len(), report.failures().count());
    }
    Ok(if report.all_pass() { EXIT_OK } else { EXIT_FAIL })
}

fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

/// Column names of an evaluation table.
pub fn eval_columns(id: &SolutionId, quantity: Quantity) -> Vec<String> {
    let mut cols: Vec<String> = ["t", "x", "y", "z"].map(String::from).to_vec();
    match quantity {
        Quantity::Current => cols.extend(["j0", "j1", "j2", "j3"].map(String::from)),
        Quantity::Field => {
            let names: &[&str] = match id.kind() {
                FieldKind::Weyl => &["phi0", "phi1"],
                FieldKind::Maxwell => &["Fx", "Fy", "Fz"],
                FieldKind::Dirac => &["phi0", "phi1", "chi0", "chi1"],
            };
            for n in names {
                cols.push(format!("{n}_re"));
                cols.push(format!("{n}_im"));
            }
        }
    }
    cols
}

fn eval_row(id: &SolutionId, x: &SpacetimePoint, quantity: Quantity, printed: bool) -> Result<Vec<f64>> {
    let mut row = vec![x.t, x.x, x.y, x.z];
    let v: FieldValue = if printed { id.evaluate_printed(x)? } else { id.evaluate(x)? };
    match quantity {
        Quantity::Field => v.components().iter().for_each(|c| row.extend([c.re, c.im])),
        Quantity::Current => row.extend(crate::solutions::current_of(&v).re()),
    }
    Ok(row)
}

fn units_note(id: &SolutionId) -> String {
    match id.kind() {
        FieldKind::Dirac => format!("Compton units: coordinates in 1/m, m = {}", id.m),
        _ => format!("coordinates in units of a = {}", id.a),
    }
}

/// Evaluation table as CSV (or JSON), rows in [`GridSpec::points`] order.
pub fn eval_table(id: &SolutionId, grid: &GridSpec, quantity: Quantity, printed: bool, format: Format) -> Result<String> {
    let pts = grid.points();
    let rows: Vec<Vec<f64>> = pts.par_iter().map(|x| eval_row(id, x, quantity, printed)).collect::<Result<_>>()?;
    let cols = eval_columns(id, quantity);
    match format {
        Format::Csv => {
            let mut s = format!("# {} {}; {}\n", id.label(), if quantity == Quantity::Current { "current" } else { "field" }, units_note(id));
            s.push_str(&cols.join(","));
            s.push('\n');
            for r in rows {
                let line: Vec<String> = r.into_iter().map(fmt_f).collect();
                let _ = writeln!(s, "{}", line.join(","));
            }
            Ok(s)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Table<'a> {
                solution: &'a SolutionId,
                label: String,
                units: String,
                columns: Vec<String>,
                rows: Vec<Vec<f64>>,
            }
            let t = Table { solution: id, label: id.label(), units: units_note(id), columns: cols, rows };
            Ok(serde_json::to_string_pretty(&t).expect("table serializes") + "\n")
        }
    }
}

fn cmd_eval(a: &EvalArgs) -> Result<i32> {
    let id = a.solution.id()?;
    let grid = GridSpec::parse(&a.grid)?;
    let text = eval_table(&id, &grid, a.quantity, a.printed, a.format)?;
    write_output(a.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, seed: u64) -> Result<i32> {
    let suites = Suite::parse_list(&a.suite)?;
    if !(a.tol > 0.0) || a.points == 0 || !(a.radius > 0.0) {
        return Err(Error::InvalidParameter("tol, points and radius must be positive".into()));
    }
    let solution = match &a.solution {
        Some(s) => Some(SolutionId::new(s.parse()?)),
        None => None,
    };
    let opts = SuiteOptions {
        points: a.points,
        seed,
        radius: a.radius,
        cfg: ResidualConfig::new(a.h, Scheme::from_str(&a.scheme)?)?,
        tol: a.tol,
        perturb: a.perturb,
        solution,
    };
    let report = crate::verify::suites::run_suites(&suites, &opts)?;
    report_exit(&report, a.out.as_deref())
}

fn parse_checks<T: FromStr<Err = Error> + Copy>(s: &str, all: &[T]) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "all" {
            out.extend_from_slice(all);
        } else {
            out.push(part.parse()?);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidParameter("no check selected".into()));
    }
    Ok(out)
}

#[derive(Serialize)]
struct LineMeta<'a> {
    solution: &'a str,
    t: f64,
    seed: Vec3,
    stop: String,
    length: f64,
    points: usize,
    closure: Option<crate::fieldlines::Closure>,
    max_extent: f64,
    accepted_steps: usize,
    rejected_steps: usize,
    csv: String,
}

fn line_csv(line: &FieldLine) -> String {
    let mut s = String::from("lambda,x,y,z\n");
    for (l, p) in line.lambda.iter().zip(&line.points) {
        let _ = writeln!(s, "{},{},{},{}", fmt_f(*l), fmt_f(p[0]), fmt_f(p[1]), fmt_f(p[2]));
    }
    s
}

fn cmd_trace(a: &TraceArgs) -> Result<i32> {
    let seeds = a.from.iter().map(|s| parse_seed(s)).collect::<Result<Vec<_>>>()?;
    let opts = TraceOptions {
        rtol: a.rtol,
        max_length: a.max_length,
        max_steps: a.max_steps,
        max_step: a.max_step,
        bounds: a.bounds,
        closure_eps: if a.no_closure { 0.0 } else { TraceOptions::default().closure_eps },
        ..TraceOptions::default()
    };
    opts.validate()?;
    let (label, lines) = if a.solution == "hopfion-velocity" {
        if !(a.a > 0.0) {
            return Err(Error::Domain(format!("scale a must be positive, got {}", a.a)));
        }
        let (t, scale) = (a.t, a.a);
        let v = move |r: Vec3| hopfion_velocity(&SpacetimePoint::at_time(t, r), scale);
        ("hopfion-velocity".to_string(), trace_many(&v, &seeds, &opts)?)
    } else {
        let sa = SolutionArgs {
            solution: a.solution.clone(),
            a: a.a,
            m: a.m,
            p: a.p,
            q: a.q,
            base_index: 0,
            dotted: false,
            energy_sign: a.energy_sign.clone(),
        };
        let id = sa.id()?;
        (id.label(), trace_many(&current_line_field(id, a.t), &seeds, &opts)?)
    };
    fs::create_dir_all(&a.out_dir)
        .map_err(|e| Error::InvalidParameter(format!("cannot create {}: {e}", a.out_dir.display())))?;
    for (i, line) in lines.iter().enumerate() {
        let csv = format!("{}-{}.csv", a.prefix, i);
        let meta = LineMeta {
            solution: &label,
            t: a.t,
            seed: line.seed,
            stop: line.stop.to_string(),
            length: line.length(),
            points: line.len(),
            closure: line.closure,
            max_extent: line.max_extent(),
            accepted_steps: line.accepted_steps,
            rejected_steps: line.rejected_steps,
            csv: csv.clone(),
        };
        write_output(Some(&a.out_dir.join(&csv)), &line_csv(line))?;
        let json = serde_json::to_string_pretty(&meta).expect("metadata serializes") + "\n";
        write_output(Some(&a.out_dir.join(format!("{}-{}.json", a.prefix, i))), &json)?;
        eprintln!("{csv}: {} points, length {:.6}, stop {}", line.len(), line.length(), line.stop);
    }
    Ok(EXIT_OK)
}

fn run_cli(cli: &Cli) -> Result<i32> {
    let opts = SuiteOptions { seed: cli.seed, ..SuiteOptions::default() };
    match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Verify(a) => cmd_verify(a, cli.seed),
        Command::Trace(a) => cmd_trace(a),
        Command::Hopf(a) => {
            let checks = parse_checks(&a.check, &HopfCheck::ALL)?;
            report_exit(&run_hopf_checks(&checks, &opts)?, a.out.as_deref())
        }
        Command::Oracle(a) => {
            let checks = parse_checks(&a.check, &OracleCheck::ALL)?;
            report_exit(&run_oracle_checks(&checks, &opts)?, a.out.as_deref())
        }
    }
}

/// Parses `argv` and runs the command, returning the process exit code.
pub fn main_with_args(argv: Vec<String>) -> i32 {
    let argv = match expand_config(argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("error: cannot use {n} threads");
            return EXIT_USAGE;
        }
    }
    match run_cli(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
