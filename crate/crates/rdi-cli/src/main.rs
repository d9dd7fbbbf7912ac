//! `rdi`: catalog listing, field maps and the verification suite.

mod config;

use clap::{Args, Parser, Subcommand};
use config::{Axis, Format, RunConfig, UnitSystem};
use rayon::prelude::*;
use rdi::error::RdiError;
use rdi::numerics::FdPolicy;
use rdi::solution_catalog::{Family, Solution, Units};
use rdi::spinor_factory::observables;
use rdi::sta_core::SpacetimePoint;
use rdi::verifier::{run_suite, CheckRecord, SuiteConfig, VerificationReport};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use thiserror::Error;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error(transparent)]
    Domain(#[from] RdiError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::UnknownFamily(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

#[derive(Parser)]
#[command(name = "rdi", version, about = "Exact Dirac vortex-beam states: catalog, field maps and verification")]
struct Cli {
    /// TOML config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the solution families and their parameters.
    Catalog {
        #[arg(long)]
        json: bool,
    },
    /// Evaluate one state on a grid: spinor, current, potential, fields.
    Eval(EvalArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SolutionArgs {
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long)]
    m_orbital: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pz: Option<f64>,
    #[arg(long)]
    mass: Option<f64>,
    #[arg(long)]
    energy: Option<f64>,
    /// circular, linear or pulse.
    #[arg(long)]
    waveform: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    amplitude: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, value_enum)]
    units: Option<UnitSystem>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    solution: SolutionArgs,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    /// lo:hi:count
    #[arg(long, allow_hyphen_values = true)]
    x: Option<Axis>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<Axis>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<Axis>,
    #[arg(long)]
    axis_radius: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// "all" or a comma-separated list.
    #[arg(long)]
    family: Option<String>,
    /// Repeatable; the default suite when absent.
    #[arg(long)]
    check: Vec<String>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    negative_control: Option<String>,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    fd_tolerance: Option<f64>,
    /// Record wall-clock time (makes the report non-reproducible).
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    output: OutputArgs,
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

fn apply_solution(cfg: &mut RunConfig, a: SolutionArgs) {
    let s = &mut cfg.solution;
    if a.family.is_some() {
        s.family = a.family;
    }
    set(&mut s.n, a.n);
    set(&mut s.l, a.l);
    set(&mut s.m_orbital, a.m_orbital);
    set(&mut s.b, a.b);
    set(&mut s.p_z, a.pz);
    set(&mut s.mass, a.mass);
    set(&mut s.energy, a.energy);
    set(&mut s.waveform, a.waveform);
    set(&mut s.amplitude, a.amplitude);
    set(&mut s.omega, a.omega);
    set(&mut s.tau, a.tau);
}

fn apply_output(cfg: &mut RunConfig, a: OutputArgs) {
    if a.output.is_some() {
        cfg.output.path = a.output;
    }
    set(&mut cfg.output.format, a.format);
    set(&mut cfg.output.units, a.units);
}

fn units_of(cfg: &RunConfig) -> Units {
    match cfg.output.units {
        UnitSystem::Natural => Units::natural(),
        UnitSystem::Si => Units::si(),
    }
}

fn header(cfg: &RunConfig) -> Value {
    json!({ "kind": "header", "library_version": VERSION, "config": cfg, "units": units_of(cfg) })
}

fn open_output(cfg: &RunConfig) -> Result<Box<dyn Write>, CliError> {
    match &cfg.output.path {
        None => Ok(Box::new(std::io::BufWriter::new(std::io::stdout()))),
        Some(p) => {
            let f = std::fs::File::create(p).map_err(|source| CliError::Io { path: p.clone(), source })?;
            Ok(Box::new(std::io::BufWriter::new(f)))
        }
    }
}

fn io_err(cfg: &RunConfig) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: cfg.output.path.clone().unwrap_or_else(|| "<stdout>".into()), source }
}

fn catalog_json() -> Value {
    Value::Array(
        Family::ALL
            .iter()
            .map(|f| {
                json!({
                    "name": f.name(),
                    "description": f.description(),
                    "parameters": f.parameters(),
                    "dressed": f.is_dressed(),
                    "stationary": f.stationary().name(),
                    "normalizable": f.is_normalizable(),
                    "axis_singular": f.axis_singular(),
                })
            })
            .collect(),
    )
}

fn catalog_text() -> String {
    let mut s = String::new();
    for f in Family::ALL {
        s.push_str(&format!("{:<26} {}\n{:<26} parameters: {}\n", f.name(), f.description(), "", f.parameters().join(", ")));
    }
    s
}

fn cmd_catalog(json: bool) -> Result<u8, CliError> {
    let out = if json { serde_json::to_string_pretty(&catalog_json()).expect("static json") + "\n" } else { catalog_text() };
    std::io::stdout().write_all(out.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
    Ok(0)
}

const EVAL_COLUMNS: [&str; N_COLUMNS] = [
    "t", "x", "y", "z", "re_psi1", "im_psi1", "re_psi2", "im_psi2", "re_psi3", "im_psi3", "re_psi4", "im_psi4", "j0", "j1", "j2",
    "j3", "ea0", "ea1", "ea2", "ea3", "ee_x", "ee_y", "ee_z", "eb_x", "eb_y", "eb_z", "rho", "beta",
];
const N_COLUMNS: usize = 28;

fn eval_row(sol: &Solution, x: &SpacetimePoint, u: &Units) -> Result<[f64; N_COLUMNS], RdiError> {
    let psi = sol.spinor(x);
    let (j, rho, beta) = match observables(&psi) {
        Ok(o) => (o.current.0, o.rho, o.beta),
        Err(RdiError::NullDensity) => ([0.0; 4], 0.0, f64::NAN),
        Err(e) => return Err(e),
    };
    let a = sol.potential(x)?;
    let f = sol.fields(x)?;
    let sd = u.density().sqrt();
    let mut row = [0.0; N_COLUMNS];
    row[0] = x[0] * u.time();
    for k in 1..4 {
        row[k] = x[k] * u.length();
    }
    for k in 0..4 {
        row[4 + 2 * k] = psi.psi[k].re * sd;
        row[5 + 2 * k] = psi.psi[k].im * sd;
    }
    row[12] = j[0] * u.density();
    for k in 1..4 {
        row[12 + k] = j[k] * u.density() * u.c;
    }
    row[16] = a.0[0] * u.energy();
    for k in 1..4 {
        row[16 + k] = a.0[k] * u.momentum();
    }
    for k in 0..3 {
        row[20 + k] = f.e[k] * u.force();
        row[23 + k] = f.b[k] * u.momentum_per_length();
    }
    row[26] = rho * u.density();
    row[27] = beta;
    // −0 and +0 print differently; adding +0 folds them so that
    // equal states give identical files.
    Ok(row.map(|v| v + 0.0))
}

fn cmd_eval(cfg: &RunConfig) -> Result<u8, CliError> {
    let spec = config::build_spec(&cfg.solution)?;
    let sol = Solution::new(spec)?;
    let g = &cfg.grid;
    for (name, axis) in [("x", g.x), ("y", g.y), ("z", g.z)] {
        if axis.count == 0 || !axis.lo.is_finite() || !axis.hi.is_finite() {
            return Err(CliError::Usage(format!("grid axis {name} is empty or not finite")));
        }
    }
    let mut points = Vec::new();
    for &x in &g.x.values() {
        for &y in &g.y.values() {
            for &z in &g.z.values() {
                points.push([g.t, x, y, z]);
            }
        }
    }
    let singular = spec.family.axis_singular();
    let dressing = sol.dressing();
    let units = units_of(cfg);
    let rows: Vec<Option<[f64; N_COLUMNS]>> = points
        .par_iter()
        .map(|p| {
            if singular {
                let s = dressing.map(|d| d.shifted(p)).unwrap_or(*p);
                let r = s[1].hypot(s[2]);
                if r == 0.0 && g.axis_radius == 0.0 {
                    return Err(RdiError::OnAxis);
                }
                if r <= g.axis_radius {
                    return Ok(None);
                }
            }
            eval_row(&sol, p, &units).map(Some)
        })
        .collect::<Result<_, _>>()?;
    let skipped = rows.iter().filter(|r| r.is_none()).count();
    if skipped > 0 {
        eprintln!("{skipped} grid points within {} of the axis skipped", g.axis_radius);
    }

    let header = header(cfg);
    let mut out = open_output(cfg)?;
    let io = io_err(cfg);
    let cols = &EVAL_COLUMNS;
    match cfg.output.format {
        Format::Csv => {
            writeln!(out, "# {}", header).map_err(&io)?;
            let mut w = csv::Writer::from_writer(out);
            w.write_record(cols).map_err(|e| io(e.into()))?;
            for row in rows.iter().flatten() {
                w.write_record(row.iter().map(|v| v.to_string())).map_err(|e| io(e.into()))?;
            }
            w.flush().map_err(&io)?;
        }
        Format::Jsonl => {
            writeln!(out, "{}", header).map_err(&io)?;
            for row in rows.iter().flatten() {
                let fields: Vec<String> =
                    cols.iter().zip(row).map(|(c, v)| format!("\"{c}\":{}", serde_json::to_string(v).expect("f64"))).collect();
                writeln!(out, "{{{}}}", fields.join(",")).map_err(&io)?;
            }
            out.flush().map_err(&io)?;
        }
    }
    Ok(0)
}

const RECORD_COLUMNS: [&str; 11] =
    ["check", "solution", "grid", "points", "excluded", "max_residual", "tolerance", "bound", "pass", "richardson", "histogram"];

fn record_fields(r: &CheckRecord) -> [String; 11] {
    let bound = serde_json::to_value(r.bound).expect("bound").as_str().unwrap_or_default().to_string();
    [
        r.check.clone(),
        r.solution.clone(),
        r.grid.clone(),
        r.points.to_string(),
        r.excluded.to_string(),
        r.max_residual.to_string(),
        r.tolerance.to_string(),
        bound,
        r.pass.to_string(),
        r.richardson.map(|v| v.to_string()).unwrap_or_default(),
        r.histogram.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";"),
    ]
}

fn summary(report: &VerificationReport) -> Value {
    let failed: Vec<String> = report.failures().map(|r| format!("{} {}", r.check, r.solution)).collect();
    json!({
        "kind": "summary",
        "pass": report.pass,
        "records": report.records.len(),
        "failed": failed,
        "seed": report.seed,
        "fd": report.fd,
        "wall_clock_seconds": report.wall_clock_seconds,
    })
}

fn write_report(cfg: &RunConfig, report: &VerificationReport) -> Result<(), CliError> {
    let mut out = open_output(cfg)?;
    let io = io_err(cfg);
    match cfg.output.format {
        Format::Jsonl => {
            writeln!(out, "{}", header(cfg)).map_err(&io)?;
            for r in &report.records {
                let mut v = serde_json::to_value(r).expect("record");
                v.as_object_mut().expect("object").insert("kind".into(), "record".into());
                writeln!(out, "{v}").map_err(&io)?;
            }
            writeln!(out, "{}", summary(report)).map_err(&io)?;
            out.flush().map_err(&io)?;
        }
        Format::Csv => {
            writeln!(out, "# {}", header(cfg)).map_err(&io)?;
            writeln!(out, "# {}", summary(report)).map_err(&io)?;
            let mut w = csv::Writer::from_writer(out);
            w.write_record(RECORD_COLUMNS).map_err(|e| io(e.into()))?;
            for r in &report.records {
                w.write_record(record_fields(r)).map_err(|e| io(e.into()))?;
            }
            w.flush().map_err(&io)?;
        }
    }
    Ok(())
}

fn cmd_verify(cfg: &RunConfig) -> Result<u8, CliError> {
    let v = &cfg.verify;
    let families = config::parse_families(&v.families)?;
    let suite = SuiteConfig {
        seed: v.seed,
        points: v.points,
        fd: FdPolicy::new(cfg.grid.h, cfg.grid.fd_tolerance)?,
        checks: config::parse_checks(&v.checks)?,
        negative_control: config::parse_control(v.negative_control.as_deref())?,
        ..SuiteConfig::default()
    };
    if suite.points == 0 {
        return Err(CliError::Usage("--points must be positive".into()));
    }
    let start = std::time::Instant::now();
    let mut report = run_suite(&families, &suite)?;
    if v.timing {
        report.wall_clock_seconds = Some(start.elapsed().as_secs_f64());
    }
    write_report(cfg, &report)?;
    for r in report.failures() {
        eprintln!("FAIL {} {}: max residual {:e} vs tolerance {:e}", r.check, r.solution, r.max_residual, r.tolerance);
    }
    eprintln!("{} records, {}", report.records.len(), if report.pass { "all pass" } else { "verification failed" });
    Ok(if report.pass { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    if let Ok(n) = std::env::var("RDI_THREADS") {
        let n: usize = n.parse().map_err(|_| CliError::Usage(format!("RDI_THREADS must be a positive integer, got '{n}'")))?;
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    match cli.command {
        Command::Catalog { json } => cmd_catalog(json),
        Command::Eval(a) => {
            cfg.command = "eval".into();
            apply_solution(&mut cfg, a.solution);
            set(&mut cfg.grid.t, a.t);
            set(&mut cfg.grid.x, a.x);
            set(&mut cfg.grid.y, a.y);
            set(&mut cfg.grid.z, a.z);
            set(&mut cfg.grid.axis_radius, a.axis_radius);
            apply_output(&mut cfg, a.output);
            cmd_eval(&cfg)
        }
        Command::Verify(a) => {
            cfg.command = "verify".into();
            set(&mut cfg.verify.families, a.family);
            if !a.check.is_empty() {
                cfg.verify.checks = a.check;
            }
            set(&mut cfg.verify.points, a.points);
            set(&mut cfg.verify.seed, a.seed);
            if a.negative_control.is_some() {
                cfg.verify.negative_control = a.negative_control;
            }
            set(&mut cfg.grid.h, a.h);
            set(&mut cfg.grid.fd_tolerance, a.fd_tolerance);
            cfg.verify.timing |= a.timing;
            apply_output(&mut cfg, a.output);
            cmd_verify(&cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::UnknownFamily(_) = e {
                eprint!("available families:\n{}", catalog_text());
            }
            ExitCode::from(e.exit_code())
        }
    }
}
