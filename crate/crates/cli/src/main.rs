use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use weno_core::harness::{
    convergence_csv, critical_point_study, similarity_csv, similarity_study, table2_csv, table2_diagnostics,
    tau_coefficient_check, SIMILARITY_AMPLITUDES,
};
use weno_core::io::{euler1d_frame, euler2d_frame, scalar_frame, write_frame_1d, write_frame_2d, OutputFormat};
use weno_core::problems::{InitialCondition, ProblemSpec};
use weno_core::solver::{advance_to_with, RunDiagnostics, Solver, StepControl};
use weno_core::{Error, SchemeConfig, SchemeKind};

const EXIT_BLOW_UP: u8 = 3;
const EXIT_USAGE: u8 = 2;

fn usage(msg: String) -> anyhow::Error {
    Error::InvalidConfig(msg).into()
}

#[derive(Parser, Debug)]
#[command(name = "weno", version, about = "Fifth-order WENO finite-difference solvers and verification studies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one problem from the catalogue and write its final frame.
    Run(RunArgs),
    /// Critical-point convergence table for `f(x) = x^k exp(x)`.
    Converge(ConvergeArgs),
    /// Indicator diagnostics on the sine-with-jump profile.
    Table2 {
        #[arg(long, default_value_t = 0.02)]
        dx: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Global indicator coefficients of a unit jump.
    TauCoeffs,
    /// Amplitude-scaling study on the first advection profile.
    Similarity(SimilarityArgs),
}

#[derive(Args, Debug, Clone, Default)]
struct SchemeArgs {
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    a_const: Option<f64>,
    #[arg(long)]
    gamma1: Option<f64>,
    #[arg(long)]
    gamma2: Option<f64>,
}

impl SchemeArgs {
    fn apply(&self, mut cfg: SchemeConfig) -> anyhow::Result<SchemeConfig> {
        if let Some(e) = self.epsilon {
            cfg = cfg.with_epsilon(e);
        }
        if let Some(q) = self.q {
            cfg = cfg.with_q(q);
        }
        if let Some(a) = self.a_const {
            cfg = cfg.with_a_const(a);
        }
        cfg = cfg.with_gammas(self.gamma1.unwrap_or(cfg.gamma1), self.gamma2.unwrap_or(cfg.gamma2));
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args, Debug, Clone, Default)]
struct RunArgs {
    #[arg(long)]
    problem: Option<String>,
    /// js | z | za | zn | d | a
    #[arg(long)]
    scheme: Option<String>,
    #[command(flatten)]
    params: SchemeArgs,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    /// Use the reduced desk-scale grid instead of the full one.
    #[arg(long)]
    desk: bool,
    /// Reconstruct 2D split fluxes in characteristic fields.
    #[arg(long)]
    characteristic: bool,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    tend: Option<f64>,
    /// Amplitude divisor of the first advection profile.
    #[arg(long)]
    amplitude: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv | grid-text | grid-bin
    #[arg(long)]
    format: Option<String>,
    /// Number of evenly spaced intermediate frames.
    #[arg(long)]
    snapshots: Option<usize>,
    /// `key = value` file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    #[arg(long, short)]
    k: u32,
    #[arg(long, value_delimiter = ',', default_value = "z,za,zn")]
    schemes: Vec<String>,
    #[arg(long, default_value_t = 8)]
    levels: usize,
    #[command(flatten)]
    params: SchemeArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SimilarityArgs {
    #[arg(long, value_delimiter = ',', default_value = "zn,d")]
    schemes: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    amplitudes: Option<Vec<f64>>,
    #[arg(long, default_value_t = 200)]
    nx: usize,
    #[arg(long, default_value_t = 6.0)]
    tend: f64,
    #[command(flatten)]
    params: SchemeArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Fully resolved `run` configuration.
#[derive(Debug, Clone)]
struct RunConfig {
    problem: ProblemSpec,
    scheme: SchemeConfig,
    nx: usize,
    ny: usize,
    cfl: f64,
    t_end: f64,
    out: PathBuf,
    format: OutputFormat,
    snapshots: usize,
    characteristic: bool,
}

fn parse_config_file(path: &Path) -> anyhow::Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut map = HashMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(usage(format!("{}:{}: expected key = value", path.display(), n + 1)));
        };
        map.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(map)
}

fn merge_config(mut args: RunArgs) -> anyhow::Result<RunArgs> {
    let Some(path) = args.config.clone() else { return Ok(args) };
    let map = parse_config_file(&path)?;
    fn fill<T: std::str::FromStr>(slot: &mut Option<T>, map: &HashMap<String, String>, key: &str) -> anyhow::Result<()>
    where
        T::Err: std::fmt::Display,
    {
        if slot.is_none() {
            if let Some(v) = map.get(key) {
                *slot = Some(v.parse().map_err(|e| usage(format!("config key `{key}`: {e}")))?);
            }
        }
        Ok(())
    }
    fill(&mut args.problem, &map, "problem")?;
    fill(&mut args.scheme, &map, "scheme")?;
    fill(&mut args.params.epsilon, &map, "epsilon")?;
    fill(&mut args.params.q, &map, "q")?;
    fill(&mut args.params.a_const, &map, "a-const")?;
    fill(&mut args.params.gamma1, &map, "gamma1")?;
    fill(&mut args.params.gamma2, &map, "gamma2")?;
    fill(&mut args.nx, &map, "nx")?;
    fill(&mut args.ny, &map, "ny")?;
    fill(&mut args.cfl, &map, "cfl")?;
    fill(&mut args.tend, &map, "tend")?;
    fill(&mut args.amplitude, &map, "amplitude")?;
    fill(&mut args.out, &map, "out")?;
    fill(&mut args.format, &map, "format")?;
    fill(&mut args.snapshots, &map, "snapshots")?;
    if !args.desk {
        args.desk = map.get("desk").is_some_and(|v| v == "true");
    }
    if !args.characteristic {
        args.characteristic = map.get("characteristic").is_some_and(|v| v == "true");
    }
    let known = [
        "problem", "scheme", "epsilon", "q", "a-const", "gamma1", "gamma2", "nx", "ny", "cfl", "tend", "amplitude",
        "out", "format", "snapshots", "desk", "characteristic",
    ];
    if let Some(k) = map.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(usage(format!("{}: unknown key `{k}`", path.display())));
    }
    Ok(args)
}

fn scheme_from(id: &str, params: &SchemeArgs) -> anyhow::Result<SchemeConfig> {
    let kind: SchemeKind = id.parse()?;
    params.apply(SchemeConfig::new(kind))
}

fn resolve(args: RunArgs) -> anyhow::Result<RunConfig> {
    let args = merge_config(args)?;
    let Some(problem_id) = args.problem.as_deref() else {
        return Err(usage("--problem is required".into()));
    };
    let problem = ProblemSpec::by_id(problem_id, args.amplitude)?;
    let scheme = scheme_from(args.scheme.as_deref().unwrap_or("zn"), &args.params)?;
    let (dnx, dny) = if args.desk { problem.desk_grid } else { problem.default_grid };
    let nx = args.nx.unwrap_or(dnx);
    let ny = if problem.is_2d() { args.ny.unwrap_or(dny) } else { 1 };
    if nx == 0 || ny == 0 {
        return Err(usage("grid sizes must be positive".into()));
    }
    let cfl = args.cfl.unwrap_or(0.5);
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(usage(format!("cfl must lie in (0, 1], got {cfl}")));
    }
    let t_end = args.tend.unwrap_or(problem.t_end);
    if !(t_end > 0.0) {
        return Err(usage("tend must be positive".into()));
    }
    let format = match &args.format {
        Some(f) => f.parse()?,
        None if problem.is_2d() => OutputFormat::GridText,
        None => OutputFormat::Csv,
    };
    if problem.is_2d() == (format == OutputFormat::Csv) {
        return Err(usage(format!("format {format:?} does not fit a {} problem", if problem.is_2d() { "2D" } else { "1D" })));
    }
    let ext = match format {
        OutputFormat::Csv => "csv",
        OutputFormat::GridText => "vtk",
        OutputFormat::GridBin => "bin",
    };
    let out = args.out.unwrap_or_else(|| PathBuf::from(format!("{}-{}.{ext}", problem.id, scheme.kind)));
    if args.characteristic && !problem.is_2d() {
        return Err(usage("--characteristic applies to 2D problems only".into()));
    }
    Ok(RunConfig {
        problem,
        scheme,
        nx,
        ny,
        cfl,
        t_end,
        out,
        format,
        snapshots: args.snapshots.unwrap_or(0),
        characteristic: args.characteristic,
    })
}

fn snapshot_path(out: &Path, k: usize) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("frame");
    let name = match out.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}-{k:04}.{ext}"),
        None => format!("{stem}-{k:04}"),
    };
    out.with_file_name(name)
}

/// Advances through the snapshot times, writing a frame at each, and
/// returns the combined diagnostics.
fn run_segments<S: Solver>(
    solver: &S,
    mut field: S::Field,
    cfg: &RunConfig,
    mut write: impl FnMut(&S::Field, f64, &Path) -> weno_core::Result<()>,
) -> weno_core::Result<RunDiagnostics> {
    let segments = cfg.snapshots.max(1);
    let mut total = RunDiagnostics { min_rho: f64::INFINITY, min_p: f64::INFINITY, ..Default::default() };
    let mut t = 0.0;
    for k in 1..=segments {
        let t_next = if k == segments { cfg.t_end } else { cfg.t_end * k as f64 / segments as f64 };
        let (next, d) = advance_to_with(solver, field, t, t_next, StepControl::Cfl(cfg.cfl), |_, _, _| Ok(()))?;
        field = next;
        t = t_next;
        total.steps += d.steps;
        total.t = d.t;
        total.min_rho = total.min_rho.min(d.min_rho);
        total.min_p = total.min_p.min(d.min_p);
        total.wall_time += d.wall_time;
        if k < segments {
            write(&field, t, &snapshot_path(&cfg.out, k))?;
        }
    }
    write(&field, t, &cfg.out)?;
    Ok(total)
}

fn meta_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn cmd_run(args: RunArgs) -> anyhow::Result<ExitCode> {
    let cfg = resolve(args)?;
    let spec = &cfg.problem;
    let result = match &spec.ic {
        InitialCondition::Scalar(_) => {
            let (solver, field) = spec.scalar_setup(cfg.nx, cfg.scheme)?;
            let amplitude = spec.amplitude;
            run_segments(&solver, field, &cfg, |f, t, path| {
                let mut frame = scalar_frame(f, t);
                if let Some(a) = amplitude {
                    frame.names.push("u_times_amplitude".into());
                    frame.columns.push(frame.columns[0].iter().map(|v| v * a).collect());
                }
                write_frame_1d(&frame, path)
            })
        }
        InitialCondition::Euler1D(_) => {
            let (solver, field) = spec.euler1d_setup(cfg.nx, cfg.scheme)?;
            let gas = solver.gas;
            run_segments(&solver, field, &cfg, |f, t, path| write_frame_1d(&euler1d_frame(f, &gas, t)?, path))
        }
        InitialCondition::Euler2D(_) => {
            let (solver, field) = spec.euler2d_setup(cfg.nx, cfg.ny, cfg.scheme)?;
            let solver = solver.with_characteristic(cfg.characteristic);
            let gas = solver.gas;
            let format = cfg.format;
            run_segments(&solver, field, &cfg, |f, t, path| write_frame_2d(&euler2d_frame(f, &gas, t)?, path, format))
        }
    };
    let mut meta = json!({
        "problem": spec.id,
        "scheme": cfg.scheme,
        "nx": cfg.nx,
        "ny": cfg.ny,
        "cfl": cfg.cfl,
        "characteristic": cfg.characteristic,
        "t_end": cfg.t_end,
        "amplitude": spec.amplitude,
        "output": cfg.out,
    });
    let code = match result {
        Ok(diag) => {
            meta["status"] = json!("completed");
            meta["diagnostics"] = serde_json::to_value(&diag)?;
            eprintln!(
                "{} ({}) {}x{}: {} steps to t = {}, min rho {:.4e}, min p {:.4e}, {:.2} s",
                spec.id, cfg.scheme.kind, cfg.nx, cfg.ny, diag.steps, diag.t, diag.min_rho, diag.min_p, diag.wall_time
            );
            ExitCode::SUCCESS
        }
        Err(Error::NonphysicalState(s)) => {
            meta["status"] = json!("blow-up");
            meta["report"] = json!({
                "rho": s.rho,
                "pressure": s.pressure,
                "index": s.index,
                "step": s.step,
                "time": s.time,
            });
            eprintln!("blow-up: {s}");
            ExitCode::from(EXIT_BLOW_UP)
        }
        Err(e) => return Err(e.into()),
    };
    let path = meta_path(&cfg.out);
    std::fs::write(&path, serde_json::to_string_pretty(&meta)?).with_context(|| format!("writing {}", path.display()))?;
    Ok(code)
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_converge(args: ConvergeArgs) -> anyhow::Result<ExitCode> {
    if args.schemes.iter().all(|s| s.trim().is_empty()) {
        return Err(usage("at least one scheme is required".into()));
    }
    let mut columns = Vec::new();
    for id in &args.schemes {
        let cfg = scheme_from(id.trim(), &args.params)?;
        columns.push((cfg.kind.label().to_string(), critical_point_study(args.k, &cfg, args.levels)?));
    }
    emit(&convergence_csv(&columns), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_similarity(args: SimilarityArgs) -> anyhow::Result<ExitCode> {
    if args.schemes.iter().all(|s| s.trim().is_empty()) {
        return Err(usage("at least one scheme is required".into()));
    }
    let schemes = args.schemes.iter().map(|id| scheme_from(id.trim(), &args.params)).collect::<anyhow::Result<Vec<_>>>()?;
    let amplitudes = args.amplitudes.unwrap_or_else(|| SIMILARITY_AMPLITUDES.to_vec());
    let report = similarity_study(&schemes, &amplitudes, args.nx, args.tend)?;
    emit(&similarity_csv(&report), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Converge(args) => cmd_converge(args),
        Command::Table2 { dx, out } => emit(&table2_csv(&table2_diagnostics(dx)), out.as_deref()).map(|_| ExitCode::SUCCESS),
        Command::TauCoeffs => {
            let c = tau_coefficient_check();
            println!("indicator,gap0,gap1,gap2,gap3");
            println!("tau5,{},{},{},{}", c.tau5[0], c.tau5[1], c.tau5[2], c.tau5[3]);
            println!("tau8,{},{},{},{}", c.tau8[0], c.tau8[1], c.tau8[2], c.tau8[3]);
            Ok(if c.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Similarity(args) => cmd_similarity(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Error>().is_some_and(|e| matches!(e, Error::InvalidConfig(_))) {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
