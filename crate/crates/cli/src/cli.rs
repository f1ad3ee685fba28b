//! Command-line grammar and dispatch.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use hypmetric_core::conformal::{linear_dilatation, MapSpec, DEFAULT_DIRECTIONS, DEFAULT_RADII};
use hypmetric_core::harness::{evaluate_metric, registry, SolverConfigs, Verdict};
use hypmetric_core::quasihyperbolic::{GeodesicGraphConfig, Stencil};
use hypmetric_core::special::{h_delta_check, nonlinearity_delta_estimate, strip_constant, R_CAP};
use hypmetric_core::{s_oracle, v_oracle, Domain, MetricKind, Point};

use crate::report::{emit_report, fmt_sig, Format};
use crate::spec::{parse_domain, parse_map, parse_point};
use crate::suite::{run_suite, RunConfig, Suite};

fn case_list() -> String {
    let ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
    format!("Registry cases (usable as `verify --suite <id>`):\n  {}", ids.join("\n  "))
}

#[derive(Debug, Parser)]
#[command(
    name = "hypmetric",
    version,
    about = "Hyperbolic-type metrics on Euclidean domains and checks of the inequalities between them",
    after_help = case_list()
)]
pub struct Cli {
    /// Worker threads for verification runs (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one metric on one pair of points.
    Dist(DistArgs),
    /// Run a verification suite or a single registry case.
    #[command(after_help = case_list())]
    Verify(VerifyArgs),
    /// Print a named constant.
    Constant { name: ConstantName },
    /// Estimate the linear dilatation of a map at a point.
    Dilatation(DilatationArgs),
    /// Empirical nonlinearity constant of a planar domain.
    EstimateDelta(EstimateDeltaArgs),
    /// Check the exterior-ball condition at random boundary points.
    CheckHdelta(CheckHdeltaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstantName {
    /// `inf v/p` over the strip pair family.
    #[value(name = "strip-C")]
    StripC,
    /// `1/th(3 log 1.5)`, the constant of the `s ≤ c·th(3k)` bound.
    #[value(name = "c-half")]
    CHalf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StencilArg {
    #[value(name = "8")]
    Eight,
    #[value(name = "16")]
    Sixteen,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Grid cells across the working box of the k solver.
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Refinement levels of the k solver.
    #[arg(long)]
    pub refine: Option<usize>,
    #[arg(long)]
    pub stencil: Option<StencilArg>,
}

impl SolverArgs {
    fn apply(&self, base: SolverConfigs) -> SolverConfigs {
        let mut c = base;
        let g: &mut GeodesicGraphConfig = &mut c.geodesic;
        if let Some(r) = self.resolution {
            g.base_resolution = r;
        }
        if let Some(l) = self.refine {
            g.refinement_levels = l;
        }
        if let Some(s) = self.stencil {
            g.neighbor_stencil = match s {
                StencilArg::Eight => Stencil::Eight,
                StencilArg::Sixteen => Stencil::Sixteen,
            };
        }
        c
    }

    fn describe(c: &SolverConfigs) -> String {
        let stencil = match c.geodesic.neighbor_stencil {
            Stencil::Eight => 8,
            Stencil::Sixteen => 16,
        };
        format!(
            "resolution={} refine={} stencil={}",
            c.geodesic.base_resolution, c.geodesic.refinement_levels, stencil
        )
    }
}

fn domain_arg(s: &str) -> Result<Domain, String> {
    parse_domain(s).map_err(|e| e.to_string())
}

fn point_arg(s: &str) -> Result<Point, String> {
    parse_point(s).map_err(|e| e.to_string())
}

fn map_arg(s: &str) -> Result<MapSpec, String> {
    parse_map(s).map_err(|e| e.to_string())
}

fn metric_arg(s: &str) -> Result<MetricKind, String> {
    MetricKind::from_name(s).ok_or_else(|| format!("unknown metric `{s}` (rho, j, jstar, k, s, v, p)"))
}

#[derive(Debug, Clone, Args)]
pub struct DistArgs {
    #[arg(long, value_parser = domain_arg)]
    pub domain: Domain,
    #[arg(long, value_parser = metric_arg)]
    pub metric: MetricKind,
    #[arg(long, value_parser = point_arg, allow_hyphen_values = true)]
    pub x: Point,
    #[arg(long, value_parser = point_arg, allow_hyphen_values = true)]
    pub y: Point,
    /// Also report the brute-force grid value with this many boundary points
    /// per piece (s and v only).
    #[arg(long)]
    pub grid: Option<usize>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// all, section2, section3, section4, sharpness, or a registry case id.
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Number of consecutive seeds starting at `--seed`.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    /// Run registry cases on this domain instead of the standard corpus.
    #[arg(long, value_parser = domain_arg)]
    pub domain: Option<Domain>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; inferred from the `--out` extension when omitted.
    #[arg(long)]
    pub format: Option<Format>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DilatationArgs {
    #[arg(long, value_parser = map_arg)]
    pub map: MapSpec,
    #[arg(long, value_parser = point_arg, allow_hyphen_values = true)]
    pub z: Point,
    #[arg(long, default_value_t = DEFAULT_DIRECTIONS)]
    pub directions: usize,
    /// Comma-separated sphere radii, largest first.
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct EstimateDeltaArgs {
    #[arg(long, value_parser = domain_arg)]
    pub domain: Domain,
    #[arg(long, default_value_t = 2000)]
    pub trials: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct CheckHdeltaArgs {
    #[arg(long, value_parser = domain_arg)]
    pub domain: Domain,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Radius cap for unbounded domains.
    #[arg(long, default_value_t = R_CAP)]
    pub r_cap: f64,
}

/// What a command produced, mapped to the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Failed,
}

fn coords(p: &Point) -> String {
    p.coords().iter().map(|c| fmt_sig(*c)).collect::<Vec<_>>().join(",")
}

fn dist(a: &DistArgs, out: &mut (dyn Write + Send)) -> anyhow::Result<Outcome> {
    let n = a.domain.dim();
    for (flag, p) in [("--x", &a.x), ("--y", &a.y)] {
        p.ensure_dim(n)
            .with_context(|| format!("{flag}: point has dimension {}, domain {} has {n}", p.dim(), a.domain))?;
    }
    let cfgs = a.solver.apply(SolverConfigs::default());
    writeln!(
        out,
        "# dist domain={} metric={} x={} y={} {}",
        a.domain,
        a.metric,
        coords(&a.x),
        coords(&a.y),
        SolverArgs::describe(&cfgs)
    )?;
    let m = evaluate_metric(a.metric, &a.domain, &a.x, &a.y, &cfgs)?;
    writeln!(out, "{}", fmt_sig(m.value))?;
    if m.error_bound > 0.0 {
        writeln!(out, "# error_bound={}", fmt_sig(m.error_bound))?;
    }
    if let Some(grid) = a.grid {
        let oracle = match a.metric {
            MetricKind::S => s_oracle(&a.domain, &a.x, &a.y, grid)?,
            MetricKind::V => v_oracle(&a.domain, &a.x, &a.y, grid)?,
            other => anyhow::bail!("--grid applies to s and v, not {other}"),
        };
        writeln!(out, "# oracle grid={grid} value={}", fmt_sig(oracle))?;
    }
    Ok(Outcome::Ok)
}

fn verify(a: &VerifyArgs, out: &mut (dyn Write + Send)) -> anyhow::Result<Outcome> {
    let cfgs = a.solver.apply(SolverConfigs::harness());
    let seeds: Vec<u64> = (0..a.seeds.max(1)).map(|i| a.seed.wrapping_add(i)).collect();
    let format = a
        .format
        .unwrap_or_else(|| a.out.as_deref().map_or(Format::Json, Format::from_path));
    writeln!(
        out,
        "# verify suite={} samples={} seed={} seeds={} domain={} format={} {}",
        a.suite,
        a.samples,
        a.seed,
        a.seeds.max(1),
        a.domain.as_ref().map_or("corpus".into(), |g| g.to_string()),
        format,
        SolverArgs::describe(&cfgs)
    )?;
    let run = RunConfig {
        samples: a.samples,
        seeds,
        cfgs,
        domain: a.domain.clone(),
    };
    let reports = run_suite(&a.suite, &run)?;
    for r in &reports {
        writeln!(
            out,
            "{} {} domain={} samples={} seed={} max_violation={}",
            r.verdict.as_str().to_uppercase(),
            r.case,
            r.domain,
            r.samples,
            r.seed,
            fmt_sig(r.max_violation)
        )?;
    }
    let failed = reports.iter().filter(|r| r.verdict == Verdict::Fail).count();
    writeln!(out, "# {} reports, {} failed", reports.len(), failed)?;
    if let Some(path) = &a.out {
        emit_report(&reports, format, path).with_context(|| format!("--out: cannot write {}", path.display()))?;
    }
    Ok(if failed == 0 { Outcome::Ok } else { Outcome::Failed })
}

fn constant(name: ConstantName, out: &mut (dyn Write + Send)) -> anyhow::Result<Outcome> {
    let v = match name {
        ConstantName::StripC => strip_constant(),
        ConstantName::CHalf => hypmetric_core::harness::registry::c_half(),
    };
    writeln!(out, "{}", fmt_sig(v))?;
    Ok(Outcome::Ok)
}

fn dilatation(a: &DilatationArgs, out: &mut (dyn Write + Send)) -> anyhow::Result<Outcome> {
    let radii = a.radii.clone().unwrap_or_else(|| DEFAULT_RADII.to_vec());
    writeln!(
        out,
        "# dilatation map={} z={} directions={} radii={}",
        a.map.label(),
        coords(&a.z),
        a.directions,
        radii.iter().map(|r| fmt_sig(*r)).collect::<Vec<_>>().join(",")
    )?;
    let est = linear_dilatation(&a.map, &a.z, &radii, a.directions)?;
    for (r, q) in est.radii.iter().zip(&est.ratios) {
        writeln!(out, "# r={} ratio={}", fmt_sig(*r), fmt_sig(*q))?;
    }
    writeln!(out, "{}", fmt_sig(est.h))?;
    if !est.converged {
        writeln!(out, "# warning: ratios did not settle as r decreased")?;
    }
    Ok(Outcome::Ok)
}

fn estimate_delta(a: &EstimateDeltaArgs, out: &mut (dyn Write + Send)) -> anyhow::Result<Outcome> {
    writeln!(out, "# estimate-delta domain={} trials={} seed={}", a.domain, a.trials, a.seed)?;
    let est = nonlinearity_delta_estimate(&a.domain, a.trials, a.seed)?;
    writeln!(out, "{}", fmt_sig(est.delta))?;
    writeln!(out, "# min boundary samples per ball={}", est.min_samples)?;
    Ok(Outcome::Ok)
}

fn check_hdelta(a: &CheckHdeltaArgs, out: &mut (dyn Write + Send)) -> anyhow::Result<Outcome> {
    writeln!(
        out,
        "# check-hdelta domain={} delta={} trials={} seed={} r_cap={}",
        a.domain,
        fmt_sig(a.delta),
        a.trials,
        a.seed,
        fmt_sig(a.r_cap)
    )?;
    let draws = h_delta_check(&a.domain, a.delta, a.trials, a.seed, a.r_cap)?;
    let fails: Vec<_> = draws.iter().filter(|w| w.outcome == Verdict::Fail).collect();
    for w in fails.iter().take(10) {
        writeln!(out, "FAIL z={} r={} margin={}", coords(&w.z), fmt_sig(w.r), fmt_sig(w.margin))?;
    }
    let worst = draws.iter().map(|w| w.margin).fold(f64::INFINITY, f64::min);
    writeln!(out, "{} of {} trials failed; smallest margin {}", fails.len(), draws.len(), fmt_sig(worst))?;
    Ok(if fails.is_empty() { Outcome::Ok } else { Outcome::Failed })
}

/// Runs a parsed command, writing human-readable output to `out`.
pub fn execute(cli: &Cli, out: &mut (dyn Write + Send)) -> anyhow::Result<Outcome> {
    let work = |out: &mut (dyn Write + Send)| match &cli.command {
        Command::Dist(a) => dist(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Constant { name } => constant(*name, out),
        Command::Dilatation(a) => dilatation(a, out),
        Command::EstimateDelta(a) => estimate_delta(a, out),
        Command::CheckHdelta(a) => check_hdelta(a, out),
    };
    match cli.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .context("--threads: cannot build the worker pool")?;
            pool.install(|| work(out))
        }
        None => work(out),
    }
}

/// Entry point: exit 0 on success, 1 when a check fails, 2 on usage or
/// runtime errors.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli, &mut std::io::stdout()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        // a closed stdout (`| head`) is not worth an error message
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
