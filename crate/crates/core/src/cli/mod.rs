//! Command-line front end.
//!
//! Each subcommand writes one table (CSV or JSON) to `--output`, or to stdout
//! when no path is given. A file output is accompanied by
//! `<output>.manifest.json`, recording the arguments, the parsed
//! configuration, the crate version, a timestamp, the wall time and a short
//! summary (evaluation counts, fitted slopes, interval endpoints). Running the
//! recorded `argv` again reproduces the artifact byte for byte.
//!
//! Exit status: 0 on success, 2 for usage errors, 3 when a value is rejected
//! by the numerical routines, 4 for I/O failures.

mod output;

use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::analysis::{convergence_order, efficiency_sweep, AnalyticProblem};
use crate::integrator::NfeCounting;
use crate::methods::{coefficients, phase_lag, MethodId};
use crate::schrodinger::{
    integrate_radial, phase_shift, resonance, scan_resonances, RadialProblem, E1_REFERENCE,
    E3_REFERENCE,
};
use crate::stability::scan_plane;

pub use output::{float, Format, Table, Value};

/// Default grid counts for the efficiency sweep around the lower resonance.
pub const E1_STEPS: [u64; 5] = [500, 750, 1000, 1500, 2000];
/// Default grid counts around the upper resonance, which needs finer grids
/// before every method brackets it.
pub const E3_STEPS: [u64; 5] = [1500, 1750, 2000, 2500, 3000];
/// Default step sizes of the convergence study.
pub const CONVERGENCE_STEPS: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{flag}: {message}")]
    Invalid { flag: &'static str, message: String },
    #[error(transparent)]
    Numerical(#[from] crate::Error),
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Invalid { .. } | CliError::Numerical(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// u0 = -50, a = 0.6, X0 = 7, l = 0 on [0, 15].
    #[default]
    WoodsSaxon,
}

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "phasefit",
    version,
    about = "Phase-fitted hybrid Numerov-type methods"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the artifact here (and a manifest next to it); stdout otherwise.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Worker threads for sweeps (defaults to all cores).
    #[arg(long, env = "PHASEFIT_JOBS", global = true)]
    pub jobs: Option<usize>,

    /// How right-hand-side evaluations are counted.
    #[arg(long, default_value = "per-new-node", global = true)]
    pub counting: NfeCounting,

    #[arg(long, value_enum, default_value_t = Preset::WoodsSaxon, global = true)]
    pub preset: Preset,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum Command {
    /// Integrate the radial equation at one energy; rows are (x, y).
    Integrate(IntegrateArgs),
    /// Locate one resonance inside a bracket.
    Resonance(ResonanceArgs),
    /// Locate every resonance in an energy range.
    ScanResonances(ScanArgs),
    /// Classify the (s, H) plane.
    StabilityMap(StabilityArgs),
    /// Observed order of convergence on y'' = -omega^2 y.
    Convergence(ConvergenceArgs),
    /// Energy error against cost around a reference resonance.
    Efficiency(EfficiencyArgs),
    /// Coefficient values at one H.
    Coefficients(CoefficientArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct Grid {
    /// Step size.
    #[arg(long, conflicts_with = "n", allow_negative_numbers = true)]
    pub h: Option<f64>,
    /// Number of steps across [0, x_max]; used when --h is absent.
    #[arg(long)]
    pub n: Option<u64>,
    /// Angular momentum quantum number.
    #[arg(long, default_value_t = 0)]
    pub l: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct IntegrateArgs {
    #[arg(long)]
    pub method: MethodId,
    #[arg(long, allow_negative_numbers = true)]
    pub energy: f64,
    #[command(flatten)]
    pub grid: Grid,
}

#[derive(Debug, Args, Serialize)]
pub struct ResonanceArgs {
    #[arg(long)]
    pub method: MethodId,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], required = true, allow_negative_numbers = true)]
    pub bracket: Vec<f64>,
    #[arg(long, default_value_t = 1e-6, allow_negative_numbers = true)]
    pub tol: f64,
    #[command(flatten)]
    pub grid: Grid,
}

#[derive(Debug, Args, Serialize)]
pub struct ScanArgs {
    #[arg(long)]
    pub method: MethodId,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [1.0, 1000.0], allow_negative_numbers = true)]
    pub range: Vec<f64>,
    /// Resolution of the coarse scan.
    #[arg(long, default_value_t = crate::schrodinger::SCAN_STEP)]
    pub step: f64,
    #[arg(long, default_value_t = 1e-6, allow_negative_numbers = true)]
    pub tol: f64,
    #[command(flatten)]
    pub grid: Grid,
}

#[derive(Debug, Args, Serialize)]
pub struct StabilityArgs {
    #[arg(long)]
    pub method: MethodId,
    /// Grid points per axis.
    #[arg(long, default_value_t = 500)]
    pub n: usize,
    #[arg(long, default_value_t = 10.0)]
    pub smax: f64,
    #[arg(long, default_value_t = 10.0)]
    pub hmax: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct ConvergenceArgs {
    #[arg(long, value_delimiter = ',', default_values_t = MethodId::ALL)]
    pub methods: Vec<MethodId>,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Frequency the coefficients are fitted at; keep it away from omega.
    #[arg(long, default_value_t = 1.3, allow_negative_numbers = true)]
    pub fit: f64,
    #[arg(long, default_value_t = 10.0 * std::f64::consts::PI)]
    pub x_end: f64,
    #[arg(long = "h", value_delimiter = ',', default_values_t = CONVERGENCE_STEPS)]
    pub h_values: Vec<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct EfficiencyArgs {
    #[arg(long, value_delimiter = ',', default_values_t = MethodId::ALL)]
    pub methods: Vec<MethodId>,
    /// `e1`, `e3` or an energy.
    #[arg(long, default_value = "e1")]
    pub target: String,
    /// Step counts across [0, x_max]; the default depends on the target.
    #[arg(long = "n", value_delimiter = ',')]
    pub steps: Vec<u64>,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct CoefficientArgs {
    #[arg(long)]
    pub method: MethodId,
    #[arg(long = "H", allow_negative_numbers = true)]
    pub h_arg: f64,
}

/// What a command produced besides its table.
struct Outcome {
    table: Table,
    summary: serde_json::Value,
}

fn positive(flag: &'static str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Invalid {
            flag,
            message: format!("must be positive and finite, got {v}"),
        })
    }
}

fn template(
    preset: Preset,
    grid: &Grid,
    energy: f64,
    default_n: u64,
) -> Result<RadialProblem, CliError> {
    let mut p = match preset {
        Preset::WoodsSaxon => RadialProblem::woods_saxon(energy, 1.0),
    };
    p.l = grid.l;
    p.h = match (grid.h, grid.n) {
        (Some(h), _) => positive("--h", h)?,
        (None, Some(0)) => {
            return Err(CliError::Invalid {
                flag: "--n",
                message: "must be at least 1".into(),
            })
        }
        (None, n) => p.x_max / n.unwrap_or(default_n) as f64,
    };
    Ok(p)
}

fn integrate_cmd(cli: &Cli, a: &IntegrateArgs) -> Result<Outcome, CliError> {
    positive("--energy", a.energy)?;
    let p = template(cli.preset, &a.grid, a.energy, 2000)?;
    let t = integrate_radial(a.method, &p)?;
    let shift = phase_shift(&t, &p)?;
    let mut table = Table::new("integrate", &["x", "y"]);
    for (x, y) in t.xs.iter().zip(&t.ys) {
        table.push(vec![(*x).into(), (*y).into()]);
    }
    Ok(Outcome {
        table,
        summary: json!({
            "h": p.h,
            "nfe": t.nfe(cli.counting),
            "tan_delta": shift.tan_delta,
            "delta": shift.delta,
        }),
    })
}

fn resonance_cmd(cli: &Cli, a: &ResonanceArgs) -> Result<Outcome, CliError> {
    let (lo, hi) = (a.bracket[0], a.bracket[1]);
    if !(lo < hi) {
        return Err(CliError::Invalid {
            flag: "--bracket",
            message: format!("needs LO < HI, got {lo} {hi}"),
        });
    }
    positive("--tol", a.tol)?;
    let p = template(cli.preset, &a.grid, 0.5 * (lo + hi), 2000)?;
    let r = resonance(a.method, &p, (lo, hi), a.tol)?;
    let mut table = Table::new(
        "resonance",
        &[
            "method",
            "E",
            "bracket_lo",
            "bracket_hi",
            "h",
            "tol",
            "integrations",
            "nfe",
            "counting",
        ],
    );
    table.push(vec![
        a.method.name().into(),
        r.energy.into(),
        r.bracket.0.into(),
        r.bracket.1.into(),
        p.h.into(),
        a.tol.into(),
        r.integrations.into(),
        r.nfe(cli.counting).into(),
        cli.counting.to_string().into(),
    ]);
    Ok(Outcome {
        table,
        summary: json!({ "nfe": r.nfe(cli.counting), "integrations": r.integrations }),
    })
}

fn scan_cmd(cli: &Cli, a: &ScanArgs) -> Result<Outcome, CliError> {
    let (lo, hi) = (a.range[0], a.range[1]);
    if !(lo > 0.0 && lo < hi) {
        return Err(CliError::Invalid {
            flag: "--range",
            message: format!("needs 0 < LO < HI, got {lo} {hi}"),
        });
    }
    positive("--step", a.step)?;
    positive("--tol", a.tol)?;
    let p = template(cli.preset, &a.grid, lo, 2000)?;
    let found = scan_resonances(a.method, &p, (lo, hi), a.step, a.tol)?;
    let mut table = Table::new(
        "scan-resonances",
        &["method", "E", "scan_lo", "scan_hi", "label"],
    );
    for c in &found {
        table.push(vec![
            a.method.name().into(),
            c.energy.into(),
            c.scan_interval.0.into(),
            c.scan_interval.1.into(),
            c.label.clone().into(),
        ]);
    }
    Ok(Outcome {
        table,
        summary: json!({ "count": found.len(), "h": p.h }),
    })
}

fn stability_cmd(a: &StabilityArgs) -> Result<Outcome, CliError> {
    positive("--smax", a.smax)?;
    positive("--hmax", a.hmax)?;
    if a.n < 2 {
        return Err(CliError::Invalid {
            flag: "--n",
            message: format!("needs at least 2 points per axis, got {}", a.n),
        });
    }
    let map = scan_plane(a.method, a.smax, a.hmax, a.n)?;
    let mut table = Table::new("stability-map", &["s", "H", "stable", "p1", "p2", "pole"]);
    for (i, &s) in map.s_grid.iter().enumerate() {
        for (j, &h) in map.h_grid.iter().enumerate() {
            table.push(vec![
                s.into(),
                h.into(),
                map.stable[i][j].into(),
                map.p1[i][j].into(),
                map.p2[i][j].into(),
                map.pole[i][j].into(),
            ]);
        }
    }
    let d = map.diagonal;
    Ok(Outcome {
        table,
        summary: json!({
            "s_star": d.s_star,
            "end": d.end,
            "interval_s2": [d.interval().0, d.interval().1],
        }),
    })
}

fn convergence_cmd(a: &ConvergenceArgs) -> Result<Outcome, CliError> {
    positive("--omega", a.omega)?;
    positive("--x-end", a.x_end)?;
    if !(a.fit >= 0.0 && a.fit.is_finite()) {
        return Err(CliError::Invalid {
            flag: "--fit",
            message: format!("must be non-negative, got {}", a.fit),
        });
    }
    let problem = AnalyticProblem::harmonic(a.omega, a.fit, a.x_end);
    let mut table = Table::new(
        "convergence",
        &["method", "h", "error", "slope", "slope_stderr"],
    );
    let mut slopes = serde_json::Map::new();
    for &m in &a.methods {
        let r = convergence_order(m, &problem, &a.h_values)?;
        for &(h, e) in &r.errors {
            table.push(vec![
                m.name().into(),
                h.into(),
                e.into(),
                r.slope.into(),
                r.slope_stderr.into(),
            ]);
        }
        slopes.insert(m.name().into(), json!(r.slope));
    }
    Ok(Outcome {
        table,
        summary: json!({ "slopes": slopes }),
    })
}

fn parse_target(s: &str) -> Result<f64, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "e1" => Ok(E1_REFERENCE),
        "e3" => Ok(E3_REFERENCE),
        other => other
            .parse::<f64>()
            .map_err(|_| CliError::Invalid {
                flag: "--target",
                message: format!("expected e1, e3 or an energy, got `{s}`"),
            })
            .and_then(|e| positive("--target", e)),
    }
}

fn efficiency_cmd(cli: &Cli, a: &EfficiencyArgs) -> Result<Outcome, CliError> {
    let target = parse_target(&a.target)?;
    let steps: Vec<u64> = if !a.steps.is_empty() {
        a.steps.clone()
    } else if (target - E3_REFERENCE).abs() < 1e-3 {
        E3_STEPS.to_vec()
    } else {
        E1_STEPS.to_vec()
    };
    if steps.contains(&0) {
        return Err(CliError::Invalid {
            flag: "--n",
            message: "step counts must be at least 1".into(),
        });
    }
    let grid = Grid {
        h: None,
        n: Some(steps[0]),
        l: a.l,
    };
    let p = template(cli.preset, &grid, target, steps[0])?;
    let hs: Vec<f64> = steps.iter().map(|&n| p.x_max / n as f64).collect();
    let curves = efficiency_sweep(&a.methods, target, &hs, &p, cli.counting)?;
    let mut table = Table::new(
        "efficiency",
        &[
            "method",
            "target",
            "reference",
            "reference_kind",
            "n",
            "h",
            "nfe",
            "counting",
            "E",
            "signed_err",
            "err",
            "log10_err",
        ],
    );
    let mut total_nfe = 0u64;
    for &m in &a.methods {
        let Some(c) = curves.get(&m) else { continue };
        let kind = serde_json::to_value(c.reference_kind).expect("enum serialises");
        for pt in &c.points {
            total_nfe += pt.nfe;
            table.push(vec![
                m.name().into(),
                c.target.into(),
                c.reference.into(),
                kind.as_str().unwrap_or_default().into(),
                pt.n.into(),
                pt.h.into(),
                pt.nfe.into(),
                cli.counting.to_string().into(),
                pt.energy.into(),
                pt.signed_err.into(),
                pt.err.into(),
                pt.log10_err().into(),
            ]);
        }
    }
    Ok(Outcome {
        table,
        summary: json!({ "nfe": total_nfe }),
    })
}

fn coefficients_cmd(a: &CoefficientArgs) -> Result<Outcome, CliError> {
    if !(a.h_arg >= 0.0 && a.h_arg.is_finite()) {
        return Err(CliError::Invalid {
            flag: "--H",
            message: format!("must be non-negative, got {}", a.h_arg),
        });
    }
    let c = coefficients(a.method, a.h_arg)?;
    let lag = phase_lag(&c, a.h_arg)?;
    let mut table = Table::new(
        "coefficients",
        &["method", "H", "a0", "b0", "b1", "c1", "phase_lag"],
    );
    table.push(vec![
        a.method.name().into(),
        a.h_arg.into(),
        c.a0.into(),
        c.b0.into(),
        c.b1.into(),
        c.c1.into(),
        lag.into(),
    ]);
    Ok(Outcome {
        table,
        summary: json!({}),
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Integrate(a) => integrate_cmd(cli, a),
        Command::Resonance(a) => resonance_cmd(cli, a),
        Command::ScanResonances(a) => scan_cmd(cli, a),
        Command::StabilityMap(a) => stability_cmd(a),
        Command::Convergence(a) => convergence_cmd(a),
        Command::Efficiency(a) => efficiency_cmd(cli, a),
        Command::Coefficients(a) => coefficients_cmd(a),
    }
}

/// Path of the manifest written next to `output`.
pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn execute(argv: &[String], cli: &Cli) -> Result<(), CliError> {
    let started = Instant::now();
    let outcome = match cli.jobs {
        Some(0) => {
            return Err(CliError::Invalid {
                flag: "--jobs",
                message: "must be at least 1".into(),
            })
        }
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?
            .install(|| dispatch(cli))?,
        None => dispatch(cli)?,
    };
    let artifact = outcome.table.render(cli.format);

    let Some(path) = &cli.output else {
        print!("{artifact}");
        return Ok(());
    };
    write(path, &artifact)?;

    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let manifest = json!({
        "program": "phasefit",
        "version": env!("CARGO_PKG_VERSION"),
        "argv": argv,
        "command": outcome.table.command,
        "config": cli,
        "counting": cli.counting,
        "columns": outcome.table.columns,
        "rows": outcome.table.rows.len(),
        "summary": outcome.summary,
        "timestamp_unix": timestamp,
        "wall_time_seconds": started.elapsed().as_secs_f64(),
    });
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serialises") + "\n";
    write(&manifest_path(path), &text)
}

/// Parses `argv` (without the program name), runs the command and returns
/// the process exit status. Diagnostics go to stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(
        std::iter::once("phasefit".to_string()).chain(argv.iter().cloned()),
    ) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&argv, &cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_line_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn targets() {
        assert_eq!(parse_target("E1").unwrap(), E1_REFERENCE);
        assert_eq!(parse_target("e3").unwrap(), E3_REFERENCE);
        assert_eq!(parse_target("341.5").unwrap(), 341.5);
        assert!(parse_target("-3").is_err());
        assert!(parse_target("nope").is_err());
    }

    #[test]
    fn manifest_sits_next_to_output() {
        assert_eq!(
            manifest_path(Path::new("/tmp/run.csv")),
            PathBuf::from("/tmp/run.csv.manifest.json")
        );
    }
}
