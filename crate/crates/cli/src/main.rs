//! `whitham-mi`: symbols, instability indices, critical wave numbers, Hill
//! spectra and stability diagrams from the command line.

mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use whitham_mi::diagrams::{self, Plane, StabilityCurve};
use whitham_mi::dispersion::{nondimensionalize, DimensionalParams, Nondimensionalized};
use whitham_mi::floquet::{self, GrowthConfig};
use whitham_mi::roots::linspace;
use whitham_mi::stability::{self, CriticalPoint, IndexReport};
use whitham_mi::waves::{expansion_wave, refine_wave};
use whitham_mi::{Branch, DispersionModel, Family};

use output::{num, opt_num, resolve_format, Format, Sink, Table};

#[derive(Parser)]
#[command(name = "whitham-mi", version, about = "Modulational instability of Whitham-equation periodic waves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the symbol m(z) and its derivatives.
    Symbol {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: ZGrid,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Instability index and its factors at one z or on a grid.
    Index {
        #[command(flatten)]
        model: ModelArgs,
        /// Single wave number; overrides the grid.
        #[arg(long)]
        z: Option<f64>,
        #[command(flatten)]
        grid: ZGrid,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Roots of the four mechanism functions.
    Critical {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0.01)]
        zmin: f64,
        #[arg(long, default_value_t = 30.0)]
        zmax: f64,
        #[arg(long, default_value_t = 30_000)]
        n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Hill's-method Bloch spectrum of a small-amplitude wave.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        wave: WaveArgs,
        /// Bloch parameters in [-1/2, 1/2), comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
        xi: Vec<f64>,
        /// Fourier truncation: modes -N..N.
        #[arg(long, default_value_t = 32)]
        nf: usize,
        /// Radius of the disc around the origin (default 10|a|).
        #[arg(long)]
        r_origin: Option<f64>,
        /// Use the asymptotic expansion instead of the refined wave.
        #[arg(long)]
        expansion: bool,
        /// Cosine modes of the refined wave (default min(nf - 2, 24)).
        #[arg(long)]
        modes: Option<usize>,
        /// Newton residual tolerance for the refined wave.
        #[arg(long, default_value_t = 1e-13)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compare the index verdict with the near-origin Hill growth.
    Check {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        wave: WaveArgs,
        #[arg(long, value_delimiter = ',', default_value = "0.002,0.005,0.01,0.025,0.05,0.1")]
        xi: Vec<f64>,
        #[arg(long, default_value_t = 32)]
        nf: usize,
        #[arg(long, default_value_t = 1e-2)]
        g_thresh: f64,
        #[arg(long, default_value_t = 0.05)]
        margin: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Mechanism-labeled curves of a stability diagram.
    Diagram {
        #[arg(long, value_enum, default_value = "capillary")]
        plane: PlaneArg,
        #[arg(long, allow_hyphen_values = true)]
        xmin: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        xmax: Option<f64>,
        #[arg(long)]
        ymin: Option<f64>,
        #[arg(long)]
        ymax: Option<f64>,
        /// Grid points per axis.
        #[arg(long, default_value_t = 300)]
        resolution: usize,
        /// Also write an SVG rendering.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Gravity,
    Capillary,
    Vorticity,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlaneArg {
    Capillary,
    Vorticity,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Bond number T/(g d^2).
    #[arg(long, conflicts_with_all = ["g", "d", "surface_tension", "gamma"])]
    tau: Option<f64>,
    /// Nondimensional vorticity gamma sqrt(d/g).
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["g", "d", "surface_tension", "gamma"])]
    varpi: Option<f64>,
    #[arg(long, value_enum, default_value = "plus")]
    branch: BranchArg,
    /// Gravitational acceleration (dimensional input).
    #[arg(long)]
    g: Option<f64>,
    /// Fluid depth (dimensional input).
    #[arg(long)]
    d: Option<f64>,
    /// Surface tension per unit density (dimensional input).
    #[arg(long = "T", id = "surface_tension")]
    surface_tension: Option<f64>,
    /// Vorticity (dimensional input).
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
}

#[derive(Args)]
struct ZGrid {
    /// First grid point (default zmax/n).
    #[arg(long)]
    zmin: Option<f64>,
    #[arg(long, default_value_t = 10.0)]
    zmax: f64,
    #[arg(long, default_value_t = 200)]
    n: usize,
}

#[derive(Args)]
struct WaveArgs {
    /// Carrier wave number kd.
    #[arg(long)]
    k: f64,
    /// Amplitude parameter.
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
}

#[derive(Args)]
struct OutArgs {
    /// Output file ("-" or absent for stdout).
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Output format (default from the file extension, else csv).
    #[arg(long, value_enum)]
    format: Option<Format>,
}

enum Failure {
    Usage(String),
    Numerical(String),
    Io(std::io::Error),
}

impl From<whitham_mi::Error> for Failure {
    fn from(e: whitham_mi::Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type CliResult<T> = Result<T, Failure>;

struct ResolvedModel {
    model: DispersionModel,
    scales: Option<(DimensionalParams, Nondimensionalized)>,
}

impl ModelArgs {
    fn resolve(&self) -> CliResult<ResolvedModel> {
        let branch = match self.branch {
            BranchArg::Plus => Branch::Plus,
            BranchArg::Minus => Branch::Minus,
        };
        let dimensional = self.g.is_some() || self.d.is_some() || self.surface_tension.is_some() || self.gamma.is_some();
        if dimensional {
            let (Some(g), Some(d)) = (self.g, self.d) else {
                return Err(Failure::Usage("dimensional input needs both --g and --d".into()));
            };
            let family = match (self.family, self.surface_tension, self.gamma) {
                (_, Some(_), Some(_)) => return Err(Failure::Usage("--T and --gamma cannot be combined".into())),
                (Some(FamilyArg::Gravity), None, None) | (None, None, None) => Family::Gravity,
                (Some(FamilyArg::Capillary) | None, Some(_), None) => Family::CapillaryGravity,
                (Some(FamilyArg::Vorticity) | None, None, Some(_)) => Family::ConstantVorticity,
                _ => return Err(Failure::Usage("dimensional flags do not match --family".into())),
            };
            let params = DimensionalParams {
                g,
                d,
                surface_tension: self.surface_tension.unwrap_or(0.0),
                gamma: self.gamma.unwrap_or(0.0),
            };
            let nd = nondimensionalize(&params, family, branch)?;
            return Ok(ResolvedModel { model: nd.model, scales: Some((params, nd)) });
        }
        let model = match (self.family, self.tau, self.varpi) {
            (Some(FamilyArg::Gravity) | None, None, None) => DispersionModel::gravity(),
            (Some(FamilyArg::Capillary) | None, Some(tau), None) => DispersionModel::capillary(tau)?,
            (Some(FamilyArg::Vorticity) | None, None, Some(varpi)) => DispersionModel::vorticity(varpi, branch)?,
            (Some(FamilyArg::Capillary), None, _) => return Err(Failure::Usage("--family capillary needs --tau".into())),
            (Some(FamilyArg::Vorticity), _, None) => return Err(Failure::Usage("--family vorticity needs --varpi".into())),
            _ => return Err(Failure::Usage("model flags do not match --family".into())),
        };
        Ok(ResolvedModel { model, scales: None })
    }
}

impl ResolvedModel {
    fn metadata(&self, command: &str, grid: Value) -> Value {
        let nondim = match &self.scales {
            Some((params, nd)) => json!({
                "inputs": params,
                "speed_scale": nd.speed_scale,
                "length_scale": nd.length_scale,
                "tau": self.model.tau,
                "varpi": self.model.varpi,
                "note": "lengths scaled by d, speeds by sqrt(g d); tau = T/(g d^2), varpi = gamma sqrt(d/g)",
            }),
            None => Value::Null,
        };
        json!({
            "tool": "whitham-mi",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "model": self.model,
            "model_label": self.model.to_string(),
            "degenerate": self.model.is_degenerate(),
            "grid": grid,
            "nondimensionalization": nondim,
        })
    }
}

impl ZGrid {
    fn points(&self) -> CliResult<Vec<f64>> {
        if self.n == 0 || !(self.zmax > 0.0 && self.zmax.is_finite()) {
            return Err(Failure::Usage(format!("need --n >= 1 and --zmax > 0, got {} and {}", self.n, self.zmax)));
        }
        match self.zmin {
            Some(lo) if !(lo > 0.0 && lo <= self.zmax) => {
                Err(Failure::Usage(format!("need 0 < --zmin <= --zmax, got {lo}")))
            }
            Some(lo) => Ok(linspace(lo, self.zmax, self.n)),
            None => Ok((1..=self.n).map(|i| self.zmax * i as f64 / self.n as f64).collect()),
        }
    }

    fn describe(&self) -> Value {
        json!({ "zmin": self.zmin, "zmax": self.zmax, "n": self.n })
    }
}

fn emit<T: Serialize>(out: &OutArgs, metadata: &Value, data: &T, table: impl FnOnce() -> Table) -> CliResult<()> {
    let sink = Sink::new(out.output.clone());
    match resolve_format(out.format, out.output.as_deref()) {
        Format::Csv => sink.write_csv(&table())?,
        Format::Json => sink.write_json(metadata, data)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct SymbolRow {
    z: f64,
    m: f64,
    m1: f64,
    m2: f64,
    zm1: f64,
    zm2: f64,
    degenerate: bool,
}

fn cmd_symbol(model: &ModelArgs, grid: &ZGrid, out: &OutArgs) -> CliResult<()> {
    let resolved = model.resolve()?;
    let m = resolved.model;
    let rows = grid
        .points()?
        .into_iter()
        .map(|z| {
            let (v, d1, d2) = (m.symbol(z)?, m.symbol_deriv(z, 1)?, m.symbol_deriv(z, 2)?);
            Ok(SymbolRow {
                z,
                m: v,
                m1: d1,
                m2: d2,
                zm1: v + z * d1,
                zm2: 2.0 * d1 + z * d2,
                degenerate: m.is_degenerate(),
            })
        })
        .collect::<whitham_mi::Result<Vec<_>>>()?;
    let meta = resolved.metadata("symbol", grid.describe());
    emit(out, &meta, &rows, || Table {
        header: vec!["z", "m", "m1", "m2", "zm1", "zm2", "degenerate"],
        rows: rows
            .iter()
            .map(|r| {
                let mut v: Vec<String> = [r.z, r.m, r.m1, r.m2, r.zm1, r.zm2].into_iter().map(num).collect();
                v.push(r.degenerate.to_string());
                v
            })
            .collect(),
    })
}

fn cmd_index(model: &ModelArgs, z: Option<f64>, grid: &ZGrid, out: &OutArgs) -> CliResult<()> {
    let resolved = model.resolve()?;
    let zs = match z {
        Some(z) => vec![z],
        None => grid.points()?,
    };
    let reports = zs
        .iter()
        .map(|&z| stability::delta_mi(&resolved.model, z))
        .collect::<whitham_mi::Result<Vec<IndexReport>>>()?;
    let grid_meta = match z {
        Some(z) => json!({ "z": z }),
        None => grid.describe(),
    };
    let meta = resolved.metadata("index", grid_meta);
    emit(out, &meta, &reports, || Table {
        header: vec![
            "z",
            "delta_bf",
            "delta_mi",
            "factor_group_curvature",
            "factor_longshort",
            "factor_second_harmonic",
            "verdict",
            "mechanism",
        ],
        rows: reports
            .iter()
            .map(|r| {
                vec![
                    num(r.z),
                    num(r.delta_bf),
                    opt_num(r.delta_mi),
                    num(r.factor_group_curvature),
                    num(r.factor_longshort),
                    num(r.factor_second_harmonic),
                    r.verdict.code().to_string(),
                    r.mechanism.map(|m| m.name().to_string()).unwrap_or_default(),
                ]
            })
            .collect(),
    })
}

fn cmd_critical(model: &ModelArgs, zmin: f64, zmax: f64, n: usize, out: &OutArgs) -> CliResult<()> {
    let resolved = model.resolve()?;
    let roots: Vec<CriticalPoint> = stability::critical_wavenumbers(&resolved.model, zmin, zmax, n)?;
    let meta = resolved.metadata("critical", json!({ "zmin": zmin, "zmax": zmax, "n": n }));
    emit(out, &meta, &roots, || Table {
        header: vec!["z", "mechanism_number", "mechanism"],
        rows: roots
            .iter()
            .map(|c| vec![num(c.z), c.mechanism.number().to_string(), c.mechanism.name().to_string()])
            .collect(),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_spectrum(
    model: &ModelArgs,
    wave: &WaveArgs,
    xis: &[f64],
    nf: usize,
    r_origin: Option<f64>,
    expansion: bool,
    modes: Option<usize>,
    tol: f64,
    out: &OutArgs,
) -> CliResult<()> {
    use rayon::prelude::*;
    let resolved = model.resolve()?;
    let seed = expansion_wave(&resolved.model, wave.k, wave.a, 0.0)?;
    let modes = modes.unwrap_or_else(|| floquet::check_wave_modes(nf));
    let w = if expansion { seed } else { refine_wave(&seed, modes, tol)? };
    let spectra = xis
        .par_iter()
        .map(|&xi| floquet::bloch_spectrum(&w, xi, nf, r_origin))
        .collect::<whitham_mi::Result<Vec<_>>>()?;
    let meta = resolved.metadata(
        "spectrum",
        json!({
            "k": wave.k, "a": wave.a, "xi": xis, "n_f": nf,
            "wave": if expansion { "expansion" } else { "refined" },
            "wave_modes": w.modes(), "wave_speed": w.c,
        }),
    );
    emit(out, &meta, &spectra, || Table {
        header: vec!["xi", "n_f", "index", "re", "im", "near_origin"],
        rows: spectra
            .iter()
            .flat_map(|s| {
                s.eigenvalues.iter().enumerate().map(move |(i, l)| {
                    vec![
                        num(s.xi),
                        s.n_f.to_string(),
                        i.to_string(),
                        num(l.re),
                        num(l.im),
                        (l.norm() <= s.r_origin).to_string(),
                    ]
                })
            })
            .collect(),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_check(
    model: &ModelArgs,
    wave: &WaveArgs,
    xis: &[f64],
    nf: usize,
    g_thresh: f64,
    margin: f64,
    out: &OutArgs,
) -> CliResult<()> {
    let resolved = model.resolve()?;
    let cfg = GrowthConfig { g_thresh, delta_margin: margin, r_origin: None };
    let check = floquet::mi_growth_check(&resolved.model, wave.k, wave.a, xis, nf, &cfg)?;
    let meta = resolved.metadata(
        "check",
        json!({ "k": wave.k, "a": wave.a, "xi": xis, "n_f": nf, "g_thresh": g_thresh, "delta_margin": margin }),
    );
    emit(out, &meta, &check, || Table {
        header: vec![
            "k", "a", "n_f", "xi", "max_real_near_origin", "delta_mi", "predicted", "observed", "agree", "indeterminate",
        ],
        rows: check
            .growth_by_xi
            .iter()
            .map(|&(xi, g)| {
                vec![
                    num(check.k),
                    num(check.a),
                    check.n_f.to_string(),
                    num(xi),
                    num(g),
                    num(check.delta_mi),
                    check.predicted.code().to_string(),
                    format!("{:?}", check.observed),
                    check.agree.to_string(),
                    check.indeterminate.to_string(),
                ]
            })
            .collect(),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_diagram(
    plane: PlaneArg,
    xmin: Option<f64>,
    xmax: Option<f64>,
    ymin: Option<f64>,
    ymax: Option<f64>,
    resolution: usize,
    svg_path: Option<&PathBuf>,
    out: &OutArgs,
) -> CliResult<()> {
    let (plane, xd, yd, labels) = match plane {
        PlaneArg::Capillary => (
            Plane::CapillaryPlane,
            diagrams::CAPILLARY_X_RANGE,
            diagrams::CAPILLARY_Y_RANGE,
            ("kd", "k sqrt(T/g)"),
        ),
        PlaneArg::Vorticity => (
            Plane::VorticityPlane,
            diagrams::VORTICITY_X_RANGE,
            diagrams::VORTICITY_Y_RANGE,
            ("varpi = gamma sqrt(d/g)", "kd"),
        ),
    };
    let xr = (xmin.unwrap_or(xd.0), xmax.unwrap_or(xd.1));
    let yr = (ymin.unwrap_or(yd.0), ymax.unwrap_or(yd.1));
    let curves: Vec<StabilityCurve> = match plane {
        Plane::CapillaryPlane => diagrams::capillary_diagram(xr, yr, (resolution, resolution))?,
        Plane::VorticityPlane => diagrams::vorticity_diagram(xr, yr, (resolution, resolution))?,
    };
    if let Some(p) = svg_path {
        std::fs::write(p, svg::render(&curves, xr, yr, labels.0, labels.1))?;
    }
    let note = match plane {
        Plane::CapillaryPlane => "x = kd, y = k sqrt(T/g); tau = (y/x)^2",
        Plane::VorticityPlane => "x = varpi = gamma sqrt(d/g) (nondimensional vorticity), y = kd",
    };
    let meta = json!({
        "tool": "whitham-mi",
        "version": env!("CARGO_PKG_VERSION"),
        "command": "diagram",
        "plane": plane,
        "grid": { "x_range": [xr.0, xr.1], "y_range": [yr.0, yr.1], "resolution": resolution },
        "axes": note,
    });
    emit(out, &meta, &curves, || Table {
        header: vec!["curve", "plane", "mechanism", "x", "y"],
        rows: curves
            .iter()
            .enumerate()
            .flat_map(|(i, c)| {
                c.points.iter().map(move |&(x, y)| {
                    vec![
                        i.to_string(),
                        format!("{:?}", c.plane),
                        c.mechanism.name().to_string(),
                        num(x),
                        num(y),
                    ]
                })
            })
            .collect(),
    })
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("WHITHAM_MI_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("WHITHAM_MI_THREADS = {raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match &cli.command {
        Command::Symbol { model, grid, out } => cmd_symbol(model, grid, out),
        Command::Index { model, z, grid, out } => cmd_index(model, *z, grid, out),
        Command::Critical { model, zmin, zmax, n, out } => cmd_critical(model, *zmin, *zmax, *n, out),
        Command::Spectrum { model, wave, xi, nf, r_origin, expansion, modes, tol, out } => {
            cmd_spectrum(model, wave, xi, *nf, *r_origin, *expansion, *modes, *tol, out)
        }
        Command::Check { model, wave, xi, nf, g_thresh, margin, out } => {
            cmd_check(model, wave, xi, *nf, *g_thresh, *margin, out)
        }
        Command::Diagram { plane, xmin, xmax, ymin, ymax, resolution, svg, out } => {
            cmd_diagram(*plane, *xmin, *xmax, *ymin, *ymax, *resolution, svg.as_ref(), out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("i/o error: {e}");
            ExitCode::from(1)
        }
    }
}
