//! `mim`: plausibility curves, plausibility regions and Monte Carlo checks
//! for the marginal inferential model catalog.

mod input;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mim_core::simulation::{
    bound_curves, efficiency_demo, simulate_coverage, simulate_validity, BoundConfig, BoundModel,
    BoundTable, Method, SimulationConfig, SimulationReport, TrueModel,
};
use mim_core::{Error, ModelId, ModelInstance, Region, SearchConfig};
use output::{write_csv, write_json, Cell};
use serde::Serialize;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "mim",
    version,
    about = "Marginal inferential models: plausibility, regions and validity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the marginal plausibility at one ψ or on a grid
    Pl(PlArgs),
    /// Plausibility region {ψ : pl(ψ) > α}
    Region(RegionArgs),
    /// Exceedance rates P{pl(ψ_true) ≤ α} by simulation
    Validity(SimArgs),
    /// Coverage and mean length of plausibility regions by simulation
    Coverage(CoverageArgs),
    /// Empirical distribution of an auxiliary variable against its bound
    BoundCheck(BoundArgs),
    /// Disc, projection and band geometry for the efficiency comparison
    DemoEfficiency(DemoArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct DataArgs {
    /// Model id: normal-mean, normal-mean-t, correlation, mean-ratio, mnm, behrens-fisher, gamma-mean
    #[arg(long)]
    model: ModelId,
    /// Data file (one value per line, or two delimited columns)
    #[arg(long, conflicts_with = "stats", required_unless_present = "stats")]
    data: Option<PathBuf>,
    /// Inline statistics, e.g. n=4,mean=0
    #[arg(long, allow_hyphen_values = true)]
    stats: Option<String>,
    /// Known standard deviation (normal-mean)
    #[arg(long)]
    sigma: Option<f64>,
    /// Column holding the group label in two-sample data (1 or 2)
    #[arg(long, default_value_t = 1)]
    group: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

impl DataArgs {
    fn instance(&self) -> mim_core::Result<ModelInstance> {
        match (&self.data, &self.stats) {
            (Some(path), None) => input::from_file(self.model, path, self.sigma, self.group),
            (None, Some(stats)) => input::from_stats(self.model, stats, self.sigma),
            _ => Err(Error::Input(
                "give exactly one of --data and --stats".into(),
            )),
        }
    }
}

#[derive(Args)]
struct PlArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Parameter value
    #[arg(
        long,
        allow_negative_numbers = true,
        required_unless_present = "grid",
        conflicts_with = "grid"
    )]
    psi: Option<f64>,
    /// Parameter grid lo:hi:count
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
}

#[derive(Args)]
struct RegionArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
}

#[derive(Args)]
struct TruthArgs {
    /// Model id
    #[arg(long)]
    model: ModelId,
    /// True value of the interest parameter
    #[arg(long, allow_negative_numbers = true)]
    psi: f64,
    /// Sample size or dimension
    #[arg(long)]
    n: Option<usize>,
    /// First sample size (behrens-fisher)
    #[arg(long)]
    n1: Option<usize>,
    /// Second sample size (behrens-fisher)
    #[arg(long)]
    n2: Option<usize>,
    /// Nuisance value: ξ for mean-ratio and behrens-fisher
    #[arg(long, allow_negative_numbers = true)]
    xi: Option<f64>,
    /// Standard deviation for the normal models
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Gamma shape
    #[arg(long)]
    shape: Option<f64>,
}

impl TruthArgs {
    fn need<T: Copy>(v: Option<T>, flag: &str, model: ModelId) -> mim_core::Result<T> {
        v.ok_or_else(|| Error::Input(format!("{model} needs --{flag}")))
    }

    fn truth(&self) -> mim_core::Result<TrueModel> {
        let m = self.model;
        let n = || Self::need(self.n, "n", m);
        Ok(match m {
            ModelId::NormalMean => TrueModel::NormalMean {
                n: n()?,
                theta: self.psi,
                sigma: self.sigma,
            },
            ModelId::NormalMeanT => TrueModel::NormalMeanT {
                n: n()?,
                mu: self.psi,
                sigma: self.sigma,
            },
            ModelId::Correlation => TrueModel::Correlation {
                n: n()?,
                rho: self.psi,
            },
            ModelId::MeanRatio => TrueModel::MeanRatio {
                psi: self.psi,
                xi: Self::need(self.xi, "xi", m)?,
            },
            ModelId::Mnm => TrueModel::Mnm {
                n: n()?,
                psi: self.psi,
            },
            ModelId::BehrensFisher => TrueModel::BehrensFisher {
                n1: Self::need(self.n1, "n1", m)?,
                n2: Self::need(self.n2, "n2", m)?,
                psi: self.psi,
                xi: Self::need(self.xi, "xi", m)?,
            },
            ModelId::GammaMean => TrueModel::GammaMean {
                n: n()?,
                shape: Self::need(self.shape, "shape", m)?,
                mean: self.psi,
            },
        })
    }
}

#[derive(Args)]
struct SimArgs {
    #[command(flatten)]
    truth: TruthArgs,
    #[arg(long, default_value_t = 10_000)]
    reps: usize,
    /// Master seed
    #[arg(long)]
    seed: u64,
    /// Comma-separated α values
    #[arg(long, default_value = "0.01,0.05,0.1,0.25,0.5")]
    alphas: String,
    /// Number of parallel chunks (results do not depend on it)
    #[arg(long)]
    chunks: Option<usize>,
    /// Record wall time in the report (makes output run-dependent)
    #[arg(long)]
    timing: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

impl SimArgs {
    fn config(&self) -> mim_core::Result<SimulationConfig> {
        let mut cfg = SimulationConfig::new(
            self.truth.truth()?,
            self.reps,
            input::parse_list(&self.alphas, "--alphas")?,
            self.seed,
        );
        if let Some(c) = self.chunks {
            cfg.parallel_chunks = c;
        }
        Ok(cfg)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Im,
    Fiducial,
}

#[derive(Args)]
struct CoverageArgs {
    #[command(flatten)]
    sim: SimArgs,
    #[arg(long, value_enum, default_value = "im")]
    method: MethodArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundModelArg {
    GammaMean,
    GammaMeanUnitScale,
    BehrensFisher,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, value_enum)]
    model: BoundModelArg,
    /// Sample sizes for the gamma models, comma-separated
    #[arg(long)]
    n: Option<String>,
    /// Sample-size pairs for behrens-fisher, e.g. 3:3,5:10
    #[arg(long)]
    pairs: Option<String>,
    /// Gamma shapes, comma-separated
    #[arg(long)]
    alphas: Option<String>,
    /// Behrens–Fisher ξ values, comma-separated
    #[arg(long)]
    xis: Option<String>,
    /// z grid lo:hi:count
    #[arg(long, default_value = "-3:3:21", allow_hyphen_values = true)]
    z_grid: String,
    #[arg(long, default_value_t = 100_000)]
    reps: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    chunks: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct DemoArgs {
    #[arg(long, default_value_t = 0.5)]
    coverage: f64,
    /// Points on the circle
    #[arg(long, default_value_t = 64)]
    points: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Serialize)]
struct PlPoint {
    psi: f64,
    mpl: f64,
}

#[derive(Serialize)]
struct PlOutput {
    model: ModelId,
    points: Vec<PlPoint>,
}

#[derive(Serialize)]
struct RegionOutput<'a> {
    model: ModelId,
    alpha: f64,
    #[serde(flatten)]
    region: &'a Region,
}

fn emit_json<T: Serialize>(value: &T) -> io::Result<()> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    write_json(&mut lock, value)?;
    lock.flush()
}

fn emit_csv(header: &[&str], rows: Vec<Vec<Cell>>) -> io::Result<()> {
    write_csv(io::stdout().lock(), header, rows)
}

enum Failure {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn run_pl(a: &PlArgs) -> Result<(), Failure> {
    let inst = a.data.instance()?;
    let grid = match (&a.grid, a.psi) {
        (Some(g), _) => input::parse_grid(g, "--grid")?,
        (None, Some(p)) => vec![p],
        (None, None) => return Err(Error::Input("give --psi or --grid".into()).into()),
    };
    let points = grid
        .into_iter()
        .map(|psi| {
            Ok(PlPoint {
                psi,
                mpl: inst.plausibility(psi)?,
            })
        })
        .collect::<mim_core::Result<Vec<_>>>()?;
    match a.data.format {
        Format::Json => emit_json(&PlOutput {
            model: a.data.model,
            points,
        })?,
        Format::Csv => emit_csv(
            &["psi", "mpl"],
            points
                .iter()
                .map(|p| vec![p.psi.into(), p.mpl.into()])
                .collect(),
        )?,
    }
    Ok(())
}

fn run_region(a: &RegionArgs) -> Result<(), Failure> {
    let inst = a.data.instance()?;
    let region = inst.region(a.alpha, &SearchConfig::default())?;
    match a.data.format {
        Format::Json => emit_json(&RegionOutput {
            model: a.data.model,
            alpha: a.alpha,
            region: &region,
        })?,
        Format::Csv => emit_csv(
            &["shape", "lo", "hi", "lo_open", "hi_open"],
            region
                .pieces()
                .iter()
                .map(|p| {
                    vec![
                        region.shape().to_string().as_str().into(),
                        p.lo.into(),
                        p.hi.into(),
                        p.lo_open.into(),
                        p.hi_open.into(),
                    ]
                })
                .collect(),
        )?,
    }
    Ok(())
}

fn emit_report(report: &SimulationReport, format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => emit_json(report)?,
        Format::Csv => emit_csv(
            &[
                "alpha",
                "exceedance",
                "exceedance_se",
                "coverage",
                "coverage_se",
                "mean_length",
                "bounded_regions",
                "unbounded_regions",
            ],
            report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.alpha.into(),
                        r.exceedance.into(),
                        r.exceedance_se.into(),
                        r.coverage.into(),
                        r.coverage_se.into(),
                        r.mean_length.into(),
                        r.bounded_regions.into(),
                        r.unbounded_regions.into(),
                    ]
                })
                .collect(),
        )?,
    }
    Ok(())
}

fn run_validity(a: &SimArgs) -> Result<(), Failure> {
    let cfg = a.config()?;
    let start = Instant::now();
    let mut report = simulate_validity(&cfg)?;
    if a.timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    emit_report(&report, a.format)
}

fn run_coverage(a: &CoverageArgs) -> Result<(), Failure> {
    let cfg = a.sim.config()?;
    let method = match a.method {
        MethodArg::Im => Method::Im,
        MethodArg::Fiducial => Method::Fiducial,
    };
    let start = Instant::now();
    let mut report = simulate_coverage(&cfg, method)?;
    if a.sim.timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    emit_report(&report, a.sim.format)
}

fn bound_config(a: &BoundArgs) -> mim_core::Result<BoundConfig> {
    let (model, sizes, params) = match a.model {
        BoundModelArg::GammaMean | BoundModelArg::GammaMeanUnitScale => {
            if a.pairs.is_some() || a.xis.is_some() {
                return Err(Error::Input(
                    "gamma bound checks take --n and --alphas".into(),
                ));
            }
            let n: Vec<usize> = input::parse_list(a.n.as_deref().unwrap_or("2"), "--n")?;
            let alphas = input::parse_list(a.alphas.as_deref().unwrap_or("0.1,1,10"), "--alphas")?;
            let model = match a.model {
                BoundModelArg::GammaMean => BoundModel::GammaMean,
                _ => BoundModel::GammaMeanUnitScale,
            };
            (model, n.into_iter().map(|k| (k, k)).collect(), alphas)
        }
        BoundModelArg::BehrensFisher => {
            if a.n.is_some() || a.alphas.is_some() {
                return Err(Error::Input(
                    "behrens-fisher bound checks take --pairs and --xis".into(),
                ));
            }
            let pairs = input::parse_pairs(a.pairs.as_deref().unwrap_or("5:5"))?;
            let xis = input::parse_list(a.xis.as_deref().unwrap_or("0.5"), "--xis")?;
            (BoundModel::BehrensFisher, pairs, xis)
        }
    };
    Ok(BoundConfig {
        model,
        sizes,
        params,
        z_grid: input::parse_grid(&a.z_grid, "--z-grid")?,
        reps: a.reps,
        seed: a.seed,
        parallel_chunks: a.chunks.unwrap_or(1).max(1),
    })
}

fn run_bound(a: &BoundArgs) -> Result<(), Failure> {
    let table: BoundTable = bound_curves(&bound_config(a)?)?;
    match a.format {
        Format::Json => emit_json(&table)?,
        Format::Csv => emit_csv(
            &[
                "n1",
                "n2",
                "param",
                "z",
                "empirical_cdf",
                "se",
                "bound_cdf",
                "dominates",
            ],
            table
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.n1.into(),
                        r.n2.into(),
                        r.param.into(),
                        r.z.into(),
                        r.empirical_cdf.into(),
                        r.se.into(),
                        r.bound_cdf.into(),
                        r.dominates.into(),
                    ]
                })
                .collect(),
        )?,
    }
    Ok(())
}

fn run_demo(a: &DemoArgs) -> Result<(), Failure> {
    let d = efficiency_demo(a.coverage, a.points)?;
    match a.format {
        Format::Json => emit_json(&d)?,
        Format::Csv => {
            let mut rows: Vec<Vec<Cell>> = d
                .circle
                .iter()
                .map(|&(x, y)| vec!["circle".into(), x.into(), y.into()])
                .collect();
            rows.push(vec!["projection".into(), d.projection.0.into(), 0.0.into()]);
            rows.push(vec!["projection".into(), d.projection.1.into(), 0.0.into()]);
            rows.push(vec!["band".into(), (-d.band_half_width).into(), 0.0.into()]);
            rows.push(vec!["band".into(), d.band_half_width.into(), 0.0.into()]);
            emit_csv(&["kind", "x", "y"], rows)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
    exit_code: u8,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: ErrorBody<'a>,
}

fn fail(kind: &str, message: String, code: u8) -> ExitCode {
    let report = ErrorReport {
        error: ErrorBody {
            kind,
            message,
            exit_code: code,
        },
    };
    eprint!("{}", output::to_json_string(&report));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("argument", e.to_string().trim_end().to_string(), 2),
    };
    let result = match &cli.command {
        Command::Pl(a) => run_pl(a),
        Command::Region(a) => run_region(a),
        Command::Validity(a) => run_validity(a),
        Command::Coverage(a) => run_coverage(a),
        Command::BoundCheck(a) => run_bound(a),
        Command::DemoEfficiency(a) => run_demo(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) if e.is_numerical() => fail("numerical", e.to_string(), 3),
        Err(Failure::Lib(e)) => fail("argument", e.to_string(), 2),
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => fail("io", e.to_string(), 1),
    }
}
