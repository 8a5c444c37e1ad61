//! Command-line front end.
//!
//! Every flag can also be set through an environment variable named
//! `VFI_<FLAG>` (upper case, dashes as underscores); flags take precedence.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bootstrap::{BootstrapConfig, BootstrapRun, DominanceHypothesis, WeightScheme};
use crate::derivative::{Tuning, DEFAULT_A_CONST, DEFAULT_B_CONST};
use crate::empirical::{ecdf_build, Sample};
use crate::error::{Error, Result};
use crate::inference::{band_test, combined_band, constant_effect_check, dominance_test, uniform_band, Band, TestResult};
use crate::io::{self, ColumnSelector, Versioned};
use crate::makarov::{bounds, covering_grid, default_grid, default_step, quantile_bounds, support_bounds, BoundSide};
use crate::simulate::{run_experiment, ExperimentConfig, ExperimentKind};
use crate::valuemap::{Grid, ValueFunction};

#[derive(Debug, Parser)]
#[command(name = "vfi", version, about = "Makarov bounds, uniform bands and dominance tests for treatment effects")]
pub struct Cli {
    /// Worker threads (0 = all available cores).
    #[arg(long, env = "VFI_THREADS", default_value_t = 0, global = true)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower and upper bounds on the treatment-effect distribution.
    Bounds(BoundsArgs),
    /// Bounds on the treatment-effect quantile function.
    QuantileBounds(QuantileArgs),
    /// Uniform confidence band for one bound.
    Band(BandArgs),
    /// Conservative confidence band for the treatment-effect distribution.
    CdfBand(CdfBandArgs),
    /// Test a bound-based dominance condition between two treatments.
    DominanceTest(DominanceArgs),
    /// Monte Carlo power curves.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Bound {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Multinomial,
    Bayesian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Hypothesis {
    Necessary,
    Sufficient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Design {
    Normal,
    Dominance,
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be positive and finite, got {v}"))
    }
}

fn unit_open(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("must lie strictly between 0 and 1, got {v}"))
    }
}

fn at_least_one(s: &str) -> std::result::Result<usize, String> {
    let v: usize = s.parse().map_err(|_| format!("'{s}' is not a positive integer"))?;
    if v >= 1 {
        Ok(v)
    } else {
        Err("must be at least 1".into())
    }
}

fn column(s: &str) -> std::result::Result<ColumnSelector, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct TwoSampleArgs {
    /// CSV file with treated outcomes.
    #[arg(long, env = "VFI_TREATED")]
    pub treated: PathBuf,
    /// CSV file with control outcomes.
    #[arg(long, env = "VFI_CONTROL")]
    pub control: PathBuf,
    /// Column to read from each input: 0-based index or header name.
    #[arg(long, env = "VFI_COLUMN", default_value = "0", value_parser = column)]
    pub column: ColumnSelector,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (default: standard output).
    #[arg(long, short, env = "VFI_OUTPUT")]
    pub output: Option<PathBuf>,
    #[arg(long, env = "VFI_FORMAT", value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Grid spacing (default: the pooled range divided into 512 steps).
    #[arg(long, env = "VFI_GRID_STEP", value_parser = positive)]
    pub grid_step: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct BootArgs {
    #[arg(long, env = "VFI_ALPHA", default_value_t = 0.05, value_parser = unit_open)]
    pub alpha: f64,
    /// Bootstrap replicates.
    #[arg(long = "R", env = "VFI_R", default_value_t = 499, value_parser = at_least_one)]
    pub replicates: usize,
    #[arg(long, env = "VFI_SEED", default_value_t = 1)]
    pub seed: u64,
    #[arg(long, env = "VFI_SCHEME", value_enum, default_value_t = Scheme::Multinomial)]
    pub scheme: Scheme,
    /// Constant in a_n = c log(log n) / sqrt(n).
    #[arg(long, env = "VFI_AN_CONST", default_value_t = DEFAULT_A_CONST, value_parser = positive)]
    pub an_const: f64,
    /// Constant in b_n = c log(log n) / sqrt(n).
    #[arg(long, env = "VFI_BN_CONST", default_value_t = DEFAULT_B_CONST, value_parser = positive)]
    pub bn_const: f64,
    /// Write the bootstrap replicates to this CSV file.
    #[arg(long, env = "VFI_DUMP_REPLICATES")]
    pub dump_replicates: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub samples: TwoSampleArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct QuantileArgs {
    #[command(flatten)]
    pub samples: TwoSampleArgs,
    /// Quantile levels (default: 0.01, 0.02, .., 0.99).
    #[arg(long, env = "VFI_TAUS", value_delimiter = ',', value_parser = unit_open)]
    pub taus: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BandArgs {
    #[command(flatten)]
    pub samples: TwoSampleArgs,
    #[arg(long, env = "VFI_BOUND", value_enum, default_value_t = Bound::Lower)]
    pub bound: Bound,
    /// CSV with columns x,value: a hypothesized bound function to test. Its x
    /// column becomes the grid.
    #[arg(long, env = "VFI_NULL")]
    pub null: Option<PathBuf>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub boot: BootArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CdfBandArgs {
    #[command(flatten)]
    pub samples: TwoSampleArgs,
    /// Also check whether a constant effect equal to this value fits the band.
    #[arg(long, env = "VFI_X_STAR", allow_negative_numbers = true)]
    pub x_star: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub boot: BootArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DominanceArgs {
    /// CSV file with control outcomes.
    #[arg(long, env = "VFI_CONTROL")]
    pub control: PathBuf,
    #[arg(long, env = "VFI_TREATMENT_A")]
    pub treatment_a: PathBuf,
    #[arg(long, env = "VFI_TREATMENT_B")]
    pub treatment_b: PathBuf,
    #[arg(long, env = "VFI_COLUMN", default_value = "0", value_parser = column)]
    pub column: ColumnSelector,
    /// `necessary`: L_A - U_B <= 0; `sufficient`: U_A - L_B <= 0.
    #[arg(long, env = "VFI_HYPOTHESIS", value_enum, default_value_t = Hypothesis::Necessary)]
    pub hypothesis: Hypothesis,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub boot: BootArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(value_enum)]
    pub design: Design,
    /// Observations per sample.
    #[arg(long, env = "VFI_N")]
    pub n: Option<usize>,
    #[arg(long = "R", env = "VFI_R", value_parser = at_least_one)]
    pub replicates: Option<usize>,
    /// Monte Carlo repetitions per local parameter.
    #[arg(long, env = "VFI_REPS", value_parser = at_least_one)]
    pub reps: Option<usize>,
    /// Local parameters delta (default: -5, -4, .., 5).
    #[arg(long, env = "VFI_DELTAS", value_delimiter = ',', allow_hyphen_values = true)]
    pub deltas: Vec<f64>,
    /// Use n = 1000, R = 1999 and 1000 repetitions unless given explicitly.
    #[arg(long, env = "VFI_FULL_SCALE")]
    pub full_scale: bool,
    #[arg(long, env = "VFI_SEED", default_value_t = 1)]
    pub seed: u64,
    #[arg(long, env = "VFI_ALPHA", default_value_t = 0.05, value_parser = unit_open)]
    pub alpha: f64,
    #[arg(long, env = "VFI_SCHEME", value_enum, default_value_t = Scheme::Multinomial)]
    pub scheme: Scheme,
    #[arg(long, env = "VFI_AN_CONST", default_value_t = DEFAULT_A_CONST, value_parser = positive)]
    pub an_const: f64,
    #[arg(long, env = "VFI_BN_CONST", default_value_t = DEFAULT_B_CONST, value_parser = positive)]
    pub bn_const: f64,
    /// Grid spacing (default: 0.05 for normal, 0.02 for dominance).
    #[arg(long, env = "VFI_GRID_STEP", value_parser = positive)]
    pub grid_step: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl From<Scheme> for WeightScheme {
    fn from(s: Scheme) -> Self {
        match s {
            Scheme::Multinomial => WeightScheme::Multinomial,
            Scheme::Bayesian => WeightScheme::Bayesian,
        }
    }
}

impl BootArgs {
    fn config(&self) -> Result<BootstrapConfig> {
        BootstrapConfig::new(self.replicates, self.scheme.into(), self.seed, self.alpha)
    }

    fn tuning(&self, n: usize) -> Result<Tuning> {
        Tuning::with_constants(n, self.an_const, self.bn_const)
    }
}

fn load_pair(args: &TwoSampleArgs) -> Result<(Sample, Sample)> {
    Ok((
        io::read_sample(&args.treated, &args.column, "treated")?,
        io::read_sample(&args.control, &args.column, "control")?,
    ))
}

fn pair_grid(x1: &Sample, x0: &Sample, step: Option<f64>) -> Result<Grid> {
    let support = support_bounds(x1, x0)?;
    default_grid(&support, step.unwrap_or_else(|| default_step(&support)))
}

fn emit(output: &OutputArgs, bytes: &[u8]) -> Result<()> {
    match &output.output {
        Some(path) => std::fs::write(path, bytes).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes).and_then(|_| out.flush()).map_err(|e| Error::Io {
                path: "<stdout>".into(),
                message: e.to_string(),
            })
        }
    }
}

fn dump(path: Option<&Path>, runs: &[(&str, &BootstrapRun)]) -> Result<()> {
    let Some(path) = path else { return Ok(()) };
    let file = std::fs::File::create(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    io::write_replicates_csv(std::io::BufWriter::new(file), runs)
}

#[derive(Serialize)]
struct BandRow {
    x: f64,
    lo: f64,
    center: f64,
    hi: f64,
}

#[derive(Serialize)]
struct CombinedRow {
    x: f64,
    lo: f64,
    lower: f64,
    upper: f64,
    hi: f64,
}

#[derive(Serialize)]
struct RunInfo {
    seed: u64,
    scheme: WeightScheme,
    bootstrap_replicates: usize,
    tuning: Tuning,
    grid_step: f64,
}

#[derive(Serialize)]
struct BandReport<R> {
    command: &'static str,
    bound: &'static str,
    alpha: f64,
    c_star: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    c_star_upper: Option<f64>,
    r_n: f64,
    #[serde(flatten)]
    run: RunInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    test: Option<TestResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constant_effect: Option<ConstantEffect>,
    band: Vec<R>,
}

#[derive(Serialize)]
struct ConstantEffect {
    x_star: f64,
    consistent: bool,
}

fn band_rows(band: &Band) -> Vec<BandRow> {
    band.grid
        .points()
        .iter()
        .enumerate()
        .map(|(k, &x)| BandRow {
            x,
            lo: band.lo[k],
            center: band.center[k],
            hi: band.hi[k],
        })
        .collect()
}

fn read_null(path: &Path) -> Result<ValueFunction> {
    let source = path.display().to_string();
    let xs = io::read_sample(path, &ColumnSelector::Index(0), "x")?;
    let vs = io::read_sample(path, &ColumnSelector::Index(1), "value")?;
    let points = xs.values().to_vec();
    if points.len() < 2 {
        return Err(Error::Parse {
            path: source,
            line: 1,
            message: "need at least two grid rows".into(),
        });
    }
    let step = points[1] - points[0];
    ValueFunction::new(Grid::new(points, step)?, vs.values().to_vec())
}

fn run_bounds(args: &BoundsArgs) -> Result<Vec<u8>> {
    let (x1, x0) = load_pair(&args.samples)?;
    let grid = pair_grid(&x1, &x0, args.grid.grid_step)?;
    let b = bounds(&ecdf_build(&x1), &ecdf_build(&x0), &grid);
    let mut buf = Vec::new();
    match args.output.format.unwrap_or(Format::Csv) {
        Format::Csv => io::write_bounds_csv(&mut buf, &b)?,
        Format::Json => io::write_bounds_json(&mut buf, &b)?,
    }
    Ok(buf)
}

fn run_quantiles(args: &QuantileArgs) -> Result<Vec<u8>> {
    let (x1, x0) = load_pair(&args.samples)?;
    let taus: Vec<f64> = if args.taus.is_empty() {
        (1..100).map(|k| k as f64 / 100.0).collect()
    } else {
        args.taus.clone()
    };
    let (lower_q, upper_q) = quantile_bounds(&ecdf_build(&x1), &ecdf_build(&x0), &taus)?;
    let mut buf = Vec::new();
    match args.output.format.unwrap_or(Format::Csv) {
        Format::Csv => io::write_quantile_bounds_csv(&mut buf, &taus, &lower_q, &upper_q)?,
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                tau: f64,
                lower_q: f64,
                upper_q: f64,
            }
            #[derive(Serialize)]
            struct Report {
                command: &'static str,
                quantile_bounds: Vec<Row>,
            }
            let rows = (0..taus.len())
                .map(|k| Row {
                    tau: taus[k],
                    lower_q: lower_q[k],
                    upper_q: upper_q[k],
                })
                .collect();
            io::write_json(
                &mut buf,
                &Versioned::new(Report {
                    command: "quantile-bounds",
                    quantile_bounds: rows,
                }),
            )?;
        }
    }
    Ok(buf)
}

fn run_band(args: &BandArgs) -> Result<Vec<u8>> {
    let (x1, x0) = load_pair(&args.samples)?;
    let null = args.null.as_deref().map(read_null).transpose()?;
    let grid = match &null {
        Some(vf) => vf.grid().clone(),
        None => pair_grid(&x1, &x0, args.grid.grid_step)?,
    };
    let config = args.boot.config()?;
    let tuning = args.boot.tuning(x1.len() + x0.len())?;
    let side = match args.bound {
        Bound::Lower => BoundSide::Lower,
        Bound::Upper => BoundSide::Upper,
    };
    let (band, run) = uniform_band(side, &x1, &x0, &grid, &tuning, &config)?;
    let test = match &null {
        Some(vf) => Some(band_test(side, &x1, &x0, &grid, vf, &tuning, &config)?.0),
        None => None,
    };
    dump(args.boot.dump_replicates.as_deref(), &[(bound_name(side), &run)])?;
    let mut buf = Vec::new();
    match args.output.format.unwrap_or(Format::Json) {
        Format::Csv => io::write_band_csv(&mut buf, &band)?,
        Format::Json => io::write_json(
            &mut buf,
            &Versioned::new(BandReport {
                command: "band",
                bound: bound_name(side),
                alpha: config.alpha,
                c_star: band.c_star,
                c_star_upper: None,
                r_n: band.r_n,
                run: RunInfo {
                    seed: config.seed,
                    scheme: config.scheme,
                    bootstrap_replicates: config.replicates,
                    tuning,
                    grid_step: grid.step(),
                },
                test,
                constant_effect: None,
                band: band_rows(&band),
            }),
        )?,
    }
    Ok(buf)
}

fn bound_name(side: BoundSide) -> &'static str {
    match side {
        BoundSide::Lower => "lower",
        BoundSide::Upper => "upper",
    }
}

fn run_cdf_band(args: &CdfBandArgs) -> Result<Vec<u8>> {
    let (x1, x0) = load_pair(&args.samples)?;
    let grid = pair_grid(&x1, &x0, args.grid.grid_step)?;
    let config = args.boot.config()?;
    let tuning = args.boot.tuning(x1.len() + x0.len())?;
    let (band, run_lower, run_upper) = combined_band(&x1, &x0, &grid, &tuning, &config)?;
    let constant_effect = match args.x_star {
        Some(x_star) => Some(ConstantEffect {
            x_star,
            consistent: constant_effect_check(&band, x_star)?,
        }),
        None => None,
    };
    dump(
        args.boot.dump_replicates.as_deref(),
        &[("lower", &run_lower), ("upper", &run_upper)],
    )?;
    let upper = band.center_upper.as_deref().unwrap_or(&band.center);
    let mut buf = Vec::new();
    match args.output.format.unwrap_or(Format::Json) {
        Format::Csv => io::write_band_csv(&mut buf, &band)?,
        Format::Json => {
            let rows: Vec<CombinedRow> = grid
                .points()
                .iter()
                .enumerate()
                .map(|(k, &x)| CombinedRow {
                    x,
                    lo: band.lo[k],
                    lower: band.center[k],
                    upper: upper[k],
                    hi: band.hi[k],
                })
                .collect();
            io::write_json(
                &mut buf,
                &Versioned::new(BandReport {
                    command: "cdf-band",
                    bound: "combined",
                    alpha: config.alpha,
                    c_star: band.c_star,
                    c_star_upper: band.c_star_upper,
                    r_n: band.r_n,
                    run: RunInfo {
                        seed: config.seed,
                        scheme: config.scheme,
                        bootstrap_replicates: config.replicates,
                        tuning,
                        grid_step: grid.step(),
                    },
                    test: None,
                    constant_effect,
                    band: rows,
                }),
            )?;
        }
    }
    Ok(buf)
}

fn run_dominance(args: &DominanceArgs) -> Result<Vec<u8>> {
    let x0 = io::read_sample(&args.control, &args.column, "control")?;
    let xa = io::read_sample(&args.treatment_a, &args.column, "treatment_a")?;
    let xb = io::read_sample(&args.treatment_b, &args.column, "treatment_b")?;
    let supports = [support_bounds(&xa, &x0)?, support_bounds(&xb, &x0)?];
    let step = args
        .grid
        .grid_step
        .unwrap_or_else(|| default_step(&supports[0]).min(default_step(&supports[1])));
    let grid = covering_grid(&supports, step)?;
    let config = args.boot.config()?;
    let tuning = args.boot.tuning(x0.len() + xa.len() + xb.len())?;
    let hypothesis = match args.hypothesis {
        Hypothesis::Necessary => DominanceHypothesis::Necessary,
        Hypothesis::Sufficient => DominanceHypothesis::Sufficient,
    };
    let (result, run) = dominance_test(&x0, &xa, &xb, &grid, hypothesis, &tuning, &config)?;
    dump(args.boot.dump_replicates.as_deref(), &[("difference", &run)])?;

    let mut buf = Vec::new();
    match args.output.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut buf);
            let ser = |e: csv::Error| Error::Serialization(e.to_string());
            w.write_record(["hypothesis", "statistic", "critical_value", "reject", "alpha", "replicates"])
                .map_err(ser)?;
            w.write_record([
                hypothesis.to_string(),
                result.statistic.to_string(),
                result.critical_value.to_string(),
                result.reject.to_string(),
                result.alpha.to_string(),
                result.replicates.count.to_string(),
            ])
            .map_err(ser)?;
            w.flush().map_err(|e| Error::Serialization(e.to_string()))?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Report {
                command: &'static str,
                hypothesis: DominanceHypothesis,
                #[serde(flatten)]
                result: TestResult,
                #[serde(flatten)]
                run: RunInfo,
            }
            io::write_json(
                &mut buf,
                &Versioned::new(Report {
                    command: "dominance-test",
                    hypothesis,
                    result,
                    run: RunInfo {
                        seed: config.seed,
                        scheme: config.scheme,
                        bootstrap_replicates: config.replicates,
                        tuning,
                        grid_step: grid.step(),
                    },
                }),
            )?;
        }
    }
    Ok(buf)
}

fn run_simulate(args: &SimulateArgs) -> Result<Vec<u8>> {
    let kind = match args.design {
        Design::Normal => ExperimentKind::NormalLocation,
        Design::Dominance => ExperimentKind::UniformDominance,
    };
    let base = ExperimentConfig::new(kind);
    let (n, replicates, reps) = if args.full_scale {
        (1000, 1999, 1000)
    } else {
        (base.n, base.replicates, base.reps)
    };
    let config = ExperimentConfig {
        n: args.n.unwrap_or(n),
        replicates: args.replicates.unwrap_or(replicates),
        reps: args.reps.unwrap_or(reps),
        deltas: if args.deltas.is_empty() {
            base.deltas.clone()
        } else {
            args.deltas.clone()
        },
        seed: args.seed,
        grid_step: args.grid_step.unwrap_or(base.grid_step),
        alpha: args.alpha,
        scheme: args.scheme.into(),
        a_const: args.an_const,
        b_const: args.bn_const,
        kind,
    };
    let curve = run_experiment(&config)?;
    let mut buf = Vec::new();
    match args.output.format.unwrap_or(Format::Csv) {
        Format::Csv => io::write_power_curve_csv(&mut buf, &curve)?,
        Format::Json => io::write_json(&mut buf, &Versioned::new(&curve))?,
    }
    Ok(buf)
}

fn execute(cli: &Cli) -> Result<()> {
    let (bytes, output) = match &cli.command {
        Command::Bounds(a) => (run_bounds(a)?, &a.output),
        Command::QuantileBounds(a) => (run_quantiles(a)?, &a.output),
        Command::Band(a) => (run_band(a)?, &a.output),
        Command::CdfBand(a) => (run_cdf_band(a)?, &a.output),
        Command::DominanceTest(a) => (run_dominance(a)?, &a.output),
        Command::Simulate(a) => (run_simulate(a)?, &a.output),
    };
    emit(output, &bytes)
}

/// Parse `argv` (including the program name) and run; returns the process
/// exit code: 0 on success, 2 on usage errors, 1 on runtime errors.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return 1;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
