//! Command-line front end: every library operation behind a subcommand, with
//! JSON output by default and CSV for sweeps.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on validation errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use simplexord::montecarlo::{DEFAULT_CHUNK_SIZE, DEFAULT_CONFIDENCE};
use simplexord::{
    classify_pair, comparability_prob, estimate_comparability, estimate_upper_prob, hr_upper_prob,
    simplex_volume, Error, EstimateReport, LatticeSpec, McConfig, OracleReport, OrderKind, SimplexPoint,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "simplexord",
    version,
    about = "Compare finite distributions under stochastic orders and estimate comparability probabilities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a pair of points under one order.
    #[command(allow_negative_numbers = true)]
    Compare(CompareArgs),
    /// Volume of the simplex of dimension n and scale u.
    #[command(allow_negative_numbers = true)]
    Volume(VolumeArgs),
    /// Closed-form probability that a uniform point dominates theta (hazard rate).
    #[command(allow_negative_numbers = true)]
    UpperProb(UpperProbArgs),
    /// Monte Carlo estimate of P(Theta <= Theta') for uniform points.
    #[command(allow_negative_numbers = true)]
    Estimate(EstimateArgs),
    /// Brute-force oracle value of the comparability probability.
    #[command(allow_negative_numbers = true)]
    Oracle(OracleArgs),
    /// CSV table of closed form vs estimate over a range of n.
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    St,
    Hr,
    Lr,
}

impl From<Order> for OrderKind {
    fn from(o: Order) -> Self {
        match o {
            Order::St => OrderKind::St,
            Order::Hr => OrderKind::Hr,
            Order::Lr => OrderKind::Lr,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Lattice,
    Quadrature,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long = "format", value_enum, default_value = "json")]
    pub output_format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct SamplingArgs {
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_CONFIDENCE)]
    pub confidence: f64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_CHUNK_SIZE)]
    pub chunk_size: u64,
}

impl SamplingArgs {
    fn config(&self) -> McConfig {
        McConfig::new(self.samples, self.seed)
            .with_confidence(self.confidence)
            .with_chunk_size(self.chunk_size)
    }
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[arg(long, value_enum, default_value = "hr")]
    pub order: Order,
    /// First point, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required_unless_present = "file"
    )]
    pub a: Vec<f64>,
    /// Second point, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required_unless_present = "file"
    )]
    pub b: Vec<f64>,
    /// File holding the two points on its first two non-empty lines.
    #[arg(long, conflicts_with_all = ["a", "b"])]
    pub file: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub u: f64,
    #[arg(long, default_value_t = 0.0)]
    pub eps: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VolumeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub u: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct UpperProbArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub theta: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub u: f64,
    /// Also estimate the probability by sampling this many points.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_CONFIDENCE)]
    pub confidence: f64,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_CHUNK_SIZE)]
    pub chunk_size: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct EstimateArgs {
    #[arg(long, value_enum)]
    pub order: Order,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub u: f64,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    #[arg(long, value_enum, default_value = "hr")]
    pub order: Order,
    #[arg(long)]
    pub n: usize,
    /// Lattice denominator m, or Gauss–Legendre points per axis.
    #[arg(long)]
    pub granularity: u64,
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub order: Order,
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1.0)]
    pub u: f64,
    #[command(flatten)]
    pub sampling: SamplingArgs,
}

/// One line of the sweep table.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub order: OrderKind,
    pub closed_form: f64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub samples: u64,
    pub seed: u64,
}

pub const SWEEP_HEADER: &str = "n,order,closed_form,p_hat,ci_low,ci_high,samples,seed";

/// CSV rendering of sweep rows. Floats use the shortest representation that
/// round-trips exactly, which never exceeds 17 significant digits.
pub fn render_sweep(rows: &[SweepRow]) -> Result<String, Error> {
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.n, r.order, r.closed_form, r.p_hat, r.ci_low, r.ci_high, r.samples, r.seed
        )
        .expect("writing to a String");
    }
    Ok(out)
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Validation(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Validation(e)
    }
}

/// Parses `argv` (program name first) and runs the subcommand, writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(
                err,
                "error: {msg}\n\nUsage: simplexord <COMMAND> [OPTIONS]   (see --help)"
            );
            EXIT_USAGE
        }
        Err(Failure::Validation(e)) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            EXIT_VALIDATION
        }
    }
}

fn dispatch(command: &Command) -> Result<String, Failure> {
    match command {
        Command::Compare(args) => compare(args),
        Command::Volume(args) => volume(args),
        Command::UpperProb(args) => upper_prob(args),
        Command::Estimate(args) => estimate(args),
        Command::Oracle(args) => oracle(args),
        Command::Sweep(args) => sweep(args),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn with_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, Failure> {
    let threads = threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn read_points(path: &PathBuf) -> Result<(Vec<f64>, Vec<f64>), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let mut parse = |which: &str| -> Result<Vec<f64>, Failure> {
        let line = lines
            .next()
            .ok_or_else(|| Failure::Usage(format!("{}: missing point {which}", path.display())))?;
        line.split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Failure::Usage(format!("{}: bad number `{s}`: {e}", path.display())))
            })
            .collect()
    };
    let a = parse("a")?;
    let b = parse("b")?;
    Ok((a, b))
}

fn compare(args: &CompareArgs) -> Result<String, Failure> {
    let (a, b) = match &args.file {
        Some(path) => read_points(path)?,
        None => (args.a.clone(), args.b.clone()),
    };
    if !(args.eps >= 0.0 && args.eps.is_finite()) {
        return Err(Failure::Usage("--eps must be a nonnegative number".into()));
    }
    let a = SimplexPoint::new(a, args.u)?;
    let b = SimplexPoint::new(b, args.u)?;
    let order = OrderKind::from(args.order);
    let class = classify_pair(&a, &b, order, args.eps)?;
    Ok(match args.output.output_format {
        OutputFormat::Text => format!("{class}\n"),
        OutputFormat::Json => to_json(&json!({
            "order": order,
            "n": a.dim(),
            "u": args.u,
            "eps": args.eps,
            "a": a.coords(),
            "b": b.coords(),
            "classification": class,
        })),
    })
}

fn volume(args: &VolumeArgs) -> Result<String, Failure> {
    let v = simplex_volume(args.n, args.u)?;
    Ok(match args.output.output_format {
        OutputFormat::Text => format!("{v}\n"),
        OutputFormat::Json => to_json(&json!({ "n": args.n, "u": args.u, "volume": v })),
    })
}

fn upper_prob(args: &UpperProbArgs) -> Result<String, Failure> {
    let theta = SimplexPoint::new(args.theta.clone(), args.u)?;
    let value = hr_upper_prob(&theta)?;
    let estimate = match args.samples {
        Some(samples) => {
            let cfg = McConfig::new(samples, args.seed)
                .with_confidence(args.confidence)
                .with_chunk_size(args.chunk_size);
            let r = with_pool(args.threads, || estimate_upper_prob(OrderKind::Hr, &theta, &cfg))??;
            Some(EstimateReport::new(
                OrderKind::Hr,
                theta.dim(),
                theta.scale(),
                &cfg,
                &r,
            ))
        }
        None => None,
    };
    Ok(match args.output.output_format {
        OutputFormat::Text => match &estimate {
            Some(e) => format!("{value} {} [{}, {}]\n", e.p_hat, e.ci_low, e.ci_high),
            None => format!("{value}\n"),
        },
        OutputFormat::Json => {
            let mut obj = json!({
                "order": OrderKind::Hr,
                "n": theta.dim(),
                "u": theta.scale(),
                "theta": theta.coords(),
                "value": value,
            });
            if let Some(e) = estimate {
                obj["estimate"] = serde_json::to_value(e).expect("report serializes");
            }
            to_json(&obj)
        }
    })
}

fn estimate(args: &EstimateArgs) -> Result<String, Failure> {
    let order = OrderKind::from(args.order);
    let cfg = args.sampling.config();
    let r = with_pool(args.sampling.threads, || {
        estimate_comparability(order, args.n, args.u, &cfg)
    })??;
    let report = EstimateReport::new(order, args.n, args.u, &cfg, &r);
    Ok(match args.output.output_format {
        OutputFormat::Text => format!(
            "{} n={} p_hat={} ci=[{}, {}] hits={}/{} seed={}\n",
            order, args.n, r.p_hat, r.ci_low, r.ci_high, r.hits, r.samples, r.seed
        ),
        OutputFormat::Json => to_json(&report),
    })
}

fn oracle(args: &OracleArgs) -> Result<String, Failure> {
    let order = OrderKind::from(args.order);
    let report = match args.method {
        Method::Lattice => {
            let spec = LatticeSpec::new(order, args.n, args.granularity);
            with_pool(args.threads, || OracleReport::lattice(&spec))??
        }
        Method::Quadrature => {
            if order != OrderKind::Hr {
                return Err(Failure::Usage(
                    "quadrature is available for --order hr only".into(),
                ));
            }
            let points = usize::try_from(args.granularity)
                .map_err(|_| Failure::Usage("--granularity is too large".into()))?;
            with_pool(args.threads, || OracleReport::quadrature(args.n, points))??
        }
    };
    Ok(match args.output.output_format {
        OutputFormat::Text => format!("{}\n", report.value),
        OutputFormat::Json => to_json(&report),
    })
}

fn sweep(args: &SweepArgs) -> Result<String, Failure> {
    if args.n_min > args.n_max {
        return Err(Failure::Usage("--n-min must not exceed --n-max".into()));
    }
    let order = OrderKind::from(args.order);
    let cfg = args.sampling.config();
    let rows = with_pool(args.sampling.threads, || {
        (args.n_min..=args.n_max)
            .map(|n| {
                let closed_form = comparability_prob(order, n)?;
                let r = estimate_comparability(order, n, args.u, &cfg)?;
                Ok(SweepRow {
                    n,
                    order,
                    closed_form,
                    p_hat: r.p_hat,
                    ci_low: r.ci_low,
                    ci_high: r.ci_high,
                    samples: r.samples,
                    seed: r.seed,
                })
            })
            .collect::<Result<Vec<_>, Error>>()
    })??;
    Ok(render_sweep(&rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(n: usize, order: OrderKind, closed_form: f64) -> SweepRow {
        SweepRow {
            n,
            order,
            closed_form,
            p_hat: 0.1,
            ci_low: 0.05,
            ci_high: 0.15,
            samples: 100,
            seed: 7,
        }
    }

    #[test]
    fn sweep_rows() {
        let csv = render_sweep(&[row(3, OrderKind::Hr, 0.25)]).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(SWEEP_HEADER));
        assert!(lines.next().unwrap().starts_with("3,hr,0.25,"));
        let csv = render_sweep(&[row(5, OrderKind::St, 1.0 / 5.0)]).unwrap();
        assert!(csv.lines().nth(1).unwrap().starts_with("5,st,0.2,"));
        assert_eq!(render_sweep(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn sweep_numbers_round_trip() {
        let x = 1.0 / 3.0;
        let csv = render_sweep(&[row(4, OrderKind::Lr, x)]).unwrap();
        let field = csv.lines().nth(1).unwrap().split(',').nth(2).unwrap();
        assert_eq!(field.parse::<f64>().unwrap().to_bits(), x.to_bits());
        let digits = field.trim_start_matches("0.").len();
        assert!(digits <= 17);
    }
}
