//! `hamlab`: runs the Monte Carlo experiments and writes CSV reports.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hamlab::experiments::{self, ExperimentConfig, ExperimentReport};
use hamlab::{Error, WeightDistribution};

#[derive(Parser)]
#[command(name = "hamlab", version, about = "Hammersley last-passage experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shape constant from L(0,(r,r))/r.
    Gamma(Common),
    /// Busemann fluctuations along rays of angle β.
    Clt(Common),
    /// Invariance of Poisson initial measures under the fluid.
    Equilibrium(Common),
    /// Variance of the boundary passage time against the exit point.
    Crossing(Common),
    /// Product of the horizontal and vertical Busemann intensities.
    Product(Common),
    /// Speed of the second-class particle.
    SecondClass(Common),
    /// Order preservation under the basic coupling.
    Multiclass(Common),
    /// Replays a fluid scenario (the bundled example by default).
    FluidReplay(Common),
    /// Lattice model with exponential weights.
    Tasep(Common),
    /// Fluid evolution against last-passage differencing.
    Duality(Common),
    /// Additivity and anti-symmetry of Busemann estimates.
    Algebra(Common),
    /// Variational identity for Busemann functions.
    Markov(Common),
    /// Law of the second-class particle against the exit point.
    Identity(Common),
    /// Sublinear growth of exit points.
    Exit(Common),
}

#[derive(Args)]
struct Common {
    /// Base seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Replicate count.
    #[arg(long)]
    reps: Option<usize>,
    /// CSV output path; the report goes to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON file with experiment parameters.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Weight law: delta1, exponential[:mean] or table:q0,q1,...
    #[arg(long)]
    dist: Option<String>,
    /// Direction angle in (π, 3π/2).
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Exit with status 3 if an acceptance check fails.
    #[arg(long)]
    check: bool,
}

impl Command {
    fn split(self) -> (&'static str, Common) {
        match self {
            Command::Gamma(c) => ("gamma", c),
            Command::Clt(c) => ("clt", c),
            Command::Equilibrium(c) => ("equilibrium", c),
            Command::Crossing(c) => ("crossing", c),
            Command::Product(c) => ("product", c),
            Command::SecondClass(c) => ("second-class", c),
            Command::Multiclass(c) => ("multiclass", c),
            Command::FluidReplay(c) => ("fluid-replay", c),
            Command::Tasep(c) => ("tasep", c),
            Command::Duality(c) => ("duality", c),
            Command::Algebra(c) => ("algebra", c),
            Command::Markov(c) => ("markov", c),
            Command::Identity(c) => ("identity", c),
            Command::Exit(c) => ("exit", c),
        }
    }
}

const EXIT_PARAM: u8 = 2;
const EXIT_CHECK: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parameter(_) | Error::Domain(_) | Error::Window(_) | Error::Json(_) | Error::Format { .. } => EXIT_PARAM,
        Error::Io { .. } | Error::Csv(_) => 1,
    }
}

fn build_config(name: &str, c: &Common) -> Result<ExperimentConfig, Error> {
    let mut cfg = match &c.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(e) = &cfg.experiment {
        if e != name {
            return Err(Error::Parameter(format!("config is for experiment {e:?}, not {name:?}")));
        }
    }
    if c.seed.is_some() {
        cfg.seed = c.seed;
    }
    if c.reps.is_some() {
        cfg.reps = c.reps;
    }
    if let Some(d) = &c.dist {
        cfg.dist = Some(d.parse::<WeightDistribution>()?);
    }
    if c.alpha.is_some() {
        cfg.alpha = c.alpha;
    }
    Ok(cfg)
}

fn run(name: &str, c: &Common) -> Result<ExperimentReport, Error> {
    let cfg = build_config(name, c)?;
    let report = experiments::run(name, &cfg)?;
    let out = c.out.clone().or_else(|| cfg.output.as_ref().map(PathBuf::from));
    match out {
        Some(path) => {
            report.write_csv(&path)?;
            println!("{}", report.summary_text());
        }
        None => print!("{}", report.to_csv()?),
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common) = cli.command.split();
    match run(name, &common) {
        Ok(report) => {
            if common.check && !report.passed() {
                for c in report.checks.iter().filter(|c| !c.passed) {
                    eprintln!("check failed: {} = {} not in [{}, {}]", c.name, c.value, c.lo, c.hi);
                }
                return ExitCode::from(EXIT_CHECK);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("hamlab: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
