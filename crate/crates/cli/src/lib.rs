//! The `cuspgeom` command line.
//!
//! Every subcommand builds one JSON value; `--json` prints it as is, and
//! otherwise it is flattened into `key  value` lines with 12 significant
//! digits. Files written with `--out` carry full precision.
//!
//! Exit status: 0 on success, 2 when the input is rejected or a computation
//! fails, 3 when a verification report does not pass, 64 on usage errors.

mod commands;
pub mod output;

use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "cuspgeom",
    version,
    about = "Geometry of cusped hyperbolic 3-manifolds: tubes, warped metrics, minimal graphs, fillers, area bounds and sweep-outs"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Print machine-readable JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Residual tolerance for `graph solve`.
    #[arg(long, global = true, value_parser = positive)]
    pub tol: Option<f64>,
    /// Seed for the randomized utilities (`lattice --random`).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tube around a short geodesic: radius, boundary torus, its curvature.
    Tube {
        #[arg(long)]
        length: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        twist: f64,
        /// Defaults to the Meyerhoff radius.
        #[arg(long)]
        radius: Option<f64>,
    },
    /// Meyerhoff embedded-tube radius for a geodesic length.
    Meyerhoff {
        #[arg(long)]
        length: f64,
    },
    /// Minimal graphs in warped metrics.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Filler metrics on solid tori.
    #[command(subcommand)]
    Filler(FillerCommand),
    /// Area bounds.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Sweep-out profiles and discrete families.
    #[command(subcommand)]
    Sweepout(SweepoutCommand),
    /// Reduced basis, systole and diameter of flat tori.
    Lattice {
        /// Lattice literal `a1,a2,b2`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "random")]
        lattice: Option<String>,
        /// Summarize this many random lattices (see `--seed`).
        #[arg(long)]
        random: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GraphCommand {
    /// Solves the minimal surface equation and writes `u` as CSV.
    Solve {
        /// Metric descriptor JSON.
        #[arg(long)]
        metric: PathBuf,
        #[arg(long, value_enum, default_value_t = DomainKind::Torus)]
        domain: DomainKind,
        /// Nodes per axis, `N1xN2`.
        #[arg(long, value_parser = parse_grid, default_value = "32x32")]
        grid: (usize, usize),
        /// Boundary data and initial guess JSON.
        #[arg(long)]
        bc: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 60)]
        max_iterations: usize,
    },
    /// Measures the hypothesis constants of a metric on a sample grid.
    Hypotheses {
        #[arg(long)]
        metric: PathBuf,
        #[arg(long, default_value_t = 16)]
        grid: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DomainKind {
    Torus,
    Rect,
}

#[derive(Debug, Subcommand)]
pub enum FillerCommand {
    /// Writes a filler spec as JSON.
    Build {
        #[arg(long = "L")]
        l: f64,
        #[arg(long, default_value = "1,0,1", allow_hyphen_values = true)]
        lattice: String,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks a filler spec and prints its area lower bound.
    Verify {
        file: PathBuf,
        /// Number of sampled levels.
        #[arg(long, default_value_t = 200)]
        grid: usize,
        /// Monotonicity constant.
        #[arg(long, default_value_t = cuspgeom::filler::DEFAULT_MONOTONICITY_CONSTANT)]
        c: f64,
    },
    /// Level tori of a filler as CSV: `t,f,systole,diameter,area`.
    Export {
        file: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum BoundsCommand {
    /// Area of the hyperbolic disk of radius R.
    Disk {
        #[arg(long = "R")]
        r: f64,
    },
    /// Area of an annulus crossing the band between two tube levels.
    Band {
        #[arg(long)]
        rho1: f64,
        #[arg(long)]
        rho2: f64,
        #[arg(long)]
        sys: f64,
        #[arg(long = "RL")]
        rl: f64,
    },
    /// Area of a surface reaching depth R into a tube.
    Crossing {
        #[arg(long = "R")]
        r: f64,
        #[arg(long = "RL")]
        rl: f64,
        #[arg(long)]
        sys: f64,
        #[arg(long, default_value_t = 1.0)]
        kpp: f64,
    },
    /// Area of a minimal surface through a point of injectivity radius ε.
    Margulis {
        #[arg(long, default_value_t = cuspgeom::bounds::MARGULIS_CONSTANT)]
        eps: f64,
    },
    /// Gauss–Bonnet area of a closed minimal surface.
    Euler {
        #[arg(long, allow_negative_numbers = true)]
        chi: i64,
    },
    /// Singular values of the projection from a tube onto a level torus.
    Projection {
        #[arg(long)]
        length: f64,
        /// Comma-separated radii.
        #[arg(long, value_delimiter = ',', required = true)]
        radii: Vec<f64>,
        #[arg(long, default_value_t = 50)]
        z_samples: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum SweepoutCommand {
    /// Area profile of the standard sweep-out of a manifold description.
    Profile {
        #[arg(long)]
        manifold: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Defaults to json under `--json`, csv otherwise.
        #[arg(long, value_enum)]
        emit: Option<Emit>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fineness and maximal mass of a discrete family.
    Fineness {
        #[arg(long)]
        family: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Emit {
    Csv,
    Json,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be positive".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or("expected N1xN2")?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((n(a)?, n(b)?))
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    Domain(String),
    Verification(String),
    /// Stdout was closed early, as in `cuspgeom ... | head`.
    BrokenPipe,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => EXIT_DOMAIN,
            Failure::Verification(_) => EXIT_VERIFICATION,
            Failure::BrokenPipe => 0,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Domain(m) => write!(f, "error: {m}"),
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::BrokenPipe => write!(f, "broken pipe"),
        }
    }
}

impl From<cuspgeom::Error> for Failure {
    fn from(e: cuspgeom::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::BrokenPipe;
        }
        Failure::Domain(e.to_string())
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    match commands::dispatch(&cli, out) {
        Ok(()) => 0,
        Err(Failure::BrokenPipe) => 0,
        Err(f) => {
            let _ = writeln!(err, "{f}");
            f.code()
        }
    }
}
