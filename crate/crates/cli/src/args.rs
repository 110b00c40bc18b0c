//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use sklyanin_core::leafdim::catalog::Example;
use sklyanin_core::rmatrix::C64;
use sklyanin_core::Q;

#[derive(Debug, Parser)]
#[command(name = "sklyanin", version, about = "Root data, elliptic r-matrices and leaf dimensions for elliptic Sklyanin systems")]
pub struct Cli {
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root system data.
    Rootsys {
        #[command(subcommand)]
        command: RootsysCommand,
    },
    /// Symplectic leaf dimension `2 dim z + Σ γ`.
    LeafDim(DataArgs),
    /// Hecke correspondence dimension `dim z + Σ γ`.
    HeckeDim(DataArgs),
    /// Simple roots whose fundamental coweight takes values in {0, ±1} on roots.
    ClassifyParabolics(ClassifyArgs),
    /// Elliptic function checks.
    Ellfun {
        #[command(subcommand)]
        command: EllfunCommand,
    },
    /// Numerical check of the classical dynamical Yang-Baxter equation.
    CdybeCheck(CdybeArgs),
    /// Checks of the loop-algebra projections built from the r-matrix.
    ProjectCheck(ProjectArgs),
    /// Genus bookkeeping for the spectral-curve examples.
    Genus(GenusArgs),
    /// Rank-2 cones and rays of the local toric models.
    Toric {
        #[command(subcommand)]
        command: ToricCommand,
    },
    /// Fundamental-group and linear-equivalence conditions for singularity data.
    DivisorEquiv(DivisorArgs),
}

#[derive(Debug, Subcommand)]
pub enum RootsysCommand {
    Info(TypeArgs),
}

#[derive(Debug, Args)]
pub struct TypeArgs {
    /// Family letter A-G.
    #[arg(long = "type")]
    pub family: String,
    #[arg(long)]
    pub rank: usize,
    /// For type A: use gl(rank+1) coordinates.
    #[arg(long)]
    pub gl: bool,
}

#[derive(Debug, Args)]
#[group(skip)]
pub struct DataSource {
    /// Singularity data in JSON.
    #[arg(long, conflicts_with = "example", required_unless_present = "example")]
    pub file: Option<PathBuf>,
    /// Built-in example: calogero, grassmannian, quadric, isotropic.
    #[arg(long)]
    pub example: Option<Example>,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Grassmannian index.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Modulus for built-in examples, as `re,im`.
    #[arg(long, value_parser = parse_complex, default_value = "0,1")]
    pub tau: C64,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    #[command(flatten)]
    pub source: DataSource,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long = "type", requires = "rank")]
    pub family: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Table of every type up to this rank when no type is given.
    #[arg(long, default_value_t = 8)]
    pub max_rank: usize,
}

#[derive(Debug, Subcommand)]
pub enum EllfunCommand {
    /// Periodicities, oddness and residues at random points.
    Check(EllfunArgs),
}

#[derive(Debug, Args)]
pub struct EllfunArgs {
    #[arg(long, value_parser = parse_complex, default_value = "0,1")]
    pub tau: C64,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub residue_tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CdybeArgs {
    /// sl2, sl3 or sln:N.
    #[arg(long, value_parser = parse_algebra, default_value = "sl2")]
    pub algebra: usize,
    #[arg(long, value_parser = parse_complex, default_value = "0,1")]
    pub tau: C64,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    #[arg(long, value_parser = parse_algebra, default_value = "sl2")]
    pub algebra: usize,
    #[arg(long, value_parser = parse_complex, default_value = "0,1")]
    pub tau: C64,
    /// Largest power of z in the random Laurent elements.
    #[arg(long, default_value_t = 5)]
    pub degree: i32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GenusArgs {
    #[arg(long)]
    pub example: Example,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Debug, Subcommand)]
pub enum ToricCommand {
    /// Dual cone, Hilbert basis and binomial relation of the SL(2) model.
    Hilbert {
        #[arg(long)]
        k: i64,
    },
    /// Rays `(1, a)` for `a` in a Weyl orbit.
    Rays(RaysArgs),
}

#[derive(Debug, Args)]
pub struct RaysArgs {
    #[arg(long = "type")]
    pub family: String,
    #[arg(long)]
    pub rank: usize,
    /// Comma-separated rationals.
    #[arg(long, value_parser = parse_rational, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub coweight: Vec<Q>,
    /// fundamental_coweight or ambient.
    #[arg(long, default_value = "fundamental_coweight")]
    pub basis: String,
    /// simply_connected, adjoint or integral.
    #[arg(long, default_value = "adjoint")]
    pub lattice: String,
}

#[derive(Debug, Args)]
pub struct DivisorArgs {
    #[command(flatten)]
    pub source: DataSource,
    /// Moves the last singular point by `(ε, ε/2)` in lattice coordinates,
    /// and the 2-torsion candidates by the same amount.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub perturb: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

pub fn parse_complex(s: &str) -> Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [re, im] = parts[..] else {
        return Err(format!("expected 're,im', got '{s}'"));
    };
    let re: f64 = re.parse().map_err(|_| format!("bad real part '{re}'"))?;
    let im: f64 = im.parse().map_err(|_| format!("bad imaginary part '{im}'"))?;
    Ok(C64::new(re, im))
}

pub fn parse_algebra(s: &str) -> Result<usize, String> {
    let n = match s.trim().to_ascii_lowercase().as_str() {
        "sl2" => 2,
        "sl3" => 3,
        other => other
            .strip_prefix("sln:")
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| format!("expected sl2, sl3 or sln:N, got '{s}'"))?,
    };
    if n < 2 {
        return Err(format!("sl_n needs n >= 2, got {n}"));
    }
    Ok(n)
}

pub fn parse_rational(s: &str) -> Result<Q, String> {
    s.trim().parse::<Q>().map_err(|_| format!("bad rational '{s}'"))
}
