use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "sunff", version, about = "SU(n) irreps, oscillator fast-forwarding and quantum expanders")]
pub struct Cli {
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true, env = "SUNFF_THREADS")]
    pub threads: Option<usize>,

    /// Validate the configuration and print what would run, without computing.
    #[arg(long, global = true)]
    pub dry_run: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Rank of a composition in descending lexicographic order.
    Rank(RankArgs),
    /// Composition with a given rank.
    Unrank(UnrankArgs),
    /// Irrep dimension and basis, optionally one generator's matrix entries.
    Irrep(IrrepArgs),
    /// Euler decomposition of exp(i sum angles * generators) in the defining representation.
    Decompose(DecomposeArgs),
    /// Oscillator monomial plan from a decomposition CSV.
    Plan(PlanArgs),
    /// Discrete oscillator residuals over grids of L and m.
    QhoResiduals(QhoArgs),
    /// Emulate the oscillator circuit and compare with the exact irrep unitary.
    Simulate(SimulateArgs),
    /// Spectral error against grid size, with a log-linear fit.
    Sweep(SweepArgs),
    /// Spectral gaps of the quaternion expander channels.
    Expander(ExpanderArgs),
    /// Kicked-top Floquet iteration through the emulated rotation.
    KickedTop(KickedTopArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct ShapeArgs {
    /// Number of modes n of SU(n).
    #[arg(long)]
    pub n: usize,
    /// Total boson number M.
    #[arg(long = "M")]
    #[serde(rename = "M")]
    pub bosons: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct RankArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub shape: ShapeArgs,
    /// Occupation numbers, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub parts: Vec<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct UnrankArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub shape: ShapeArgs,
    #[arg(long)]
    pub ell: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct IrrepArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub shape: ShapeArgs,
    /// Emit this generator's nonzero entries instead of the basis: `E1,2`, `H1`, `S1,2` or `A1,2`.
    #[arg(long)]
    pub generator: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Where the angles come from: a file, or a seeded random draw.
#[derive(Debug, Args, Serialize)]
pub struct AngleSource {
    /// Plain text, one `kind j k value` line per angle with kind in {H, S, A}.
    #[arg(long)]
    pub angles_file: Option<PathBuf>,
    /// Seed for uniform random angles when no file is given.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub angles: AngleSource,
    /// Reconstruction tolerance in the defining representation.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct PlanArgs {
    #[arg(long)]
    pub n: usize,
    /// Decomposition CSV as written by `decompose`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Eigen,
    Fourier,
    Matelem,
}

#[derive(Debug, Args, Serialize)]
pub struct QhoArgs {
    /// Grid sizes, comma separated; each must be even.
    #[arg(long = "L-list", value_delimiter = ',', required = true)]
    #[serde(rename = "L_list")]
    pub l_list: Vec<usize>,
    /// Hermite indices, comma separated.
    #[arg(long = "m-list", value_delimiter = ',', required = true)]
    pub m_list: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Quantity::Eigen)]
    pub quantity: Quantity,
    /// Bra indices for `matelem`; defaults to the m list.
    #[arg(long = "m-prime-list", value_delimiter = ',')]
    pub m_prime_list: Vec<usize>,
    /// Position power for `matelem`.
    #[arg(long, default_value_t = 0)]
    pub a: u32,
    /// Momentum power for `matelem`.
    #[arg(long, default_value_t = 0)]
    pub b: u32,
    /// CSV rows, one per (L, m) or (L, m, m') combination.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CapArgs {
    /// Cap on L^n grid entries.
    #[arg(long, default_value_t = 1 << 26, value_parser = positive)]
    pub memory_cap: usize,
    /// Cap on N for dense N x N matrices.
    #[arg(long, default_value_t = 4096, value_parser = positive)]
    pub dense_cap: usize,
    /// Columns leaking more norm than this are flagged.
    #[arg(long, default_value_t = 1e-6)]
    pub leakage_threshold: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub shape: ShapeArgs,
    /// Grid size per oscillator.
    #[arg(long = "L")]
    #[serde(rename = "L")]
    pub l: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub angles: AngleSource,
    #[command(flatten)]
    #[serde(flatten)]
    pub caps: CapArgs,
    /// Simulated unitary as CSV rows (ell, ell_prime, re, im).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON summary; printed to stdout when absent.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub shape: ShapeArgs,
    /// Grid sizes, comma separated; at least three.
    #[arg(long = "L-list", value_delimiter = ',', required = true)]
    #[serde(rename = "L_list")]
    pub l_list: Vec<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub angles: AngleSource,
    #[command(flatten)]
    #[serde(flatten)]
    pub caps: CapArgs,
    /// JSON fit result; printed to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ExpanderArgs {
    /// Prime p; the channel has p + 1 Kraus unitaries.
    #[arg(long)]
    pub p: u64,
    /// Irrep dimensions N; `a,b,...,c` with a literal `...` expands an arithmetic range.
    #[arg(long = "N-list", value_delimiter = ',', required = true)]
    #[serde(rename = "N_list")]
    pub n_list: Vec<String>,
    /// Build the unitaries through the grid emulation at this L instead of dense exponentials.
    #[arg(long = "pipeline-L")]
    #[serde(rename = "pipeline_L")]
    pub pipeline_l: Option<usize>,
    /// CSV rows (N, lambda, bound, margin).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the unitaries as CSV rows (N, d, row, col, re, im).
    #[arg(long)]
    pub emit_unitaries: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct KickedTopArgs {
    /// Spin is M/2.
    #[arg(long = "M")]
    #[serde(rename = "M")]
    pub bosons: usize,
    /// Rotation angle about the y axis.
    #[arg(long)]
    pub gamma: f64,
    /// Twist strength of exp(-i beta J_z^2).
    #[arg(long)]
    pub beta: f64,
    /// Number of Floquet steps.
    #[arg(long)]
    pub steps: usize,
    /// Grid size per oscillator.
    #[arg(long = "L")]
    #[serde(rename = "L")]
    pub l: usize,
    /// CSV rows (step, ell, re, im).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}
