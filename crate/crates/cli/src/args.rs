use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;
use spectral_nil::{SpinDelta, TorusDelta};

use crate::document::Format;

#[derive(Debug, Parser)]
#[command(name = "spectral-nil", version, about = "Exact Dirac spectra, collapse reports and numerical oracles")]
pub struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum of the Heisenberg manifold M(r, d, T).
    Heisenberg(HeisenbergCmd),
    /// Spectrum of the flat torus base.
    Torus(TorusCmd),
    /// Spectrum of the Berger sphere S^{2m+1}.
    Berger(BergerCmd),
    /// Spectrum of CP^m, m odd.
    Cpm(CpmCmd),
    /// Collapse reports along a shrinking fiber.
    #[command(subcommand)]
    Collapse(CollapseCmd),
    /// Numerical oracles.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// The seven-dimensional deformation family.
    #[command(subcommand)]
    Gornet(GornetCmd),
    /// Completeness audit of a generator.
    Audit(AuditCmd),
}

#[derive(Debug, Clone, Args)]
pub struct HeisenbergParams {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub d: f64,
    #[arg(long = "T", value_name = "T")]
    pub t: f64,
    /// Spin structure (δ₁δ₂δ₃) over {+,-}, e.g. `+-+`.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: SpinDelta,
}

#[derive(Debug, Clone, Args)]
pub struct TorusParams {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub d: f64,
    /// Spin structure (δ₁δ₂), e.g. `+-`.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: TorusDelta,
}

#[derive(Debug, Clone, Args)]
pub struct BergerParams {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub ell: f64,
}

#[derive(Debug, Clone, Args)]
pub struct CpmParams {
    #[arg(long)]
    pub m: u32,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumOpts {
    /// Keep eigenvalues with |λ| ≤ Λ.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_max: f64,
    /// Fold values closer than X into one entry.
    #[arg(long, value_name = "X")]
    pub merge_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct HeisenbergCmd {
    #[command(flatten)]
    pub params: HeisenbergParams,
    #[command(flatten)]
    pub opts: SpectrumOpts,
}

#[derive(Debug, Args)]
pub struct TorusCmd {
    #[command(flatten)]
    pub params: TorusParams,
    #[command(flatten)]
    pub opts: SpectrumOpts,
}

#[derive(Debug, Args)]
pub struct BergerCmd {
    #[command(flatten)]
    pub params: BergerParams,
    #[command(flatten)]
    pub opts: SpectrumOpts,
}

#[derive(Debug, Args)]
pub struct CpmCmd {
    #[command(flatten)]
    pub params: CpmParams,
    #[command(flatten)]
    pub opts: SpectrumOpts,
}

#[derive(Debug, Subcommand)]
pub enum CollapseCmd {
    /// Heisenberg manifolds as T decreases.
    Heisenberg {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        d: f64,
        #[arg(long, allow_hyphen_values = true)]
        delta: SpinDelta,
        /// Strictly decreasing fiber lengths, comma separated.
        #[arg(long = "T", value_name = "T,...", value_delimiter = ',', required = true)]
        t: Vec<f64>,
        #[arg(long)]
        lambda_max: f64,
    },
    /// Berger spheres as ℓ decreases.
    Berger {
        #[arg(long)]
        m: u32,
        /// Strictly decreasing ℓ values, comma separated.
        #[arg(long, value_name = "ELL,...", value_delimiter = ',', required = true)]
        ell: Vec<f64>,
        #[arg(long)]
        lambda_max: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCmd {
    /// 2×2 fiber block against the closed form.
    Block {
        #[arg(long, allow_hyphen_values = true)]
        tau: Rational64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d: f64,
        #[arg(long = "T", value_name = "T")]
        t: f64,
    },
    /// Finite-difference fiber operator, smallest |λ| first.
    Fd {
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        d: f64,
        #[arg(long = "T", value_name = "T")]
        t: f64,
        #[arg(long, default_value_t = 800)]
        n: usize,
        #[arg(long)]
        half_width: Option<f64>,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Fiber length at which λ⁺_{τ,k} vanishes.
    Harmonic {
        #[arg(long, allow_hyphen_values = true)]
        tau: Rational64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum GornetCmd {
    /// Lattice scan for points whose fiber spectrum moves with s.
    Scan {
        #[arg(long = "box", value_name = "B")]
        bound: u32,
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, default_value_t = 1e-3)]
        eig_tol: f64,
    },
    /// Characteristic polynomial of the computed operator against the reference matrix.
    Compare {
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// s-derivative of the fiber determinant at s = 0.
    Delta {
        #[arg(long, value_name = "T1,T2,T3,T4", value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
        tau: Vec<f64>,
        #[arg(long, default_value_t = 1e-4)]
        h: f64,
    },
}

#[derive(Debug, Args)]
pub struct AuditCmd {
    #[arg(long, default_value_t = 2.0)]
    pub margin: f64,
    #[command(subcommand)]
    pub target: AuditTarget,
}

#[derive(Debug, Subcommand)]
pub enum AuditTarget {
    Heisenberg {
        #[command(flatten)]
        params: HeisenbergParams,
        #[arg(long)]
        lambda_max: f64,
    },
    Torus {
        #[command(flatten)]
        params: TorusParams,
        #[arg(long)]
        lambda_max: f64,
    },
    Berger {
        #[command(flatten)]
        params: BergerParams,
        #[arg(long)]
        lambda_max: f64,
    },
    Cpm {
        #[command(flatten)]
        params: CpmParams,
        #[arg(long)]
        lambda_max: f64,
    },
}
