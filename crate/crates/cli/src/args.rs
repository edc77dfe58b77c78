use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "equitri",
    version,
    about = "Exact quantum mechanics of the equilateral-triangle billiard"
)]
pub struct Cli {
    /// Report dimensional outputs in SI units for an electron.
    #[arg(long, global = true)]
    pub si: bool,

    /// Triangle side in metres used by --si.
    #[arg(long, global = true, default_value_t = 1e-9, value_name = "METRES")]
    pub side: f64,

    /// Output path; stdout when omitted.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantArg {
    Full,
    Half,
}

impl From<VariantArg> for equitri::Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Full => equitri::Variant::Full,
            VariantArg::Half => equitri::Variant::Half,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumVariant {
    Full,
    Half,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SymArg {
    Minus,
    Plus,
    Special,
}

impl From<SymArg> for equitri::Symmetry {
    fn from(s: SymArg) -> Self {
        match s {
            SymArg::Minus => equitri::Symmetry::Minus,
            SymArg::Plus => equitri::Symmetry::Plus,
            SymArg::Special => equitri::Symmetry::Special,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lowest energy levels.
    Spectrum {
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, value_enum, default_value = "full")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Level staircase against the smooth Weyl count.
    Weyl {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, value_enum, default_value = "full")]
        variant: VariantArg,
    },
    /// Eigenfunction values on a grid.
    Eigfun {
        #[arg(long, required_unless_present = "preset")]
        m: Option<u32>,
        #[arg(long, required_unless_present = "preset")]
        n: Option<u32>,
        #[arg(long, value_enum, default_value = "minus")]
        sym: SymArg,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        /// Points per axis over the bounding box.
        #[arg(long, default_value_t = 200)]
        grid: usize,
        /// `paper-fig2` emits all nodal-pattern states.
        #[arg(long)]
        preset: Option<String>,
    },
    /// Primitive closed-orbit families.
    Orbits {
        #[arg(long, default_value_t = 20.0)]
        lmax: f64,
        #[arg(long, value_enum, default_value = "full")]
        variant: VariantArg,
        /// Also list the isolated orbits.
        #[arg(long)]
        with_isolated: bool,
    },
    /// Length spectrum `|ρ_N(L)|²` and its peaks.
    LengthSpectrum {
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long, value_enum)]
        variant: Option<SpectrumVariant>,
        #[arg(long)]
        lmin: Option<f64>,
        #[arg(long)]
        lmax: Option<f64>,
        #[arg(long)]
        dl: Option<f64>,
        /// Peak threshold in multiples of the median power.
        #[arg(long, default_value_t = equitri::length_spectrum::DEFAULT_PROMINENCE)]
        prominence: f64,
        /// Peak-to-orbit matching tolerance in units of `a`.
        #[arg(long, default_value_t = equitri::length_spectrum::DEFAULT_MATCH_TOLERANCE)]
        tolerance: f64,
        /// Write the peak report (JSON) here.
        #[arg(long)]
        peaks: Option<PathBuf>,
        /// `paper-fig5` or `paper-fig7`.
        #[arg(long)]
        preset: Option<String>,
    },
    /// Expansion coefficients of a Gaussian packet.
    Expand {
        #[command(flatten)]
        packet: PacketArgs,
        /// Omit coefficients with `|a|²` below this.
        #[arg(long, default_value_t = 1e-20)]
        min_weight: f64,
    },
    /// Autocorrelation `A(t)`.
    Autocorr {
        #[command(flatten)]
        packet: PacketArgs,
        /// Comma-separated launch angles (degrees); overrides --theta.
        #[arg(long, value_delimiter = ',')]
        thetas: Option<Vec<f64>>,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// `|A|` at fractions of the revival time.
    Revivals {
        #[command(flatten)]
        packet: PacketArgs,
        #[arg(long, value_delimiter = ',', default_values_t = equitri::wavepacket::DEFAULT_FRACTIONS)]
        fractions: Vec<u32>,
        #[arg(long, default_value_t = equitri::wavepacket::DEFAULT_REVIVAL_THRESHOLD)]
        threshold: f64,
    },
    /// Probability density snapshot.
    Density {
        #[command(flatten)]
        packet: PacketArgs,
        /// Time in output units.
        #[arg(long, conflicts_with = "t_over_trev")]
        t: Option<f64>,
        /// Time as a fraction of the revival time.
        #[arg(long)]
        t_over_trev: Option<f64>,
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Integer quantum-number map `T_(p,q)[m,n]`.
    Transform {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
}

/// Packet and billiard selection shared by the wave-packet commands.
/// Unset values come from the preset, then from the defaults
/// (centroid, `p₀ = 0`, `b = 1/(10√2)`).
#[derive(Debug, Default, Args, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketArgs {
    /// TOML file holding packet options as keys (x0, theta, preset, ...); flags win.
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    #[arg(long, allow_negative_numbers = true)]
    pub x0: Option<f64>,
    #[arg(long)]
    pub y0: Option<f64>,
    #[arg(long)]
    pub p0: Option<f64>,
    /// Launch angle in degrees.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    /// Largest `ε` kept; automatic when omitted.
    #[arg(long)]
    pub eps_max: Option<u64>,
}

#[derive(Debug, Args)]
pub struct WindowArgs {
    /// Window end in output time units.
    #[arg(long, conflicts_with_all = ["tmax_tau", "tmax_trev"])]
    pub tmax: Option<f64>,
    /// Window end in units of `τ = a/v₀`.
    #[arg(long, conflicts_with = "tmax_trev")]
    pub tmax_tau: Option<f64>,
    /// Window end in units of the revival time.
    #[arg(long)]
    pub tmax_trev: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
}
