//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "dualkit", version, about = "Power-law duality toolkit", propagate_version = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Atomic units, m = ħ = e = 1.
    #[arg(long, global = true, conflicts_with_all = ["m", "hbar", "e2"])]
    pub atomic: bool,
    /// Particle mass (custom units).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub m: Option<f64>,
    /// Reduced Planck constant (custom units).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub hbar: Option<f64>,
    /// Coulomb coupling e² (custom units).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub e2: Option<f64>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Agreement tolerance replacing the built-in defaults.
    #[arg(long, global = true, env = "DUALKIT_TOL", allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// Oracle grid lower end.
    #[arg(long = "grid-rmin", global = true, allow_negative_numbers = true)]
    pub grid_rmin: Option<f64>,
    /// Oracle grid upper end.
    #[arg(long = "grid-rmax", global = true, allow_negative_numbers = true)]
    pub grid_rmax: Option<f64>,
    /// Oracle grid point count.
    #[arg(long = "grid-n", global = true)]
    pub grid_n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partner exponent, η and pair class.
    Pair(PairArgs),
    /// Kepler orbit and its oscillator image.
    MapOrbit(MapOrbitArgs),
    /// Numeric WKB spectrum of a sum of powers.
    Wkb(WkbArgs),
    /// SUSY-semiclassical levels and their image under option (i) or (ii).
    Susy(SusyArgs),
    /// Coulomb or Hooke levels: closed form, duality transfer, optional oracle.
    Spectrum(SpectrumArgs),
    /// Radial Green function at listed point pairs.
    Green(GreenArgs),
    /// Zero-energy confinement state.
    Confine(ConfineArgs),
    /// Morse spectrum and Whittaker data.
    Morse(MorseArgs),
    /// Run the cross-check suite.
    Verify(VerifyArgs),
    #[command(hide = true)]
    SpecfunEval(SpecfunArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct PairArgs {
    /// Source exponent.
    #[arg(short = 'a', allow_negative_numbers = true, required_unless_present = "enumerate")]
    pub a: Option<f64>,
    /// Magnitude in r = Cρ^η.
    #[arg(long = "C", allow_negative_numbers = true)]
    #[serde(rename = "C")]
    pub c: Option<f64>,
    /// Emit this many points of the dual-pair chart instead.
    #[arg(long, conflicts_with = "a")]
    pub enumerate: Option<usize>,
    #[arg(long = "a-min", default_value_t = -6.0, allow_negative_numbers = true)]
    #[serde(rename = "a_min")]
    pub a_min: f64,
    #[arg(long = "a-max", default_value_t = 6.0, allow_negative_numbers = true)]
    #[serde(rename = "a_max")]
    pub a_max: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct MapOrbitArgs {
    /// Semi-major axis magnitude.
    #[arg(long)]
    pub abar: f64,
    /// Eccentricity.
    #[arg(long)]
    pub e: f64,
    /// Square of the map magnitude.
    #[arg(long = "C2", default_value_t = 1.0)]
    #[serde(rename = "C2")]
    pub c2: f64,
    /// Number of samples.
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    /// Repulsive coupling (hyperbolas only).
    #[arg(long)]
    pub repulsive: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct WkbArgs {
    /// Potential terms as "λ:a[,λ:a...]".
    #[arg(long, allow_hyphen_values = true)]
    pub terms: String,
    #[arg(long, default_value_t = 0)]
    pub ell: u32,
    #[arg(long = "D", default_value_t = 3)]
    #[serde(rename = "D")]
    pub dim: u32,
    #[arg(long, default_value_t = 4)]
    pub nmax: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SusyChoice {
    I,
    Ii,
}

#[derive(Debug, Args, Serialize)]
pub struct SusyArgs {
    /// Superpotential exponent.
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Centrifugal coefficient μ.
    #[arg(long, allow_negative_numbers = true)]
    pub mu: f64,
    /// Sign ε = ±1 of the superpotential.
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub epsilon: f64,
    /// Witten index Δ ∈ {−1, 0, 1}.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    pub delta: i8,
    #[arg(long, value_enum)]
    pub option: SusyChoice,
    #[arg(long, default_value_t = 3)]
    pub numax: u32,
    #[arg(long = "C", default_value_t = 1.0)]
    #[serde(rename = "C")]
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumSystem {
    Coulomb,
    Hooke,
}

#[derive(Debug, Args, Serialize)]
pub struct SpectrumArgs {
    #[arg(long, value_enum)]
    pub system: SpectrumSystem,
    #[arg(long = "D", default_value_t = 3)]
    #[serde(rename = "D")]
    pub dim: u32,
    #[arg(long, default_value_t = 2)]
    pub ellmax: u32,
    #[arg(long, default_value_t = 3)]
    pub numax: u32,
    /// Oscillator frequency.
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Map magnitude used for the transferred column.
    #[arg(long = "C", default_value_t = 1.0)]
    #[serde(rename = "C")]
    pub c: f64,
    /// Also solve each level with the shooting oracle.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GreenSystem {
    Coulomb,
    Hooke,
    Confine,
}

#[derive(Debug, Args, Serialize)]
pub struct GreenArgs {
    #[arg(long, value_enum)]
    pub system: GreenSystem,
    /// Energy; the confinement function lives at E = 0.
    #[arg(long = "E", allow_negative_numbers = true)]
    #[serde(rename = "E")]
    pub energy: Option<f64>,
    /// Continuous angular parameter L.
    #[arg(long = "L")]
    #[serde(rename = "L")]
    pub l: f64,
    /// Point pairs "r,r';r,r'...".
    #[arg(long)]
    pub points: String,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Linear slope λ′ of the confinement potential.
    #[arg(long, default_value_t = 1.0)]
    pub lambdap: f64,
    /// Coupling λ_a of the r^{−1/2} term (confinement only).
    #[arg(long, allow_negative_numbers = true)]
    pub coupling: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct ConfineArgs {
    #[arg(long, default_value_t = 0)]
    pub nu0: u32,
    #[arg(long, default_value_t = 0)]
    pub ell: u32,
    #[arg(long = "D", default_value_t = 3)]
    #[serde(rename = "D")]
    pub dim: u32,
    #[arg(long, default_value_t = 1.0)]
    pub lambdap: f64,
    /// Slope of the partner oscillator λ_b′ρ².
    #[arg(long, default_value_t = 1.0)]
    pub lambdabp: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct MorseArgs {
    #[arg(long = "D1")]
    #[serde(rename = "D1")]
    pub d1: f64,
    #[arg(long = "D2")]
    #[serde(rename = "D2")]
    pub d2: f64,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 3)]
    pub numax: u32,
    /// Also solve each level with the shooting oracle.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Fewer samples, no grid-halving pass.
    #[arg(long)]
    pub fast: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecialFn {
    Gamma,
    LnGamma,
    KummerM,
    WhittakerM,
    WhittakerW,
    Laguerre,
}

#[derive(Debug, Args, Serialize)]
pub struct SpecfunArgs {
    #[arg(long = "fn", value_enum)]
    #[serde(rename = "fn")]
    pub function: SpecialFn,
    /// Comma-separated arguments.
    #[arg(long, allow_hyphen_values = true)]
    pub args: String,
}
