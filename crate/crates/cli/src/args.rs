//! Command-line grammar.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sphconv_bench::{MonomialPrecision, Preset, Reference};
use sphconv_core::{Method, PrecisionContext};

#[derive(Debug, Parser)]
#[command(
    name = "sphconv",
    version,
    about = "Evaluate, scan, benchmark and verify the cosmic-string integral I(N, alpha)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate I(N, alpha) with one method or all of them.
    Eval(EvalArgs),
    /// Sweep alpha for one or more N, one row per cell, no repeated timing.
    Scan(GridArgs),
    /// Timed sweep over a preset or a custom grid, written as CSV or JSON.
    Bench(BenchArgs),
    /// Run the acceptance suite and print one line per check.
    Verify(VerifyArgs),
    /// Print the even Legendre coefficients C_2j of the kernel.
    Coeffs(CoeffsArgs),
    /// Break the large-N asymptotic estimate into its parts.
    Asympt(AsymptArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    All,
    One(Method),
}

impl MethodChoice {
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodChoice::All => Method::ALL.to_vec(),
            MethodChoice::One(m) => vec![m],
        }
    }
}

pub fn parse_method_choice(s: &str) -> Result<MethodChoice, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(MethodChoice::All);
    }
    s.parse::<Method>()
        .map(MethodChoice::One)
        .map_err(|e| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse::<Method>().map_err(|e| e.to_string())
}

fn parse_reference(s: &str) -> Result<Reference, String> {
    s.parse::<Reference>().map_err(|e| e.to_string())
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse::<Preset>().map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct AngleArgs {
    /// Read angles in degrees instead of radians.
    #[arg(long, global = true)]
    pub degrees: bool,
}

impl AngleArgs {
    pub fn to_radians(self, a: f64) -> f64 {
        if self.degrees {
            a * PI / 180.0
        } else {
            a
        }
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct PrecisionArgs {
    /// Decimal digits for the monomial methods (at least 16).
    #[arg(long, env = "SPHCONV_DIGITS")]
    pub digits: Option<u32>,
    /// Run the monomial methods in plain doubles; overrides --digits.
    #[arg(long)]
    pub native: bool,
}

impl PrecisionArgs {
    /// None when no flag or environment override is present.
    pub fn context(self) -> sphconv_core::Result<Option<PrecisionContext>> {
        if self.native {
            return Ok(Some(PrecisionContext::native()));
        }
        self.digits.map(PrecisionContext::big_float).transpose()
    }

    pub fn monomial_precision(self) -> Option<MonomialPrecision> {
        if self.native {
            Some(MonomialPrecision::Native)
        } else {
            self.digits.map(MonomialPrecision::Digits)
        }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// method1, method2, method3, galerkin, volterra, gegenbauer, asymptotic, m1..m6 or all.
    #[arg(long, value_parser = parse_method_choice)]
    pub method: MethodChoice,
    /// Harmonic number N >= 1.
    #[arg(short = 'N', long = "n")]
    pub n: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[command(flatten)]
    pub angle: AngleArgs,
    #[command(flatten)]
    pub precision: PrecisionArgs,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Methods to run, or all.
    #[arg(long, value_parser = parse_method_choice, default_value = "gegenbauer")]
    pub method: MethodChoice,
    /// Comma-separated harmonic numbers.
    #[arg(short = 'N', long = "n", value_delimiter = ',')]
    pub n: Vec<u32>,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub alpha_start: f64,
    #[arg(long, default_value_t = PI - 0.1, allow_negative_numbers = true)]
    pub alpha_stop: f64,
    /// Number of alpha points, endpoints included.
    #[arg(long, default_value_t = 60)]
    pub count: usize,
    /// oracle_2d or method_6; by default the oracle up to N = 30.
    #[arg(long, value_parser = parse_reference)]
    pub reference: Option<Reference>,
    #[command(flatten)]
    pub angle: AngleArgs,
    #[command(flatten)]
    pub precision: PrecisionArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// fig1, fig2 or fig3; replaces the grid flags.
    #[arg(long, value_parser = parse_preset)]
    pub preset: Option<Preset>,
    /// Timed runs per cell after one warm-up run.
    #[arg(long, default_value_t = 5)]
    pub repetitions: usize,
    /// Print median and 95th-percentile timings per method to stderr.
    #[arg(long)]
    pub summary: bool,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Smaller grids for the slow checks.
    #[arg(long)]
    pub quick: bool,
    /// Seed of the random spot checks.
    #[arg(long, default_value_t = sphconv_bench::verify::DEFAULT_SEED)]
    pub seed: u64,
    /// Comma-separated subset of check ids, e.g. A1,A4.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    /// galerkin, volterra, gegenbauer or method3.
    #[arg(long, value_parser = parse_method, default_value = "gegenbauer")]
    pub method: Method,
    #[arg(short = 'N', long = "n")]
    pub n: u32,
    /// Truncation order; the method default if absent.
    #[arg(long)]
    pub order: Option<usize>,
    /// Print only C_0 .. C_2(count-1).
    #[arg(long)]
    pub count: Option<usize>,
    #[command(flatten)]
    pub precision: PrecisionArgs,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AsymptArgs {
    #[arg(short = 'N', long = "n")]
    pub n: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[command(flatten)]
    pub angle: AngleArgs,
    /// Also sum the harmonic series for C(alpha) to this many terms.
    #[arg(long)]
    pub series_terms: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}
