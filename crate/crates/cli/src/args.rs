use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use xxz_core::sweep::{Axis, Param};

/// Concurrence of the two-qubit Heisenberg XXZ chain in uniform and
/// inhomogeneous magnetic fields.
///
/// Exit codes: 0 success, 1 numerical-domain or I/O error, 2 usage error,
/// 3 verification failure.
#[derive(Debug, Parser)]
#[command(name = "xxz", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Thermal concurrence at a single point.
    Eval {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        temperature: TemperatureArg,
        #[arg(long, value_enum, default_value_t = RecordFormat::Text)]
        format: RecordFormat,
    },
    /// Phase, ground energy and ground-state concurrence.
    Ground {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = RecordFormat::Text)]
        format: RecordFormat,
    },
    /// Concurrence over a one- or two-axis grid, or a figure preset.
    Sweep(SweepArgs),
    /// Sign change of the concurrence along T, b or the uniform field.
    Critical {
        #[arg(long, value_parser = parse_critical_axis)]
        axis: Param,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        temperature: TemperatureArg,
        #[arg(long, value_enum, default_value_t = RecordFormat::Text)]
        format: RecordFormat,
    },
    /// Seeded oracle-equivalence and symmetry suites.
    Verify {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = xxz_core::verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = RecordFormat::Text)]
        format: RecordFormat,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ModelArgs {
    /// XY coupling J.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true, value_parser = finite)]
    pub j: f64,
    /// Anisotropic coupling Jz.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true, value_parser = finite)]
    pub jz: f64,
    /// Uniform field B (non-negative).
    #[arg(long = "big-b", default_value_t = 0.0, allow_negative_numbers = true, value_parser = finite)]
    pub big_b: f64,
    /// Inhomogeneous field b.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true, value_parser = finite)]
    pub b: f64,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct TemperatureArg {
    /// Temperature T (k_B = 1).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true, value_parser = finite)]
    pub t: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub temperature: TemperatureArg,
    /// Swept axis as name:start:stop:points, name one of j, jz, big-b, b, t.
    #[arg(long, value_parser = parse_axis, required_unless_present = "figure", conflicts_with = "figure")]
    pub axis: Vec<Axis>,
    /// Regenerate the grids of figure preset 1 to 5.
    #[arg(long)]
    pub figure: Option<u32>,
    /// Points per swept field axis for a figure preset.
    #[arg(long, requires = "figure", value_parser = clap::value_parser!(u32).range(2..=1001))]
    pub points: Option<u32>,
    /// Isotropic chain evaluated at (2J, 2J, 2B, 2b); --jz is ignored.
    #[arg(long, conflicts_with = "figure")]
    pub xxx_rescaled: bool,
    #[arg(long, value_enum, default_value_t = GridFormat::Csv)]
    pub format: GridFormat,
    /// Output file, or output directory for a figure preset. Defaults to
    /// stdout, or the current directory for a figure preset.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Evaluate on the calling thread only.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RecordFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridFormat {
    Csv,
    Json,
}

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("`{s}` is not a number: {e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [name, start, stop, points] = parts[..] else {
        return Err(format!("`{s}` is not of the form name:start:stop:points"));
    };
    let name: Param = name.parse().map_err(|e: xxz_core::Error| e.to_string())?;
    let points: usize = points
        .parse()
        .map_err(|e| format!("point count `{points}` is not a positive integer: {e}"))?;
    Axis::new(name, finite(start)?, finite(stop)?, points).map_err(|e| e.to_string())
}

fn parse_critical_axis(s: &str) -> Result<Param, String> {
    match s.parse::<Param>() {
        Ok(p @ (Param::T | Param::SmallB | Param::BigB)) => Ok(p),
        _ => Err(format!("`{s}` is not one of t, b, big-b")),
    }
}
