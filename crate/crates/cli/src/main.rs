//! Command-line front end: packing generation, measurement, Voronoi and
//! cell reports, and the constant-chain audit certificate.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O error.
//! Every command is deterministic given its arguments; random generation
//! requires an explicit seed.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{
    cmd_audit, cmd_cells, cmd_generate, cmd_measure, cmd_report, cmd_voronoi_stats, AuditArgs,
    CellsArgs, CliError, GenerateArgs, MeasureArgs, ReportArgs, VoronoiStatsArgs,
};
use output::Format;

#[derive(Parser)]
#[command(name = "packcert", version, about = "Sphere packing density measurement and certification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a packing file (fcc, cubic, or seeded random) and print
    /// its saturation certificate.
    Generate {
        /// Packing kind: fcc | cubic | random.
        #[arg(long)]
        kind: String,
        /// Generation radius (at least 4); centers fill B(0, radius).
        #[arg(long)]
        radius: f64,
        /// Seed for the random generator (required iff kind is random).
        #[arg(long)]
        seed: Option<u64>,
        /// Output packing file (JSON).
        #[arg(long)]
        out: PathBuf,
        /// Probe spacing of the printed saturation certificate.
        #[arg(long, default_value_t = 0.25)]
        grid_step: f64,
    },
    /// Consolidated measurement report: density, Voronoi volumes, vertex
    /// scores, contact sums, negligibility ratios, compatibility margins.
    Measure {
        packing: PathBuf,
        /// Container radius; repeatable. Defaults to gen_radius - 1.
        #[arg(long = "r")]
        r: Vec<f64>,
        /// Interior region radius for per-vertex scans (default
        /// gen_radius - 4).
        #[arg(long)]
        region: Option<f64>,
        #[arg(long, default_value_t = 0.25)]
        grid_step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Per-cell Voronoi volumes and containment radii.
    VoronoiStats {
        packing: PathBuf,
        #[arg(long)]
        region: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Empty-circumball tetrahedra: counts, gamma statistics, critical
    /// edges, partial cluster sums, angle-sum checks.
    Cells {
        packing: PathBuf,
        #[arg(long)]
        region: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Interval certificate for the whole constant chain; exit 1 if any
    /// step fails.
    Audit {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Falsifiability hook: FROM:TO replaces the claimed bound FROM
        /// with the tighter TO. Repeatable.
        #[arg(long)]
        tighten: Vec<String>,
        /// Extra widening (ulps per side) of transcendental enclosures.
        #[arg(long, default_value_t = 4)]
        widen_ulps: u32,
    },
    /// Measurement plus audit in one document.
    Report {
        packing: PathBuf,
        #[arg(long = "r")]
        r: Vec<f64>,
        #[arg(long)]
        region: Option<f64>,
        #[arg(long, default_value_t = 0.25)]
        grid_step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: Format,
    },
}

fn parse_tighten(specs: &[String]) -> Result<Vec<(f64, f64)>, CliError> {
    specs
        .iter()
        .map(|s| {
            let (from, to) = s
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("--tighten {s:?} is not FROM:TO")))?;
            let parse = |v: &str| {
                v.parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("--tighten value {v:?} is not a number")))
            };
            Ok((parse(from)?, parse(to)?))
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate { kind, radius, seed, out, grid_step } => {
            cmd_generate(GenerateArgs { kind, radius, seed, out, grid_step })
        }
        Command::Measure { packing, r, region, grid_step, out, format } => {
            cmd_measure(MeasureArgs { packing, r, region, grid_step, out, format })
        }
        Command::VoronoiStats { packing, region, out, format } => {
            cmd_voronoi_stats(VoronoiStatsArgs { packing, region, out, format })
        }
        Command::Cells { packing, region, out, format } => {
            cmd_cells(CellsArgs { packing, region, out, format })
        }
        Command::Audit { out, format, tighten, widen_ulps } => {
            let tighten = parse_tighten(&tighten)?;
            cmd_audit(AuditArgs { out, format, tighten, widen_ulps })
        }
        Command::Report { packing, r, region, grid_step, out, format } => {
            cmd_report(ReportArgs { packing, r, region, grid_step, out, format })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
