//! `vhcn` — capacity-planning calculator for ultra-broadband access
//! networks.

mod commands;
mod error;
mod report;
mod scenario;
mod svg;
mod units;

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use vhcn_core::cache::CacheNode;
use vhcn_core::contention::ContentionScenario;
use vhcn_core::plane::{boundary_curve, catalog_report};
use vhcn_core::pon::PonScenario;
use vhcn_core::throughput::NetworkPath;

use error::{CliError, Result};
use report::{OutputFormat, Report};
use scenario::{ContentionSection, PonSection};
use units::{parse_fraction, parse_rate, parse_time};

const EXIT_CODE_HELP: &str = "Exit codes:\n  0  success\n  2  command-line usage error\n  \
3  scenario/catalog parse error\n  4  validation error\n  5  computation error\n  6  i/o error";

#[derive(Parser)]
#[command(
    name = "vhcn",
    version,
    about = "Capacity planning for very-high-capacity access networks: application-layer \
             throughput, service feasibility, link contention, PON dimensioning, edge caching.",
    after_help = EXIT_CODE_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Application-layer throughput of one path (ceiling, cap, region).
    Throughput(ThroughputArgs),
    /// Classify a service catalog on the bandwidth/latency plane.
    Plane(PlaneArgs),
    /// Peak-hour shared-link arithmetic and backhaul sizing.
    Contention(ContentionArgs),
    /// PON downstream dimensioning grid.
    PonTable(PonTableArgs),
    /// Transparent-cache bandwidth ledger.
    Cache(CacheArgs),
    /// Run every section of a scenario file.
    Run(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
}

impl From<FormatArg> for OutputFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Args)]
struct PathArgs {
    /// Channel bit-rate, e.g. "1 Gbit" (bare numbers are bit/s).
    #[arg(long, value_parser = parse_rate)]
    br: f64,
    /// Round-trip time, e.g. "1 ms" (bare numbers are seconds).
    #[arg(long, value_parser = parse_time)]
    rtt: f64,
    /// Packet-loss rate, e.g. "0.1%" or 0.001.
    #[arg(long, value_parser = parse_fraction)]
    plr: f64,
    /// Maximum segment size in bytes.
    #[arg(long, default_value_t = 1450.0)]
    mss: f64,
    /// Congestion-avoidance constant.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
}

impl PathArgs {
    fn build(&self) -> Result<NetworkPath<f64>> {
        NetworkPath::new(self.br, self.rtt, self.plr, self.mss, self.c)
            .map_err(|e| CliError::Validation(e.to_string()))
    }
}

#[derive(Args)]
struct ThroughputArgs {
    #[command(flatten)]
    path: PathArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct PlaneArgs {
    /// Catalog file with [[services]] entries.
    #[arg(long)]
    catalog: PathBuf,
    #[command(flatten)]
    path: PathArgs,
    /// Lower end of the boundary sweep.
    #[arg(long = "min-bw", value_parser = parse_rate, default_value = "10 Mbit")]
    min_bw: f64,
    /// Upper end of the boundary sweep.
    #[arg(long = "max-bw", value_parser = parse_rate, default_value = "1 Gbit")]
    max_bw: f64,
    /// Boundary sample count.
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// Write the plane as an SVG file.
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct ContentionArgs {
    /// Shared link capacity, e.g. "1 Gbit".
    #[arg(long, value_parser = parse_rate)]
    capacity: f64,
    /// Users connected to the node.
    #[arg(long)]
    users: u64,
    /// Fraction of users active at peak, e.g. "10%".
    #[arg(long, value_parser = parse_fraction, conflicts_with = "active_users")]
    simultaneity: Option<f64>,
    /// Peak active users (alternative to --simultaneity).
    #[arg(long = "active-users")]
    active_users: Option<u64>,
    /// Also size the link for this per-user rate.
    #[arg(long = "target-per-user", value_parser = parse_rate)]
    target_per_user: Option<f64>,
    /// Annual demand growth, e.g. "25%"; needs --years.
    #[arg(long, value_parser = parse_fraction, requires = "years")]
    growth: Option<f64>,
    /// Projection horizon in years; needs --growth.
    #[arg(long, requires = "growth")]
    years: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct PonTableArgs {
    /// Splitting factor (users per tree at 100% filling).
    #[arg(long, default_value_t = 64)]
    split: u32,
    /// Activity factor, e.g. "15%".
    #[arg(long, value_parser = parse_fraction, default_value = "15%")]
    activity: f64,
    /// Availability of the percentile bandwidth.
    #[arg(long, default_value_t = 0.99)]
    availability: f64,
    /// Commercial bandwidth cap.
    #[arg(long, value_parser = parse_rate, default_value = "1 Gbit")]
    bmax: f64,
    /// Filling factors, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_fraction,
          default_value = "100%,60%,25%,8%")]
    fillings: Vec<f64>,
    /// Standards file overriding the bundled GPON/XG-PON/TWDM-PON list.
    #[arg(long)]
    standards: Option<PathBuf>,
    /// Add Monte Carlo cross-check columns with this many samples per cell.
    #[arg(long = "mc-samples")]
    mc_samples: Option<u64>,
    /// Monte Carlo seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct CacheArgs {
    /// Total bandwidth served toward clients.
    #[arg(long = "b-out", value_parser = parse_rate)]
    b_out: f64,
    /// Bandwidth served from the cache.
    #[arg(long = "b-cache", value_parser = parse_rate)]
    b_cache: f64,
    /// Upstream refill bandwidth.
    #[arg(long = "b-load", value_parser = parse_rate, default_value = "0")]
    b_load: f64,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct RunArgs {
    /// Scenario file.
    file: PathBuf,
    /// Override the scenario's output format.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Seed for any Monte Carlo columns.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = dispatch(cli.command) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Throughput(args) => {
            let path = args.path.build()?;
            let mut report = Report::default();
            report.push(commands::throughput_section(&path));
            emit(&report, args.format.into())
        }
        Command::Plane(args) => run_plane(args),
        Command::Contention(args) => {
            let scenario = match (args.simultaneity, args.active_users) {
                (Some(s), None) => ContentionScenario::new(args.capacity, args.users, s),
                (None, Some(active)) => {
                    ContentionScenario::from_counts(args.capacity, args.users, active)
                }
                (None, None) => {
                    return Err(CliError::Validation(
                        "give --simultaneity or --active-users".into(),
                    ))
                }
                (Some(_), Some(_)) => unreachable!("clap enforces the conflict"),
            }
            .map_err(|e| CliError::Validation(e.to_string()))?;
            let section = ContentionSection {
                scenario,
                per_user_target: args.target_per_user,
                annual_growth: args.growth,
                years: args.years,
            };
            let mut report = Report::default();
            report.push(commands::contention_section(&section)?);
            emit(&report, args.format.into())
        }
        Command::PonTable(args) => {
            let standards = match &args.standards {
                Some(path) => scenario::load_standards(&read_file(path)?)?,
                None => scenario::default_standards(),
            };
            if args.fillings.is_empty() {
                return Err(CliError::Validation("--fillings is empty".into()));
            }
            let pon_scenario = PonScenario::new(
                args.split,
                args.fillings[0],
                args.activity,
                args.bmax,
                args.availability,
            )
            .map_err(|e| CliError::Validation(e.to_string()))?;
            for &filling in &args.fillings[1..] {
                pon_scenario
                    .with_filling(filling)
                    .map_err(|e| CliError::Validation(e.to_string()))?;
            }
            let section = PonSection {
                standards,
                fillings: args.fillings.clone(),
                scenario: pon_scenario,
                mc_samples: args.mc_samples,
            };
            let mut report = Report::default();
            report.push(commands::pon_section(&section, args.seed)?);
            emit(&report, args.format.into())
        }
        Command::Cache(args) => {
            let node = CacheNode::new(args.b_out, args.b_cache, args.b_load)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let mut report = Report::default();
            report.push(commands::cache_section(&node)?);
            emit(&report, args.format.into())
        }
        Command::Run(args) => {
            let scenario = scenario::load_scenario(&read_file(&args.file)?)?;
            let format = args
                .format
                .map(OutputFormat::from)
                .or(scenario.format)
                .unwrap_or(OutputFormat::Text);
            let report = commands::scenario_report(&scenario, args.seed)?;
            emit(&report, format)
        }
    }
}

fn run_plane(args: PlaneArgs) -> Result<()> {
    let path = args.path.build()?;
    let catalog = scenario::load_catalog(&read_file(&args.catalog)?)?;
    let curve = boundary_curve(
        args.path.plr,
        args.path.mss,
        args.path.c,
        (args.min_bw, args.max_bw),
        args.points,
    )
    .map_err(|e| CliError::Validation(e.to_string()))?;

    let mut report = Report::default();
    report.push(commands::services_section(&catalog, &path)?);
    report.push(commands::boundary_section(&curve));

    if let Some(svg_path) = &args.svg {
        let verdicts = catalog_report(&catalog, &path)
            .map_err(|e| CliError::Compute(format!("[services] {e}")))?;
        let markers: Vec<svg::PlaneMarker> = verdicts
            .iter()
            .map(|(service, verdict)| svg::PlaneMarker {
                name: service.name().to_string(),
                bandwidth: service.min_bandwidth(),
                latency: service.max_latency(),
                feasible: verdict.feasible,
            })
            .collect();
        let document = svg::plane_svg(&markers, &curve);
        fs::write(svg_path, document)
            .map_err(|e| CliError::Io(format!("{}: {e}", svg_path.display())))?;
    }

    emit(&report, args.format.into())
}

fn read_file(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Prints the report: text all to stdout; CSV keeps stdout machine-clean and
/// moves the title/defaults metadata to stderr.
fn emit(report: &Report, format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Text => print!("{}", report.render_text()),
        OutputFormat::Csv => {
            for line in report.metadata_lines() {
                eprintln!("# {line}");
            }
            print!("{}", report.render_csv());
        }
    }
    Ok(())
}
