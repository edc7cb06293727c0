use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use vdc::interferometer::{fringe_scan, sample_fringe_scan, uniform_grid};
use vdc::pipeline::{run_scenarios, sphere_points, with_overrides};
use vdc::report::{self, AnalyticRow, Destination, FringeTable, ReportFormat};
use vdc::scenario::{default_scenarios, load_scenarios, validate_scenarios, Scenario};
use vdc::{vdc_triple, Result};

#[derive(Parser)]
#[command(
    name = "vdc",
    version,
    about = "Visibility, distinguishability and concurrence of single-photon states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form (V, D, C) for each scenario.
    Compute(Common),
    /// Exact and shot-noise fringe scans.
    Fringes(Common),
    /// Full simulated experiment: fringes, arm blocking and tomography.
    Experiment(Common),
    /// Sphere coordinates of the estimated and analytic triples.
    Sphere(Common),
}

#[derive(Args)]
struct Common {
    /// JSON scenario file.
    #[arg(
        long,
        conflicts_with = "defaults",
        required_unless_present = "defaults"
    )]
    config: Option<PathBuf>,
    /// Use the seven built-in scenarios.
    #[arg(long)]
    defaults: bool,
    /// Override shots for every scenario.
    #[arg(long)]
    shots: Option<u64>,
    /// Override the seed for every scenario.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    format: ReportFormat,
    /// Output file (standard output if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn scenarios(&self) -> Result<Vec<Scenario>> {
        let base = match &self.config {
            Some(path) => load_scenarios(path)?,
            None => default_scenarios(),
        };
        let scenarios = with_overrides(&base, self.shots, self.seed);
        validate_scenarios(&scenarios)?;
        Ok(scenarios)
    }

    fn destination(&self) -> Destination {
        Destination::from(self.out.as_deref())
    }
}

fn write_with(dest: &Destination, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let mut out = dest.open()?;
    f(&mut *out)?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Compute(opts) => {
            let rows = opts
                .scenarios()?
                .iter()
                .map(|sc| {
                    Ok(AnalyticRow {
                        name: sc.name.clone(),
                        triple: vdc_triple(&sc.state()?),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            write_with(&opts.destination(), |out| {
                report::write_analytic(&rows, opts.format, out)
            })
        }
        Command::Fringes(opts) => {
            let tables = opts
                .scenarios()?
                .par_iter()
                .map(|sc| {
                    let s = sc.state()?;
                    let grid = uniform_grid(sc.phase_points);
                    Ok(FringeTable {
                        name: sc.name.clone(),
                        exact: fringe_scan(&s, &grid)?,
                        measured: sample_fringe_scan(&s, &grid, sc.shots, sc.seed)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            write_with(&opts.destination(), |out| {
                report::write_fringes(&tables, opts.format, out)
            })
        }
        Command::Experiment(opts) => {
            let reports = run_scenarios(&opts.scenarios()?)?;
            report::emit_report(&reports, opts.format, &opts.destination())
        }
        Command::Sphere(opts) => {
            let points = sphere_points(&run_scenarios(&opts.scenarios()?)?);
            write_with(&opts.destination(), |out| {
                report::write_sphere(&points, opts.format, out)
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_io() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
