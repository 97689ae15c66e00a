use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wbnf::commands::{self, Figure};
use wbnf::scenario::{parse_scenario_with, Units};
use wbnf::{svg, verify, CliError};

/// Wideband near-field beamforming gain, bandwidth limits and distances.
#[derive(Debug, Parser)]
#[command(name = "wbnf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gain G(gamma1, gamma2) over a rectangular grid.
    GainSurface(FigureArgs),
    /// Gain cuts at fixed gamma1 and at fixed gamma2.
    GainCuts(FigureArgs),
    /// Main-lobe contours and the maximum |gamma1*gamma2| per threshold.
    Contours(FigureArgs),
    /// Maximum bandwidth against threshold for aperture/carrier presets.
    BmaxCurve(FigureArgs),
    /// Bandwidth-aware near-field distance against frequency offset.
    BandMap(FigureArgs),
    /// Check the library against quadrature and extended-precision oracles.
    Verify {
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct FigureArgs {
    /// Scenario TOML file.
    #[arg(long)]
    scenario: PathBuf,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Override a scenario key, e.g. `--set grid.gamma1_max=4`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Also write an SVG chart next to the CSV.
    #[arg(long)]
    svg: bool,
    /// Read thresholds as linear gains and write linear gain columns.
    #[arg(long)]
    linear: bool,
}

fn write(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn run_figure(figure: Figure, args: &FigureArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.scenario).map_err(|source| CliError::Io {
        path: args.scenario.clone(),
        source,
    })?;
    let units = if args.linear {
        Units::Linear
    } else {
        Units::Db
    };
    let scenario = parse_scenario_with(&text, &args.overrides, units)?;
    let table = commands::run(figure, &scenario, units)?;
    write(&args.out, table.to_csv_string().as_bytes())?;
    if args.svg {
        if let Some(doc) = svg::render(figure, &table) {
            write(&args.out.with_extension("svg"), doc.as_bytes())?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (figure, args) = match cli.command {
        Command::GainSurface(a) => (Figure::GainSurface, a),
        Command::GainCuts(a) => (Figure::GainCuts, a),
        Command::Contours(a) => (Figure::Contours, a),
        Command::BmaxCurve(a) => (Figure::BmaxCurve, a),
        Command::BandMap(a) => (Figure::BandMap, a),
        Command::Verify { out } => {
            let report = verify::run_verify();
            let text = report.render();
            print!("{text}");
            if let Some(path) = out {
                write(&path, text.as_bytes())?;
            }
            return match report.failures() {
                0 => Ok(()),
                n => Err(CliError::Verification(n)),
            };
        }
    };
    run_figure(figure, &args)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version go to stdout with status 0; usage errors exit 1.
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
