//! `boltzmann`: simulate the billiard, evaluate periodicity conditions,
//! scan the parameter plane and report Fomenko graphs.
//!
//! Exit codes: 0 success (or periodic for `verify`), 1 not periodic,
//! 2 invalid or singular input, 3 numeric failure.

mod commands;
mod error;
mod number;
mod render;
mod simulate;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use boltzmann::kepler::WallRoot;
use boltzmann::search::ScanGrid;
use boltzmann::Tolerances;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::number::{Number, Pair};
use crate::render::{RenderSpec, Styles};
use crate::simulate::Start;

#[derive(Parser)]
#[command(name = "boltzmann", version, about = "Kepler billiard with a reflecting wall")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Root {
    Plus,
    Minus,
}

#[derive(clap::Args)]
struct Level {
    /// Energy E (`p/q` for exact input).
    #[arg(short = 'E', allow_hyphen_values = true)]
    energy: Number,
    /// Second integral D (`p/q` for exact input).
    #[arg(short = 'D', allow_hyphen_values = true)]
    second_integral: Number,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate the map and write an SVG picture plus a JSON orbit log.
    Simulate {
        #[command(flatten)]
        level: Level,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Angle of the LRL vector on its circle.
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, value_enum, default_value = "plus")]
        root: Root,
        /// Explicit start `x,A1,A2` instead of --theta/--root.
        #[arg(long, allow_hyphen_values = true)]
        state: Option<String>,
        #[arg(long)]
        caustics: bool,
        /// Draw the circle of second foci.
        #[arg(long)]
        circle: bool,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// `x1min,x1max,x2min,x2max`; fitted to the picture when omitted.
        #[arg(long, allow_hyphen_values = true)]
        viewport: Option<String>,
        #[arg(long, default_value_t = 800.0)]
        width: f64,
        #[arg(long)]
        arc_style: Option<String>,
        #[arg(long)]
        wall_style: Option<String>,
        #[arg(long, default_value = "orbit.svg")]
        svg: PathBuf,
        #[arg(long, default_value = "orbit.json")]
        log: PathBuf,
    },
    /// Taylor coefficients and periodicity determinants as JSON.
    Cayley {
        #[command(flatten)]
        level: Level,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Determinant magnitudes over a grid, as CSV.
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        e_range: Pair,
        #[arg(long, allow_hyphen_values = true)]
        d_range: Pair,
        /// Grid points per axis.
        #[arg(long, default_value_t = 101)]
        resolution: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Fomenko graph of the isoenergy manifold.
    Fomenko {
        #[arg(short = 'E', allow_hyphen_values = true)]
        energy: Number,
        /// Print only the text rendering.
        #[arg(long)]
        text: bool,
    },
    /// Check Poncelet closure from random starts; exit 0 iff periodic.
    Verify {
        #[command(flatten)]
        level: Level,
        #[arg(short = 'n')]
        period: usize,
        #[arg(long, default_value_t = 20)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn floats<const N: usize>(s: &str, what: &str) -> CliResult<[f64; N]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(CliError::Usage(format!("{what} needs {N} comma-separated numbers, got `{s}`")));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse::<Number>().map_err(CliError::Usage)?.value;
    }
    Ok(out)
}

fn write_json(v: &Value, out: Option<&PathBuf>) -> CliResult<()> {
    let text = serde_json::to_string_pretty(v)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => writeln!(io::stdout(), "{text}")?,
    }
    Ok(())
}

fn run(cli: Cli, tol: Tolerances) -> CliResult<ExitCode> {
    match cli.command {
        Command::Simulate {
            level,
            steps,
            theta,
            root,
            state,
            caustics,
            circle,
            samples,
            viewport,
            width,
            arc_style,
            wall_style,
            svg,
            log,
        } => {
            let start = match state {
                Some(s) => Start::State(floats::<3>(&s, "--state")?),
                None => Start::Angle {
                    theta,
                    root: match root {
                        Root::Plus => WallRoot::Plus,
                        Root::Minus => WallRoot::Minus,
                    },
                },
            };
            let mut styles = Styles::default();
            if let Some(s) = arc_style {
                styles.arc = s;
            }
            if let Some(s) = wall_style {
                styles.wall = s;
            }
            let spec = RenderSpec {
                viewport: viewport.map(|v| floats::<4>(&v, "--viewport")).transpose()?,
                samples_per_arc: samples,
                width_px: width,
                styles,
            };
            let sim = simulate::simulate(&level.energy, &level.second_integral, &start, steps, caustics, circle, &spec, tol)?;
            std::fs::write(&svg, &sim.svg)?;
            let mut log_value = sim.log;
            log_value["svg"] = Value::String(svg.display().to_string());
            write_json(&log_value, Some(&log))?;
        }
        Command::Cayley { level, n_max, out } => {
            let v = commands::cayley(&level.energy, &level.second_integral, n_max, tol)?;
            write_json(&v, out.as_ref())?;
        }
        Command::Scan {
            e_range,
            d_range,
            resolution,
            n_max,
            out,
        } => {
            let grid = ScanGrid::new(e_range.0, d_range.0, resolution, resolution)?;
            match out {
                Some(path) => commands::scan(&grid, n_max, tol, BufWriter::new(File::create(path)?))?,
                None => commands::scan(&grid, n_max, tol, io::stdout().lock())?,
            };
        }
        Command::Fomenko { energy, text } => {
            let (v, rendered) = commands::fomenko(&energy)?;
            if text {
                write!(io::stdout(), "{rendered}")?;
            } else {
                write_json(&v, None)?;
            }
        }
        Command::Verify {
            level,
            period,
            starts,
            seed,
        } => {
            let (v, periodic) = commands::verify(&level.energy, &level.second_integral, period, starts, seed, tol)?;
            write_json(&v, None)?;
            if !periodic {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = Tolerances::from_env().map_err(CliError::from).and_then(|tol| run(cli, tol));
    match outcome {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
