//! Command-line driver.
//!
//! Exit codes: 0 pass, 1 identity or calibration failure, 2 usage or domain
//! error. Data goes to `--out` (or stdout); diagnostics to stderr.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use moufang::atlas::{CompositionAlgebra, LoopChart};
use moufang::report::{table_json, CalibrationReport, Format, TensorDump, VerifyReport};
use moufang::suites::{
    calibrate_conventions, run_suite_on, CalibrationSettings, Family, SamplePlan, DEFAULT_RADIUS,
    DEFAULT_TOLERANCE,
};
use moufang::tensors::ConventionLedger;
use moufang::Error;

#[derive(Parser)]
#[command(
    name = "moufang",
    version,
    about = "Verify the differential identities of local Moufang loops"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate identity families over seeded samples and write a report.
    Verify {
        #[arg(long = "loop")]
        loop_spec: String,
        /// Comma-separated family names, or `all`.
        #[arg(long, default_value = "all")]
        families: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_RADIUS)]
        radius: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Dump every tensor at one point as JSON.
    Tensors {
        #[arg(long = "loop")]
        loop_spec: String,
        /// Comma-separated chart coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Determine the sign conventions from a set of loops.
    Calibrate {
        /// Comma-separated loop specs.
        #[arg(long)]
        loops: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_RADIUS)]
        radius: f64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the basis multiplication table of an algebra.
    Table {
        #[arg(long, default_value = "octonion")]
        algebra: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_loops(list: &str) -> Result<Vec<LoopChart>, Error> {
    list.split(',').map(LoopChart::builtin).collect()
}

fn parse_point(point: &str) -> Result<Vec<f64>, Error> {
    point
        .split(',')
        .map(|c| {
            c.trim().parse::<f64>().map_err(|_| Error::Domain {
                point: Vec::new(),
                reason: format!("cannot parse coordinate `{c}`"),
            })
        })
        .collect()
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Verify {
            loop_spec,
            families,
            samples,
            radius,
            seed,
            tol,
            out,
            format,
        } => {
            let loop_ = LoopChart::builtin(&loop_spec)?;
            let families = Family::parse_list(&families)?;
            let plan = SamplePlan::new(loop_.name(), seed, samples, radius);
            let outcome =
                run_suite_on(&loop_, &plan, &families, tol, ConventionLedger::CALIBRATED)?;
            let report = VerifyReport::from_outcome(&outcome);
            emit(out.as_ref(), &report.render(format)?)?;
            for f in &report.families {
                eprintln!(
                    "{:<14} max {} mean {} {}",
                    f.name,
                    f.max,
                    f.mean,
                    if f.pass { "pass" } else { "FAIL" }
                );
            }
            Ok(report.pass)
        }
        Command::Tensors {
            loop_spec,
            point,
            out,
        } => {
            let loop_ = LoopChart::builtin(&loop_spec)?;
            let point = parse_point(&point)?;
            let dump = TensorDump::compute(&loop_, &point, ConventionLedger::CALIBRATED)?;
            emit(out.as_ref(), &dump.to_json()?)?;
            Ok(true)
        }
        Command::Calibrate {
            loops,
            seed,
            samples,
            radius,
            tol,
            out,
        } => {
            let loops = parse_loops(&loops)?;
            let settings = CalibrationSettings {
                seed,
                count: samples,
                radius,
                tolerance: tol,
            };
            let result = calibrate_conventions(&loops, &settings);
            match CalibrationReport::from_result(&loops, &result) {
                Some(report) => {
                    emit(out.as_ref(), &report.to_json()?)?;
                    if let Err(e) = &result {
                        eprintln!("moufang: {e}");
                    }
                    Ok(report.unique)
                }
                None => Err(result.expect_err("non-calibration errors carry no table")),
            }
        }
        Command::Table { algebra, out } => {
            let algebra = match algebra.as_str() {
                "quaternion" => CompositionAlgebra::Quaternion,
                "octonion" => CompositionAlgebra::Octonion,
                other => return Err(Error::UnknownLoop(other.to_string())),
            };
            emit(out.as_ref(), &table_json(algebra)?)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("moufang: {e}");
            ExitCode::from(2)
        }
    }
}
