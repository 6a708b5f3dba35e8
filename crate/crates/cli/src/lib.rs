//! Command-line front end: argument parsing, literal parsing, CSV/JSON tables
//! and the five subcommands.

pub mod args;
pub mod commands;
pub mod error;
pub mod parse;
pub mod table;

use std::io::Write;

use args::{Cli, Command, Common, Format};
use commands::{quad_spec, setup, SweepGrid};
pub use error::CliError;
use table::Table;

/// Runs one invocation; map errors to exit codes with [`CliError::exit_code`].
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate { common, state, t } => {
            let s = setup(&common, &state)?;
            emit(&common, &commands::simulate(&s, t))
        }
        Command::Density {
            common,
            state,
            points,
        } => {
            let s = setup(&common, &state)?;
            emit(&common, &commands::density(&s, points)?)
        }
        Command::Stationary {
            common,
            state,
            x_from,
            x_to,
        } => {
            let s = setup(&common, &state)?;
            emit(&common, &commands::stationary(&s, x_from, x_to)?)
        }
        Command::Verify {
            common,
            samples,
            seed,
            t,
        } => {
            let quad = quad_spec(&common)?;
            let (table, report) =
                with_jobs(common.jobs, || commands::verify(quad, samples, seed, t))??;
            emit(&common, &table)?;
            match report.first_failure() {
                Some(f) => Err(CliError::Verification(f.to_string())),
                None => Ok(()),
            }
        }
        Command::Sweep {
            common,
            beta_min,
            beta_max,
            beta_steps,
            presets,
        } => {
            quad_spec(&common)?;
            let grid = SweepGrid::parse(&beta_min, &beta_max, beta_steps, presets)?;
            let table = with_jobs(common.jobs, || commands::sweep(&grid))??;
            emit(&common, &table)
        }
    }
}

fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {jobs} worker threads: {e}")))?;
    Ok(pool.install(f))
}

fn emit(common: &Common, table: &Table) -> Result<(), CliError> {
    let text = match common.format {
        Format::Csv => table.to_csv()?,
        Format::Json => table.to_json(),
    };
    match &common.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}
