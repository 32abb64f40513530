mod args;
mod commands;
mod output;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use crate::args::{Cli, Format};
use crate::output::{envelope, render_csv, render_json};

const USAGE_ERROR: u8 = 2;
const IO_ERROR: u8 = 1;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(USAGE_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let command = &cli.command;
    let common = command.common();
    let started = Instant::now();
    let report = match command.execute() {
        Ok(report) => report,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(USAGE_ERROR);
        }
    };
    let duration = if common.frozen_clock {
        0.0
    } else {
        started.elapsed().as_secs_f64()
    };
    let text = match common.format {
        Format::Json => {
            let config = match command.config() {
                Ok(config) => config,
                Err(err) => {
                    eprintln!("error: {err:#}");
                    return ExitCode::from(IO_ERROR);
                }
            };
            render_json(&envelope(command.name(), config, duration, &report))
        }
        Format::Csv => match &report.table {
            Some(table) => render_csv(table),
            None => {
                eprintln!("error: {} has no CSV output; use --format json", command.name());
                return ExitCode::from(USAGE_ERROR);
            }
        },
    };
    let written = match &common.output {
        Some(path) => fs::write(path, &text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(err) = written {
        eprintln!("error: cannot write output: {err}");
        return ExitCode::from(IO_ERROR);
    }
    ExitCode::from(report.status.exit_code())
}
