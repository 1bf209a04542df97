// Copyright 2026 The stored-light Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use stored_light_cli::{
    run_experiment, run_figure, Axis, CliError, Dataset, ExperimentConfig, Kind,
};

/// Sweeps and figure datasets for light stored in a tripod medium, as CSV.
#[derive(Parser)]
#[command(name = "stored-light", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the dataset behind one of the five figures.
    Figure {
        #[arg(long)]
        id: u32,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a grid experiment described by a TOML file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Override a parameter, e.g. `--set phi0=pi/8`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        sets: Vec<String>,
        /// Add or replace an axis, e.g. `--axis phi1=0:pi/2:65`.
        #[arg(long = "axis", value_name = "NAME=START:STOP:COUNT")]
        axes: Vec<String>,
        /// Output file; overrides the file's `output`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one kind at a single point: `eval --kind homodyne r1=1 alpha2=2`.
    Eval {
        #[arg(long)]
        kind: String,
        #[arg(value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write(data: &Dataset, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let io_err = |source| CliError::Io {
                path: path.display().to_string(),
                source,
            };
            let file = File::create(path).map_err(io_err)?;
            let mut w = BufWriter::new(file);
            data.write_csv(&mut w)?;
            w.flush().map_err(io_err)
        }
        None => data.write_csv(io::stdout().lock()),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Figure { id, out } => write(&run_figure(id)?, out.as_deref()),
        Command::Sweep {
            config,
            sets,
            axes,
            out,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            for pair in &sets {
                cfg.set_pair(pair)?;
            }
            for spec in &axes {
                let (name, range) = spec.split_once('=').ok_or_else(|| {
                    CliError::Parse(format!("expected NAME=START:STOP:COUNT, got '{spec}'"))
                })?;
                cfg.set_axis(Axis::parse(name.trim(), range)?);
            }
            if out.is_some() {
                cfg.output = out;
            }
            let data = run_experiment(&cfg)?;
            write(&data, cfg.output.as_deref())
        }
        Command::Eval { kind, params, out } => {
            let mut cfg = ExperimentConfig::new(kind.parse::<Kind>()?);
            for pair in &params {
                cfg.set_pair(pair)?;
            }
            write(&run_experiment(&cfg)?, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("bad arguments")
                .trim_start_matches("error: ");
            return fail(&CliError::Usage(first.to_string()));
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.one_line());
    ExitCode::from(e.exit_status())
}
