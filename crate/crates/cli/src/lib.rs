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

//! Command-line front end for the `stored-light` crate: parameter sweeps
//! over storage and release angles, the datasets behind the five figure
//! presets, and single-point evaluations, all written as CSV.

pub mod config;
pub mod dataset;
mod error;
pub mod expr;
pub mod run;

pub use config::{Axis, ExperimentConfig, Kind, Plan, Point};
pub use dataset::{format_number, Dataset};
pub use error::CliError;
pub use run::{evaluate, figure_config, run_experiment, run_figure, run_plan};
