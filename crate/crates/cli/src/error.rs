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

use thiserror::Error;

/// Failures surfaced by the command-line front end. Each maps to a short
/// machine-readable code and a process exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Model(#[from] stored_light::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::Usage(_) => "usage",
            Self::Parse(_) => "parse",
            Self::Config(_) => "config",
            Self::Model(_) => "model",
            Self::Io { .. } | Self::Csv(_) => "io",
        }
    }

    pub fn exit_status(&self) -> u8 {
        match self {
            Self::Usage(_) | Self::Parse(_) | Self::Config(_) => 2,
            Self::Model(_) => 3,
            Self::Io { .. } | Self::Csv(_) => 4,
        }
    }

    /// `error code=<code> msg="<message>"` on a single line.
    pub fn one_line(&self) -> String {
        let msg: String = self
            .to_string()
            .chars()
            .map(|c| if c == '\n' || c == '\r' { ' ' } else { c })
            .collect::<String>()
            .replace('\\', "\\\\")
            .replace('"', "\\\"");
        format!("error code={} msg=\"{}\"", self.code(), msg.trim())
    }
}
