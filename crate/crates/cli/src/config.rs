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

//! Experiment descriptions: a TOML file, flag overrides, and validation into
//! a [`Plan`] that can be evaluated.
//!
//! ```toml
//! kind = "homodyne"
//! output = "variance.csv"
//! columns = ["var_k"]        # optional subset of the output columns
//!
//! [params]
//! r1 = 1
//! alpha2 = 20
//! phi0 = "pi/8"
//!
//! [[axis]]
//! name = "phi1"
//! start = 0
//! stop = "pi/2"
//! count = 65
//! ```
//!
//! Numeric values may be TOML numbers or strings holding a `pi` expression.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::error::CliError;
use crate::expr::eval_expr;

/// Largest photon number handed to the truncated Fock-space engine when the
/// packet overlap is below one.
pub const ORACLE_MAX_TOTAL: u32 = 12;

/// Upper bound on grid points per run.
pub const MAX_GRID_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    FockDistribution,
    Quadratures,
    UncertaintyProduct,
    Homodyne,
}

impl Kind {
    pub const ALL: [Kind; 4] = [
        Kind::FockDistribution,
        Kind::Quadratures,
        Kind::UncertaintyProduct,
        Kind::Homodyne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::FockDistribution => "fock-distribution",
            Kind::Quadratures => "quadratures",
            Kind::UncertaintyProduct => "uncertainty-product",
            Kind::Homodyne => "homodyne",
        }
    }

    fn extra_keys(self) -> &'static [&'static str] {
        match self {
            Kind::FockDistribution => &["n", "m", "overlap", "overlap_phase"],
            Kind::Quadratures | Kind::UncertaintyProduct => {
                &["r1", "r2", "alpha1", "alpha1_arg", "alpha2", "gamma"]
            }
            Kind::Homodyne => &["r1", "alpha2", "gamma", "probe"],
        }
    }

    fn required_keys(self) -> &'static [&'static str] {
        match self {
            Kind::FockDistribution => &["n", "m"],
            Kind::Quadratures | Kind::UncertaintyProduct => &["r1", "r2"],
            Kind::Homodyne => &["r1", "alpha2"],
        }
    }

    fn accepts(self, key: &str) -> bool {
        ANGLE_KEYS.contains(&key) || self.extra_keys().contains(&key)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown kind '{s}' (expected one of fock-distribution, quadratures, uncertainty-product, homodyne)")))
    }
}

/// Control-field angles common to every kind. `delta` is added to `chi2_0`.
pub const ANGLE_KEYS: [&str; 7] = [
    "phi0", "chi2_0", "chi3_0", "phi1", "chi2_1", "chi3_1", "delta",
];

const INTEGER_KEYS: [&str; 2] = ["n", "m"];

/// One swept parameter: `count` equally spaced values from `start` to
/// `stop`, both included.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(name: &str, start: f64, stop: f64, count: usize) -> Result<Self, CliError> {
        if count == 0 {
            return Err(CliError::Config(format!(
                "axis '{name}': count must be at least 1"
            )));
        }
        if !(start.is_finite() && stop.is_finite()) {
            return Err(CliError::Config(format!(
                "axis '{name}': range must be finite"
            )));
        }
        Ok(Self {
            name: name.to_string(),
            start,
            stop,
            count,
        })
    }

    /// Parses `start:stop:count`, e.g. `0:pi/2:65`.
    pub fn parse(name: &str, spec: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = spec.split(':').collect();
        let [start, stop, count] = parts[..] else {
            return Err(CliError::Parse(format!(
                "axis '{name}': expected start:stop:count, got '{spec}'"
            )));
        };
        let count = count
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Parse(format!("axis '{name}': bad count '{count}'")))?;
        Self::new(name, eval_expr(start)?, eval_expr(stop)?, count)
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.count == 1 {
            return self.start;
        }
        if i + 1 == self.count {
            return self.stop;
        }
        self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Probe {
    #[default]
    Quantum,
    Classical,
}

/// Unvalidated experiment description, as read from a file and flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentConfig {
    pub kind: Option<Kind>,
    /// Raw values keyed by parameter name; numbers are kept as expressions.
    pub params: BTreeMap<String, String>,
    pub axes: Vec<Axis>,
    pub columns: Option<Vec<String>>,
    pub output: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    kind: Option<String>,
    output: Option<PathBuf>,
    columns: Option<Vec<String>>,
    #[serde(default)]
    params: BTreeMap<String, toml::Value>,
    #[serde(default)]
    axis: Vec<RawAxis>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxis {
    name: String,
    start: toml::Value,
    stop: toml::Value,
    count: i64,
}

fn scalar_text(key: &str, v: &toml::Value) -> Result<String, CliError> {
    match v {
        toml::Value::String(s) => Ok(s.clone()),
        toml::Value::Integer(i) => Ok(i.to_string()),
        // `{:?}` keeps every digit of the parsed double
        toml::Value::Float(x) => Ok(format!("{x:?}")),
        other => Err(CliError::Config(format!(
            "'{key}': expected a number or expression, got {}",
            other.type_str()
        ))),
    }
}

fn number(key: &str, v: &toml::Value) -> Result<f64, CliError> {
    eval_expr(&scalar_text(key, v)?)
}

impl ExperimentConfig {
    pub fn new(kind: Kind) -> Self {
        Self {
            kind: Some(kind),
            ..Self::default()
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        let mut cfg = Self {
            kind: raw.kind.as_deref().map(Kind::from_str).transpose()?,
            output: raw.output,
            columns: raw.columns,
            ..Self::default()
        };
        for (key, value) in &raw.params {
            cfg.params.insert(key.clone(), scalar_text(key, value)?);
        }
        for a in &raw.axis {
            let count = usize::try_from(a.count).map_err(|_| {
                CliError::Config(format!("axis '{}': count must be at least 1", a.name))
            })?;
            cfg.set_axis(Axis::new(
                &a.name,
                number(&a.name, &a.start)?,
                number(&a.name, &a.stop)?,
                count,
            )?);
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    /// Applies one `key=value` override. `kind`, `output` and `columns`
    /// (comma separated) address the top level; every other key is a
    /// parameter.
    pub fn set(&mut self, key: &str, value: &str) -> Result<&mut Self, CliError> {
        let key = key.trim();
        let value = value.trim();
        match key {
            "kind" => self.kind = Some(value.parse()?),
            "output" => self.output = Some(PathBuf::from(value)),
            "columns" => {
                self.columns = Some(value.split(',').map(|c| c.trim().to_string()).collect())
            }
            "" => return Err(CliError::Parse("empty key in override".into())),
            _ => {
                self.params.insert(key.to_string(), value.to_string());
            }
        }
        Ok(self)
    }

    /// Applies a `key=value` pair as given on the command line.
    pub fn set_pair(&mut self, pair: &str) -> Result<&mut Self, CliError> {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Parse(format!("expected key=value, got '{pair}'")))?;
        self.set(k, v)
    }

    /// Adds an axis, replacing one of the same name in place.
    pub fn set_axis(&mut self, axis: Axis) -> &mut Self {
        match self.axes.iter_mut().find(|a| a.name == axis.name) {
            Some(slot) => *slot = axis,
            None => self.axes.push(axis),
        }
        self
    }

    /// Checks kind/parameter consistency and resolves every value.
    pub fn validate(&self) -> Result<Plan, CliError> {
        let kind = self
            .kind
            .ok_or_else(|| CliError::Config("no experiment kind given".into()))?;
        for key in self.params.keys() {
            if !kind.accepts(key) {
                return Err(CliError::Config(format!(
                    "parameter '{key}' does not apply to kind {kind}"
                )));
            }
        }
        let mut seen = Vec::new();
        for axis in &self.axes {
            if !kind.accepts(&axis.name)
                || INTEGER_KEYS.contains(&axis.name.as_str())
                || axis.name == "probe"
            {
                return Err(CliError::Config(format!(
                    "'{}' cannot be swept for kind {kind}",
                    axis.name
                )));
            }
            if seen.contains(&&axis.name) {
                return Err(CliError::Config(format!(
                    "axis '{}' declared twice",
                    axis.name
                )));
            }
            seen.push(&axis.name);
        }
        for &key in kind.required_keys() {
            if !self.params.contains_key(key) && !self.axes.iter().any(|a| a.name == key) {
                return Err(CliError::Config(format!(
                    "kind {kind} needs parameter '{key}'"
                )));
            }
        }

        let mut base = Point::default();
        for (key, raw) in &self.params {
            match key.as_str() {
                "n" | "m" => {
                    let v = raw.parse::<u32>().map_err(|_| {
                        CliError::Config(format!(
                            "'{key}' must be a non-negative integer, got '{raw}'"
                        ))
                    })?;
                    if key == "n" {
                        base.n = v;
                    } else {
                        base.m = v;
                    }
                }
                "probe" => {
                    base.probe = match raw.as_str() {
                        "quantum" => Probe::Quantum,
                        "classical" => Probe::Classical,
                        _ => {
                            return Err(CliError::Config(format!(
                                "probe must be quantum or classical, got '{raw}'"
                            )))
                        }
                    }
                }
                _ => base.set_real(key, eval_expr(raw)?),
            }
        }

        let points = self
            .axes
            .iter()
            .try_fold(1usize, |acc, a| acc.checked_mul(a.count))
            .filter(|&p| p <= MAX_GRID_POINTS)
            .ok_or_else(|| CliError::Config(format!("grid exceeds {MAX_GRID_POINTS} points")))?;

        let range = |name: &str| -> (f64, f64) {
            match self.axes.iter().find(|a| a.name == name) {
                Some(a) => (a.start.min(a.stop), a.start.max(a.stop)),
                None => (base.real(name), base.real(name)),
            }
        };
        match kind {
            Kind::FockDistribution => {
                let (lo, hi) = range("overlap");
                if lo < 0.0 || hi > 1.0 {
                    return Err(CliError::Config(format!(
                        "overlap must lie in [0, 1], got [{lo}, {hi}]"
                    )));
                }
                let total = base.n + base.m;
                let partial = lo < 1.0;
                if partial && total > ORACLE_MAX_TOTAL {
                    return Err(CliError::Config(format!(
                        "overlap below 1 needs the Fock-space engine, limited to n + m <= {ORACLE_MAX_TOTAL} (got {total})"
                    )));
                }
            }
            Kind::Quadratures | Kind::UncertaintyProduct | Kind::Homodyne => {
                for key in ["alpha1", "alpha2"] {
                    let (lo, _) = range(key);
                    if lo < 0.0 {
                        return Err(CliError::Config(format!(
                            "'{key}' is a modulus and must be >= 0"
                        )));
                    }
                }
            }
        }

        let all = output_columns(kind, &base);
        let select = match &self.columns {
            None => (0..all.len()).collect(),
            Some(names) => {
                if names.is_empty() {
                    return Err(CliError::Config("empty column selection".into()));
                }
                names
                    .iter()
                    .map(|n| {
                        all.iter().position(|c| c == n).ok_or_else(|| {
                            CliError::Config(format!(
                                "kind {kind} has no column '{n}' (available: {})",
                                all.join(",")
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
        };

        Ok(Plan {
            kind,
            base,
            axes: self.axes.clone(),
            columns: all,
            select,
            points,
        })
    }
}

/// Names of every quantity computed for `kind`.
pub fn output_columns(kind: Kind, base: &Point) -> Vec<String> {
    match kind {
        Kind::FockDistribution => (0..=base.n + base.m)
            .map(|i| format!("p{i}"))
            .chain(["mean".to_string(), "variance".to_string()])
            .collect(),
        Kind::Quadratures => ["mean_q", "var_q", "mean_p", "var_p"]
            .map(String::from)
            .to_vec(),
        Kind::UncertaintyProduct => vec!["product".into()],
        Kind::Homodyne => vec!["var_k".into()],
    }
}

/// Fully resolved parameters at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub phi0: f64,
    pub chi2_0: f64,
    pub chi3_0: f64,
    pub phi1: f64,
    pub chi2_1: f64,
    pub chi3_1: f64,
    pub delta: f64,
    pub n: u32,
    pub m: u32,
    pub overlap: f64,
    pub overlap_phase: f64,
    pub r1: f64,
    pub r2: f64,
    pub alpha1: f64,
    pub alpha1_arg: f64,
    pub alpha2: f64,
    pub gamma: f64,
    pub probe: Probe,
}

impl Default for Point {
    fn default() -> Self {
        Self {
            phi0: 0.0,
            chi2_0: 0.0,
            chi3_0: 0.0,
            phi1: 0.0,
            chi2_1: 0.0,
            chi3_1: 0.0,
            delta: 0.0,
            n: 0,
            m: 0,
            overlap: 1.0,
            overlap_phase: 0.0,
            r1: 0.0,
            r2: 0.0,
            alpha1: 0.0,
            alpha1_arg: 0.0,
            alpha2: 0.0,
            gamma: 0.0,
            probe: Probe::Quantum,
        }
    }
}

impl Point {
    fn slot(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "phi0" => &mut self.phi0,
            "chi2_0" => &mut self.chi2_0,
            "chi3_0" => &mut self.chi3_0,
            "phi1" => &mut self.phi1,
            "chi2_1" => &mut self.chi2_1,
            "chi3_1" => &mut self.chi3_1,
            "delta" => &mut self.delta,
            "overlap" => &mut self.overlap,
            "overlap_phase" => &mut self.overlap_phase,
            "r1" => &mut self.r1,
            "r2" => &mut self.r2,
            "alpha1" => &mut self.alpha1,
            "alpha1_arg" => &mut self.alpha1_arg,
            "alpha2" => &mut self.alpha2,
            "gamma" => &mut self.gamma,
            _ => return None,
        })
    }

    /// Sets a real-valued parameter. Panics on a name that is not one;
    /// validation guarantees this never happens for a [`Plan`].
    pub fn set_real(&mut self, key: &str, value: f64) {
        *self
            .slot(key)
            .unwrap_or_else(|| panic!("'{key}' is not a real parameter")) = value;
    }

    pub fn real(&self, key: &str) -> f64 {
        let mut p = *self;
        *p.slot(key)
            .unwrap_or_else(|| panic!("'{key}' is not a real parameter"))
    }
}

/// A validated experiment, ready to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub kind: Kind,
    pub base: Point,
    pub axes: Vec<Axis>,
    /// Every quantity the kind computes.
    pub columns: Vec<String>,
    /// Indices into `columns` that are written, in output order.
    pub select: Vec<usize>,
    pub points: usize,
}

impl Plan {
    /// Parameters at flat index `idx`; the last declared axis varies
    /// fastest.
    pub fn point(&self, mut idx: usize) -> (Vec<f64>, Point) {
        let mut p = self.base;
        let mut coords = vec![0.0; self.axes.len()];
        for (k, axis) in self.axes.iter().enumerate().rev() {
            let v = axis.value(idx % axis.count);
            idx /= axis.count;
            coords[k] = v;
            p.set_real(&axis.name, v);
        }
        (coords, p)
    }

    pub fn header(&self) -> Vec<String> {
        self.axes
            .iter()
            .map(|a| a.name.clone())
            .chain(self.select.iter().map(|&i| self.columns[i].clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn axis_spacing_hits_both_ends() {
        let a = Axis::parse("phi1", "0:pi/2:65").unwrap();
        let v = a.values();
        assert_eq!(v.len(), 65);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[16], PI / 8.0);
        assert_eq!(v[64], PI / 2.0);
        assert_eq!(Axis::parse("x", "1:2:1").unwrap().values(), vec![1.0]);
        assert!(Axis::parse("x", "0:1:0").is_err());
        assert!(Axis::parse("x", "0:1").is_err());
        assert!(Axis::parse("x", "0:1:-3").is_err());
    }

    #[test]
    fn toml_round_trip() {
        let cfg = ExperimentConfig::from_toml_str(
            r#"
            kind = "homodyne"
            output = "out.csv"
            [params]
            r1 = 1
            alpha2 = 20.5
            phi0 = "pi/8"
            [[axis]]
            name = "phi1"
            start = 0
            stop = "pi/2"
            count = 5
            [[axis]]
            name = "gamma"
            start = 0
            stop = "2*pi"
            count = 3
            "#,
        )
        .unwrap();
        let plan = cfg.validate().unwrap();
        assert_eq!(plan.kind, Kind::Homodyne);
        assert_eq!(plan.base.phi0, PI / 8.0);
        assert_eq!(plan.base.alpha2, 20.5);
        assert_eq!(plan.points, 15);
        assert_eq!(plan.header(), ["phi1", "gamma", "var_k"]);
        let (coords, p) = plan.point(4);
        assert_eq!(coords, vec![PI / 8.0, PI]);
        assert_eq!((p.phi1, p.gamma), (PI / 8.0, PI));
    }

    #[test]
    fn overrides_win() {
        let mut cfg =
            ExperimentConfig::from_toml_str("kind = \"quadratures\"\n[params]\nr1 = 1\nr2 = 2\n")
                .unwrap();
        cfg.set_pair("r2=pi")
            .unwrap()
            .set_pair("columns=var_q, var_p")
            .unwrap();
        cfg.set_axis(Axis::parse("phi1", "0:1:2").unwrap());
        cfg.set_axis(Axis::parse("phi1", "0:1:3").unwrap());
        let plan = cfg.validate().unwrap();
        assert_eq!(plan.base.r2, PI);
        assert_eq!(plan.points, 3);
        assert_eq!(plan.header(), ["phi1", "var_q", "var_p"]);
    }

    #[test]
    fn rejects_mismatches() {
        let base = || {
            let mut c = ExperimentConfig::new(Kind::FockDistribution);
            c.set("n", "1").unwrap().set("m", "1").unwrap();
            c
        };
        assert!(base().validate().is_ok());
        let overrides: [&[&str]; 7] = [
            &["r1=1"],
            &["n=1.5"],
            &["overlap=1.2"],
            &["n=7", "m=7", "overlap=0.5"],
            &["columns=p9"],
            &["phi1=pi/"],
            &["probe=quantum"],
        ];
        for pairs in overrides {
            let mut c = base();
            for pair in pairs {
                c.set_pair(pair).unwrap();
            }
            assert!(c.validate().is_err(), "{pairs:?}");
        }
        let mut c = base();
        c.params.remove("m");
        assert!(c.validate().is_err());
        let mut c = base();
        c.set_axis(Axis::parse("n", "0:1:2").unwrap());
        assert!(c.validate().is_err());
        let mut c = base();
        c.kind = None;
        assert!(c.validate().is_err());
        assert!(ExperimentConfig::from_toml_str("kind = \"nope\"").is_err());
        assert!(ExperimentConfig::from_toml_str("kindd = \"homodyne\"").is_err());
        assert!(ExperimentConfig::from_toml_str("[params]\nr1 = [1]").is_err());
        let mut h = ExperimentConfig::new(Kind::Homodyne);
        h.set("r1", "1").unwrap().set("alpha2", "-1").unwrap();
        assert!(h.validate().is_err());
        h.set("alpha2", "1").unwrap().set("probe", "semi").unwrap();
        assert!(h.validate().is_err());
    }
}
