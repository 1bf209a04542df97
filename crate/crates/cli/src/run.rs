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

//! Grid evaluation and the figure presets.

use std::f64::consts::PI;

use rayon::prelude::*;
use stored_light::{
    build_fock_input, build_transfer_matrix, mean_release_count, oracle_distribution,
    release_distribution_s1, release_variance, released_number_operator, released_quadratures,
    uncertainty_product, Channel, Complex64, FockInput, GramMatrix, HomodyneConfig, ModeBasis,
    ProbeTreatment, SqueezedInput, StageAngles, TransferMatrix,
};

use crate::config::{Axis, ExperimentConfig, Kind, Plan, Point, Probe};
use crate::dataset::Dataset;
use crate::error::CliError;

fn stages(p: &Point) -> Result<(StageAngles, StageAngles), CliError> {
    Ok((
        StageAngles::new(p.phi0, p.chi2_0 + p.delta, p.chi3_0)?,
        StageAngles::new(p.phi1, p.chi2_1, p.chi3_1)?,
    ))
}

fn transfer(p: &Point) -> Result<TransferMatrix, CliError> {
    let (storage, release) = stages(p)?;
    Ok(build_transfer_matrix(&storage, &release))
}

/// Every quantity of `kind` at one parameter point, in the order of
/// [`crate::config::output_columns`].
pub fn evaluate(kind: Kind, p: &Point) -> Result<Vec<f64>, CliError> {
    match kind {
        Kind::FockDistribution => {
            let s = transfer(p)?;
            let gram = GramMatrix::from_polar(p.overlap, p.overlap_phase)?;
            let input = FockInput::new(p.n, p.m, gram)?;
            let dist = if gram.is_unit_modulus() {
                release_distribution_s1(&input, &s)?
            } else {
                // the closed form needs identical packets; fall back to the
                // truncated Fock space
                let total = (p.n + p.m) as usize;
                let basis = ModeBasis::new(gram, total.max(1))?;
                let state = build_fock_input(p.n as usize, p.m as usize, &basis)?;
                oracle_distribution(
                    &state,
                    &released_number_operator(&s, &basis, Channel::First),
                )?
            };
            let mut row = dist.probs().to_vec();
            row.push(mean_release_count(&input, &s, Channel::First));
            row.push(release_variance(&input, &s));
            Ok(row)
        }
        Kind::Quadratures | Kind::UncertaintyProduct => {
            let input = SqueezedInput::new(
                Complex64::from_polar(p.alpha1, p.alpha1_arg),
                p.r1,
                Complex64::from_polar(p.alpha2, p.gamma),
                p.r2,
            )?;
            let stats = released_quadratures(&input, &transfer(p)?);
            Ok(if kind == Kind::Quadratures {
                vec![stats.mean_q, stats.var_q, stats.mean_p, stats.var_p]
            } else {
                vec![uncertainty_product(&stats)]
            })
        }
        Kind::Homodyne => {
            let (storage, release) = stages(p)?;
            let probe = match p.probe {
                Probe::Quantum => ProbeTreatment::Quantum,
                Probe::Classical => ProbeTreatment::Classical,
            };
            let cfg = HomodyneConfig::new(p.r1, p.alpha2, p.gamma, storage, release, probe)?;
            Ok(vec![cfg.variance()?])
        }
    }
}

/// Evaluates a validated plan over its grid. Points run on the rayon pool;
/// rows come back in row-major order whatever the completion order, and
/// the first failing point (in that order) is reported.
pub fn run_plan(plan: &Plan) -> Result<Dataset, CliError> {
    log::debug!("{}: {} grid points", plan.kind, plan.points);
    let rows: Vec<Result<Vec<f64>, CliError>> = (0..plan.points)
        .into_par_iter()
        .map(|idx| {
            let (mut row, point) = plan.point(idx);
            let values = evaluate(plan.kind, &point)?;
            row.extend(plan.select.iter().map(|&i| values[i]));
            Ok(row)
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(Dataset::new(plan.header(), rows))
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Dataset, CliError> {
    run_plan(&config.validate()?)
}

/// Grid points per axis in the figure presets: 64 intervals, so that the
/// quarter and eighth points of each range fall on the grid.
pub const FIGURE_GRID: usize = 65;

pub const FIGURE_IDS: std::ops::RangeInclusive<u32> = 1..=5;

/// The experiment behind figure `id` (1 to 5).
pub fn figure_config(id: u32) -> Result<ExperimentConfig, CliError> {
    let phi1 = Axis::new("phi1", 0.0, PI / 2.0, FIGURE_GRID)?;
    let phase_axis = |name: &str| Axis::new(name, 0.0, 2.0 * PI, FIGURE_GRID);
    let mut cfg = match id {
        1 => {
            let mut c = ExperimentConfig::new(Kind::FockDistribution);
            c.set("n", "6")?
                .set("m", "6")?
                .set("phi0", "pi/8")?
                .set("columns", "p6")?;
            c.set_axis(phase_axis("chi2_1")?);
            c
        }
        2..=4 => {
            let kind = if id == 4 {
                Kind::UncertaintyProduct
            } else {
                Kind::Quadratures
            };
            let mut c = ExperimentConfig::new(kind);
            c.set("r1", "1")?.set("r2", "0.5")?.set("phi0", "pi/4")?;
            match id {
                2 => c.set("columns", "var_q")?,
                3 => c.set("columns", "var_p")?,
                _ => &mut c,
            };
            c.set_axis(phase_axis("chi2_1")?);
            c
        }
        5 => {
            let mut c = ExperimentConfig::new(Kind::Homodyne);
            c.set("r1", "1")?.set("alpha2", "20")?.set("phi0", "pi/8")?;
            c.set_axis(phase_axis("gamma")?);
            c
        }
        _ => {
            return Err(CliError::Usage(format!(
                "figure id must be 1 to 5, got {id}"
            )))
        }
    };
    // phi1 is the outer axis in every preset
    cfg.axes.insert(0, phi1);
    Ok(cfg)
}

pub fn run_figure(id: u32) -> Result<Dataset, CliError> {
    run_experiment(&figure_config(id)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fock(n: &str, m: &str) -> ExperimentConfig {
        let mut c = ExperimentConfig::new(Kind::FockDistribution);
        c.set("n", n).unwrap().set("m", m).unwrap();
        c
    }

    #[test]
    fn hom_delta_sweep() {
        let mut c = fock("1", "1");
        c.set("phi0", "pi/4").unwrap().set("phi1", "pi/4").unwrap();
        c.set_axis(Axis::parse("delta", "0:pi:9").unwrap());
        let d = run_experiment(&c).unwrap();
        assert_eq!(d.header(), ["delta", "p0", "p1", "p2", "mean", "variance"]);
        for row in d.rows() {
            assert!((row[2] - row[0].cos().powi(2)).abs() < 1e-12);
            assert!((row[4] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_overlap_uses_fock_space() {
        let mut c = fock("1", "1");
        c.set("phi0", "pi/4")
            .unwrap()
            .set("phi1", "pi/4")
            .unwrap()
            .set("delta", "pi/2")
            .unwrap();
        c.set_axis(Axis::parse("overlap", "0:1:3").unwrap());
        let d = run_experiment(&c).unwrap();
        let p1 = d.column("p1").unwrap();
        // distinguishable, half and full overlap: P(1) = (1 - |s|²)/2
        for (got, s) in p1.iter().zip([0.0f64, 0.5, 1.0]) {
            assert!(
                (got - (1.0 - s * s) / 2.0).abs() < 1e-10,
                "{got} at |s|={s}"
            );
        }
    }

    #[test]
    fn vacuum_quadratures_are_flat() {
        let mut c = ExperimentConfig::new(Kind::Quadratures);
        c.set("r1", "0").unwrap().set("r2", "0").unwrap();
        c.set_axis(Axis::parse("phi1", "0:pi/2:7").unwrap());
        c.set_axis(Axis::parse("chi2_1", "0:2*pi:5").unwrap());
        let d = run_experiment(&c).unwrap();
        assert_eq!(d.rows().len(), 35);
        for name in ["var_q", "var_p"] {
            assert!(d
                .column(name)
                .unwrap()
                .iter()
                .all(|v| (v - 0.5).abs() < 1e-15));
        }
    }

    #[test]
    fn homodyne_without_mixing_ignores_gamma() {
        let mut c = ExperimentConfig::new(Kind::Homodyne);
        c.set("r1", "0.7")
            .unwrap()
            .set("alpha2", "3")
            .unwrap()
            .set("phi0", "pi/8")
            .unwrap()
            .set("phi1", "pi/8")
            .unwrap();
        c.set_axis(Axis::parse("gamma", "0:2*pi:17").unwrap());
        let v = run_experiment(&c).unwrap().column("var_k").unwrap();
        assert!(v.iter().all(|x| (x - v[0]).abs() < 1e-9 * v[0]));
    }

    #[test]
    fn homodyne_outside_closed_forms_fails() {
        let mut c = ExperimentConfig::new(Kind::Homodyne);
        c.set("r1", "1")
            .unwrap()
            .set("alpha2", "1")
            .unwrap()
            .set("chi3_1", "0.3")
            .unwrap();
        assert!(matches!(run_experiment(&c), Err(CliError::Model(_))));
    }

    #[test]
    fn figure_headers() {
        let names: Vec<Vec<String>> = FIGURE_IDS
            .map(|i| figure_config(i).unwrap().validate().unwrap().header())
            .collect();
        assert_eq!(names[0], ["phi1", "chi2_1", "p6"]);
        assert_eq!(names[1], ["phi1", "chi2_1", "var_q"]);
        assert_eq!(names[2], ["phi1", "chi2_1", "var_p"]);
        assert_eq!(names[3], ["phi1", "chi2_1", "product"]);
        assert_eq!(names[4], ["phi1", "gamma", "var_k"]);
        assert!(figure_config(0).is_err());
        assert!(figure_config(6).is_err());
    }
}
