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

//! Variance of `K = N₁ - N₂`, the difference between the photon numbers
//! released in the two channels, for a squeezed vacuum stored first and a
//! coherent probe `α₂ = |α₂| e^{iγ}` stored second (identical packets).

use alloc::format;
use alloc::vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::fock_states::{coherent_state, cutoff_for_tail, squeezed_coherent_state};
use crate::mode_transform::{build_transfer_matrix, finite, StageAngles, TransferMatrix};
use crate::{Error, Result};

/// Largest truncated probability mass accepted by [`homodyne_oracle`].
pub const TAIL_THRESHOLD: f64 = 1e-10;

/// How the coherent probe in the second channel is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProbeTreatment {
    #[default]
    Quantum,
    /// The probe operators are replaced by c-numbers; this removes the
    /// `sinh² r₁` vacuum-beat term.
    Classical,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomodyneConfig {
    pub r1: f64,
    pub alpha2_mod: f64,
    pub gamma: f64,
    pub storage: StageAngles,
    pub release: StageAngles,
    pub probe: ProbeTreatment,
}

impl HomodyneConfig {
    pub fn new(
        r1: f64,
        alpha2_mod: f64,
        gamma: f64,
        storage: StageAngles,
        release: StageAngles,
        probe: ProbeTreatment,
    ) -> Result<Self> {
        finite("r1", r1)?;
        finite("gamma", gamma)?;
        if !(alpha2_mod.is_finite() && alpha2_mod >= 0.0) {
            return Err(Error::ParameterDomain {
                name: "alpha2_mod",
                value: alpha2_mod,
            });
        }
        Ok(Self {
            r1,
            alpha2_mod,
            gamma,
            storage,
            release,
            probe,
        })
    }

    pub fn transfer_matrix(&self) -> TransferMatrix {
        build_transfer_matrix(&self.storage, &self.release)
    }

    pub fn alpha2(&self) -> Complex64 {
        Complex64::from_polar(self.alpha2_mod, self.gamma)
    }

    fn phases_zero(&self) -> bool {
        self.storage.phases_zero() && self.release.phases_zero()
    }

    /// Storage with `phi = 0`, release with `phi = π/4`, and only the release
    /// `chi2` free.
    fn is_balanced_layout(&self) -> bool {
        self.storage.phi() == 0.0
            && (self.release.phi() - core::f64::consts::FRAC_PI_4).abs() < 1e-12
            && self.storage.phases_zero()
            && self.release.chi3() == 0.0
    }

    /// `W(K)` from whichever closed form covers this configuration:
    /// [`general_variance`] when all control phases vanish, otherwise the
    /// balanced layout through [`balanced_variance`].
    pub fn variance(&self) -> Result<f64> {
        if self.phases_zero() {
            return general_variance(self);
        }
        if self.is_balanced_layout() {
            let classical =
                balanced_variance(self.r1, self.alpha2_mod, self.gamma, self.release.chi2())?;
            return Ok(match self.probe {
                ProbeTreatment::Classical => classical,
                ProbeTreatment::Quantum => classical + self.r1.sinh().powi(2),
            });
        }
        Err(Error::Unsupported(format!(
            "no closed form for chi2_sto={}, chi3_sto={}, chi2_rel={}, chi3_rel={} outside the balanced layout",
            self.storage.chi2(),
            self.storage.chi3(),
            self.release.chi2(),
            self.release.chi3()
        )))
    }
}

/// Balanced homodyning with a classical probe (storage `phi = 0`, release
/// `phi = π/4`, `chi2_sto = chi3_sto = chi3_rel = 0`):
///
/// `W(K) = |α₂|² [cosh 2r₁ - sinh 2r₁ cos 2(γ - χ₂¹)]`.
///
/// Under this crate's transfer-matrix convention `K = e^{-iχ₂¹} X₁†X₂ + h.c.`,
/// so the release phase enters as `γ - χ₂¹`.
pub fn balanced_variance(r1: f64, alpha2_mod: f64, gamma: f64, chi2_release: f64) -> Result<f64> {
    finite("r1", r1)?;
    finite("gamma", gamma)?;
    finite("chi2_release", chi2_release)?;
    finite("alpha2_mod", alpha2_mod)?;
    let two_r = 2.0 * r1;
    Ok(alpha2_mod.powi(2) * (two_r.cosh() - two_r.sinh() * (2.0 * (gamma - chi2_release)).cos()))
}

/// `W(K)` for zero control phases and arbitrary mixing angles:
///
/// ```text
/// W(K) = cos²(2Δ)(½sinh²2r₁ + |α₂|²)
///      + sin²(2Δ)[|α₂|²(cosh 2r₁ - sinh 2r₁ cos 2γ) + sinh²r₁],   Δ = φ¹ - φ⁰
/// ```
///
/// The classical probe drops the final `sinh² r₁`.
pub fn general_variance(config: &HomodyneConfig) -> Result<f64> {
    if !config.phases_zero() {
        return Err(Error::Unsupported(format!(
            "general homodyne form needs zero control phases, got chi2_sto={}, chi3_sto={}, chi2_rel={}, chi3_rel={}",
            config.storage.chi2(),
            config.storage.chi3(),
            config.release.chi2(),
            config.release.chi3()
        )));
    }
    let r = config.r1;
    let alpha_sq = config.alpha2_mod.powi(2);
    let two_delta = 2.0 * (config.release.phi() - config.storage.phi());
    let (sin_sq, cos_sq) = (two_delta.sin().powi(2), two_delta.cos().powi(2));
    let unmixed = 0.5 * (2.0 * r).sinh().powi(2) + alpha_sq;
    let beat = match config.probe {
        ProbeTreatment::Quantum => r.sinh().powi(2),
        ProbeTreatment::Classical => 0.0,
    };
    let mixed =
        alpha_sq * ((2.0 * r).cosh() - (2.0 * r).sinh() * (2.0 * config.gamma).cos()) + beat;
    Ok(cos_sq * unmixed + sin_sq * mixed)
}

/// `W(K)` by operator algebra on a two-mode Fock space truncated at `cutoff`
/// photons per input mode, for any control phases and a quantum probe.
///
/// The input is `Sq(r₁)|0⟩ ⊗ |α₂⟩`; `K = Σ_kl M_kl a_k† a_l` with
/// `M = S† diag(1, -1) S` is applied exactly to the truncated state, and
/// `W = ‖Kψ‖² - ⟨ψ|K|ψ⟩²`.
pub fn homodyne_oracle(config: &HomodyneConfig, cutoff: usize) -> Result<f64> {
    if config.probe == ProbeTreatment::Classical {
        return Err(Error::Unsupported(
            "the Fock-space oracle models a quantum probe".into(),
        ));
    }
    let zero = Complex64::new(0.0, 0.0);
    let squeezed = squeezed_coherent_state(zero, config.r1, cutoff)?;
    let probe = coherent_state(config.alpha2(), cutoff)?;
    let tail = squeezed.tail_mass() + probe.tail_mass();
    if tail > TAIL_THRESHOLD {
        let need = cutoff_for_tail(zero, config.r1, TAIL_THRESHOLD / 2.0)?.max(cutoff_for_tail(
            config.alpha2(),
            0.0,
            TAIL_THRESHOLD / 2.0,
        )?);
        return Err(Error::Truncation {
            tail,
            suggested_cutoff: need,
        });
    }
    let psi1 = squeezed.renormalized();
    let psi2 = probe.renormalized();

    let s = config.transfer_matrix();
    let z = [1.0, -1.0];
    let mut m = [[zero; 2]; 2];
    for (k, row) in m.iter_mut().enumerate() {
        for (l, out) in row.iter_mut().enumerate() {
            *out = (0..2)
                .map(|j| s.get(j, k).conj() * s.get(j, l) * z[j])
                .sum();
        }
    }

    // K ψ lives on occupations up to cutoff + 1
    let width = cutoff + 2;
    let mut k_psi = vec![zero; width * width];
    let at = |n1: usize, n2: usize| n1 * width + n2;
    let mut mean = zero;
    for (n1, &x1) in psi1.iter().enumerate() {
        for (n2, &x2) in psi2.iter().enumerate() {
            let a = x1 * x2;
            if a == zero {
                continue;
            }
            let diag = m[0][0] * n1 as f64 + m[1][1] * n2 as f64;
            k_psi[at(n1, n2)] += diag * a;
            mean += a.conj() * diag * a;
            if n2 > 0 {
                // a₁† a₂
                let w = m[0][1] * ((n1 + 1) as f64 * n2 as f64).sqrt() * a;
                k_psi[at(n1 + 1, n2 - 1)] += w;
                if n1 < cutoff {
                    mean += (psi1[n1 + 1] * psi2[n2 - 1]).conj() * w;
                }
            }
            if n1 > 0 {
                // a₂† a₁
                let w = m[1][0] * (n1 as f64 * (n2 + 1) as f64).sqrt() * a;
                k_psi[at(n1 - 1, n2 + 1)] += w;
                if n2 < cutoff {
                    mean += (psi1[n1 - 1] * psi2[n2 + 1]).conj() * w;
                }
            }
        }
    }
    let second: f64 = k_psi.iter().map(|z| z.norm_sqr()).sum();
    Ok(second - mean.re * mean.re)
}
