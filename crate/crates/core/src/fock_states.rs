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

//! Single-mode Fock amplitudes of coherent and squeezed-coherent states.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::mode_transform::finite;
use crate::Result;

/// A single-mode state truncated at `cutoff` photons, together with the
/// probability mass that fell beyond the cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleModeState {
    amplitudes: Vec<Complex64>,
    tail: f64,
}

impl SingleModeState {
    /// Amplitudes for `0..=cutoff` photons, normalized over the full
    /// (untruncated) state.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn cutoff(&self) -> usize {
        self.amplitudes.len() - 1
    }

    /// `1 - Σ_{k <= cutoff} |ψ_k|²`.
    pub fn tail_mass(&self) -> f64 {
        self.tail
    }

    /// Amplitudes rescaled to unit norm on the truncated space.
    pub fn renormalized(&self) -> Vec<Complex64> {
        let norm = self
            .amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        self.amplitudes.iter().map(|z| z / norm).collect()
    }

    /// `⟨a⟩`, `⟨a²⟩` and `⟨a†a⟩` on the renormalized truncated state.
    pub fn ladder_moments(&self) -> (Complex64, Complex64, f64) {
        let psi = self.renormalized();
        let mut a = Complex64::new(0.0, 0.0);
        let mut a2 = Complex64::new(0.0, 0.0);
        let mut n = 0.0;
        for k in 0..psi.len() {
            n += k as f64 * psi[k].norm_sqr();
            if k >= 1 {
                a += psi[k - 1].conj() * psi[k] * (k as f64).sqrt();
            }
            if k >= 2 {
                a2 += psi[k - 2].conj() * psi[k] * ((k * (k - 1)) as f64).sqrt();
            }
        }
        (a, a2, n)
    }
}

/// Number of terms computed before truncation, generous enough that the
/// discarded remainder is far below double precision.
fn internal_length(alpha: Complex64, r: f64, cutoff: usize) -> usize {
    let mean = (alpha.norm() * (r.cosh() + r.sinh().abs())).powi(2) + r.sinh().powi(2);
    let spread = 40.0 * (mean + 1.0).sqrt() * (1.0 + r.abs()).powi(2) * r.abs().exp();
    cutoff.max((mean + spread) as usize + 64) + 1
}

/// The eigenstate of `A = cosh r·a + sinh r·a†` with eigenvalue `alpha`,
/// i.e. the squeezed-coherent state `Sq(r)|α⟩` where
/// `Sq(r)† a Sq(r) = a cosh r - a† sinh r`. Its `q` variance is `e^{-2r}/2`.
///
/// Amplitudes follow from `(cosh r·a + sinh r·a†)ψ = αψ`:
/// `ψ_{k+1} = (α ψ_k - sinh r √k ψ_{k-1}) / (cosh r √(k+1))`.
pub fn squeezed_coherent_state(alpha: Complex64, r: f64, cutoff: usize) -> Result<SingleModeState> {
    finite("alpha (re)", alpha.re)?;
    finite("alpha (im)", alpha.im)?;
    finite("squeezing r", r)?;
    let (ch, sh) = (r.cosh(), r.sinh());
    let len = internal_length(alpha, r, cutoff);
    let mut psi = Vec::with_capacity(len);
    psi.push(Complex64::new(1.0, 0.0));
    for k in 0..len - 1 {
        let prev = if k == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            psi[k - 1]
        };
        let next =
            (alpha * psi[k] - prev * (sh * (k as f64).sqrt())) / (ch * ((k + 1) as f64).sqrt());
        psi.push(next);
        if next.norm() > 1e100 {
            psi.iter_mut().for_each(|z| *z *= 1e-100);
        }
    }
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut amplitudes: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
    amplitudes.truncate(cutoff + 1);
    let kept: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
    Ok(SingleModeState {
        amplitudes,
        tail: (1.0 - kept).max(0.0),
    })
}

pub fn coherent_state(alpha: Complex64, cutoff: usize) -> Result<SingleModeState> {
    squeezed_coherent_state(alpha, 0.0, cutoff)
}

/// Smallest cutoff whose truncation tail is at most `threshold`.
pub fn cutoff_for_tail(alpha: Complex64, r: f64, threshold: f64) -> Result<usize> {
    finite("squeezing r", r)?;
    let len = internal_length(alpha, r, 0);
    let state = squeezed_coherent_state(alpha, r, len - 1)?;
    let mut kept = 0.0;
    for (k, z) in state.amplitudes.iter().enumerate() {
        kept += z.norm_sqr();
        if 1.0 - kept <= threshold {
            return Ok(k);
        }
    }
    Ok(len - 1)
}
