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

//! Counting statistics of stored Fock states: `n` photons stored at the first
//! storage stage, `m` at the second.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::dd::{ComplexDD, DoubleDouble};
use crate::mode_transform::{Channel, GramMatrix, TransferMatrix};
use crate::{Error, Result};

/// Default bound on `n + m`.
pub const DEFAULT_MAX_TOTAL: u32 = 64;

/// Hard bound on `n + m`; binomial coefficients are formed exactly in `u128`.
pub const ABSOLUTE_MAX_TOTAL: u32 = 100;

/// Accumulated probabilities outside `[0, 1]` by more than this are reported
/// as a consistency failure instead of being clamped.
pub const PROBABILITY_SLACK: f64 = 1e-9;

/// Allowed deviation of `Σ P(i)` from one.
pub const SUM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockInput {
    n: u32,
    m: u32,
    overlap: GramMatrix,
}

impl FockInput {
    pub fn new(n: u32, m: u32, overlap: GramMatrix) -> Result<Self> {
        Self::with_max_total(n, m, overlap, DEFAULT_MAX_TOTAL)
    }

    /// Like [`FockInput::new`] with a caller-chosen bound on `n + m`
    /// (at most [`ABSOLUTE_MAX_TOTAL`]).
    pub fn with_max_total(n: u32, m: u32, overlap: GramMatrix, max_total: u32) -> Result<Self> {
        let limit = max_total.min(ABSOLUTE_MAX_TOTAL);
        let total = n as usize + m as usize;
        if total > limit as usize {
            return Err(Error::Capacity {
                what: "stored photon number n + m",
                required: total,
                limit: limit as usize,
            });
        }
        Ok(Self { n, m, overlap })
    }

    /// Identical packets (`s = 1`).
    pub fn identical(n: u32, m: u32) -> Result<Self> {
        Self::new(n, m, GramMatrix::identical())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn total(&self) -> u32 {
        self.n + self.m
    }

    pub fn overlap(&self) -> GramMatrix {
        self.overlap
    }
}

/// Probabilities `P(i)` of releasing `i` photons at a given release stage,
/// `i = 0..=n+m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReleaseDistribution {
    probs: Vec<f64>,
}

impl ReleaseDistribution {
    /// Validates and clamps raw probabilities.
    pub fn from_raw(raw: Vec<f64>) -> Result<Self> {
        Self::from_raw_with_tolerance(raw, SUM_TOLERANCE)
    }

    pub(crate) fn from_raw_with_tolerance(mut raw: Vec<f64>, sum_tolerance: f64) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Consistency {
                what: "empty distribution",
                value: 0.0,
            });
        }
        for p in raw.iter_mut() {
            if !p.is_finite() || *p < -PROBABILITY_SLACK || *p > 1.0 + PROBABILITY_SLACK {
                return Err(Error::Consistency {
                    what: "probability entry",
                    value: *p,
                });
            }
            *p = p.clamp(0.0, 1.0);
        }
        let sum = raw.iter().sum::<f64>();
        if (sum - 1.0).abs() > sum_tolerance {
            return Err(Error::Consistency {
                what: "probability sum - 1",
                value: sum - 1.0,
            });
        }
        Ok(Self { probs: raw })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// `P(i)`, zero outside the support.
    pub fn get(&self, i: usize) -> f64 {
        self.probs.get(i).copied().unwrap_or(0.0)
    }

    /// Total photon number `n + m`.
    pub fn total_photons(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn mean(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(i, p)| i as f64 * p)
            .sum()
    }

    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        let second: f64 = self
            .probs
            .iter()
            .enumerate()
            .map(|(i, p)| (i * i) as f64 * p)
            .sum();
        second - mean * mean
    }

    /// The distribution seen by the other release channel,
    /// `P₂(i) = P₁(n + m - i)`.
    pub fn other_channel(&self) -> Self {
        let mut probs = self.probs.clone();
        probs.reverse();
        Self { probs }
    }
}

fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        // exact at every step: acc * (n - j) is divisible by j + 1
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    acc
}

/// `z⁰, z¹, …, z^count` in double-double precision.
fn power_table(z: Complex64, count: u32) -> Vec<ComplexDD> {
    let base = ComplexDD::new(z.re, z.im);
    let mut out = Vec::with_capacity(count as usize + 1);
    let mut acc = ComplexDD::ONE;
    out.push(acc);
    for _ in 0..count {
        acc = acc * base;
        out.push(acc);
    }
    out
}

/// Release distribution for identical packets.
///
/// ```text
/// P(i) = C(n+m, n)/C(n+m, i) · |Σ_k C(n,k) C(m,i-k) S₁₁^k S₂₁^{n-k} S₁₂^{i-k} S₂₂^{m-i+k}|²
/// ```
/// with `max(0, i-m) <= k <= min(n, i)`. This is the double sum over
/// `k, k'` written as a squared modulus. A pure phase on `s` is absorbed into
/// the second packet mode and does not change the result.
///
/// The terms alternate in sign and grow like `C(n, n/2)·C(m, m/2)`, so the
/// sum is accumulated in double-double arithmetic.
pub fn release_distribution_s1(
    input: &FockInput,
    s: &TransferMatrix,
) -> Result<ReleaseDistribution> {
    if !input.overlap.is_unit_modulus() {
        return Err(Error::OverlapNotUnity {
            modulus: input.overlap.modulus(),
        });
    }
    let (n, m) = (input.n, input.m);
    let total = n + m;
    let (p11, p21) = (power_table(s.s11(), n), power_table(s.s21(), n));
    let (p12, p22) = (power_table(s.s12(), m), power_table(s.s22(), m));
    let weight_n = DoubleDouble::from_u128(binomial(total, n));

    let raw = (0..=total)
        .map(|i| {
            let lo = i.saturating_sub(m);
            let hi = n.min(i);
            let mut amp = ComplexDD::default();
            for k in lo..=hi {
                let (a, b) = (k as usize, (i - k) as usize);
                let coeff = DoubleDouble::from_u128(binomial(n, k))
                    * DoubleDouble::from_u128(binomial(m, i - k));
                let term = p11[a] * p21[n as usize - a] * p12[b] * p22[m as usize - b];
                amp = amp + term.scale(coeff);
            }
            (weight_n * amp.norm_sqr()).to_f64() / binomial(total, i) as f64
        })
        .collect();
    ReleaseDistribution::from_raw(raw)
}

/// `⟨N⟩` for the given release channel: `|S_c1|² n + |S_c2|² m`. Valid for any
/// overlap.
pub fn mean_release_count(input: &FockInput, s: &TransferMatrix, channel: Channel) -> f64 {
    let [a, b] = s.row(channel);
    a.norm_sqr() * input.n as f64 + b.norm_sqr() * input.m as f64
}

/// Variance of the first-channel count,
/// `|S₁₁|²|S₁₂|²(2nm|s|² + n + m)`. Equal for both channels since the total
/// photon number is fixed.
pub fn release_variance(input: &FockInput, s: &TransferMatrix) -> f64 {
    let (n, m) = (input.n as f64, input.m as f64);
    let s_sq = input.overlap.modulus().powi(2);
    s.s11().norm_sqr() * s.s12().norm_sqr() * (2.0 * n * m * s_sq + n + m)
}

/// First-channel Fano factor, variance over mean.
pub fn fano_factor(input: &FockInput, s: &TransferMatrix) -> Result<f64> {
    let mean = mean_release_count(input, s, Channel::First);
    if mean < 1e-14 {
        return Err(Error::UndefinedRatio("mean first-channel count is zero"));
    }
    Ok(release_variance(input, s) / mean)
}
