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

//! Brute-force counting statistics on a truncated Fock space.
//!
//! The two stored packets are generally non-orthogonal. They are expanded
//! over two orthonormal packet modes `e₁ = f₁`, `e₂ ∝ f₂ - s f₁`, so that
//!
//! ```text
//! X_j(1) = a_{j,1}
//! X_j(2) = s*·a_{j,1} + √(1-|s|²)·a_{j,2}
//! ```
//!
//! for both polariton flavors `j`. With `|s| = 1` the second packet mode is
//! not needed and the basis has two logical modes instead of four.
//!
//! The truncated space holds every occupation with total photon number at
//! most `cutoff`. The number operators built here conserve the total, so
//! each fixed-total sector is treated exactly.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::fock_interference::ReleaseDistribution;
use crate::mode_transform::{Channel, GramMatrix, TransferMatrix};
use crate::{Error, Result};

pub const DEFAULT_CUTOFF: usize = 8;

/// Budget on `(cutoff + 1)^modes`, the size of the per-mode truncated space.
pub const MAX_SPACE_DIMENSION: usize = 1 << 22;

/// Eigenvalues of number operators are rounded to integers within this.
pub const EIGEN_ROUNDING_TOLERANCE: f64 = 1e-6;

const MAX_MODES: usize = 4;

/// Occupation numbers of the logical modes; unused trailing modes stay zero.
pub type Occupation = [u16; MAX_MODES];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct ModeBasis {
    overlap: GramMatrix,
    cutoff: usize,
    packet_modes: usize,
}

impl ModeBasis {
    pub fn new(overlap: GramMatrix, cutoff: usize) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::ParameterDomain {
                name: "cutoff",
                value: 0.0,
            });
        }
        let packet_modes = if overlap.is_unit_modulus() { 1 } else { 2 };
        let modes = 2 * packet_modes as u32;
        let dim = (cutoff + 1).checked_pow(modes).unwrap_or(usize::MAX);
        if dim > MAX_SPACE_DIMENSION || cutoff > u16::MAX as usize {
            return Err(Error::Capacity {
                what: "truncated space dimension",
                required: dim,
                limit: MAX_SPACE_DIMENSION,
            });
        }
        Ok(Self {
            overlap,
            cutoff,
            packet_modes,
        })
    }

    pub fn with_default_cutoff(overlap: GramMatrix) -> Result<Self> {
        Self::new(overlap, DEFAULT_CUTOFF)
    }

    pub fn overlap(&self) -> GramMatrix {
        self.overlap
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Orthonormal packet modes per flavor: 1 when `|s| = 1`, else 2.
    pub fn packet_modes(&self) -> usize {
        self.packet_modes
    }

    /// Number of orthonormal logical modes (flavors × packet modes).
    pub fn mode_count(&self) -> usize {
        2 * self.packet_modes
    }

    fn mode_index(&self, flavor: usize, packet_mode: usize) -> usize {
        flavor * self.packet_modes + packet_mode
    }

    /// Annihilation coefficients of the storage polariton `X_flavor(packet)`
    /// over the logical modes (zero-based `flavor` and `packet`).
    pub fn storage_mode(&self, flavor: usize, packet: usize) -> Vec<Complex64> {
        let mut v = vec![ZERO; self.mode_count()];
        let s = self.overlap.overlap();
        if packet == 0 {
            v[self.mode_index(flavor, 0)] = ONE;
        } else {
            v[self.mode_index(flavor, 0)] = s.conj();
            if self.packet_modes == 2 {
                let c = (1.0 - s.norm_sqr()).max(0.0).sqrt();
                v[self.mode_index(flavor, 1)] = Complex64::new(c, 0.0);
            }
        }
        v
    }

    /// Annihilation coefficients of the release polariton
    /// `X¹_c(packet) = Σ_k S_ck X⁰_k(packet)`.
    pub fn release_mode(
        &self,
        s: &TransferMatrix,
        channel: Channel,
        packet: usize,
    ) -> Vec<Complex64> {
        let row = s.row(channel);
        let mut v = vec![ZERO; self.mode_count()];
        for (k, coeff) in row.iter().enumerate() {
            for (out, x) in v.iter_mut().zip(self.storage_mode(k, packet)) {
                *out += coeff * x;
            }
        }
        v
    }

    /// All occupations with the given total, in lexicographic order.
    pub fn sector(&self, total: usize) -> Sector {
        Sector::new(self.mode_count(), total)
    }

    /// Matrix of `X = Σ v_μ a_μ` from the `total` sector to the `total - 1`
    /// sector.
    pub fn annihilation_block(&self, coeffs: &[Complex64], total: usize) -> DMatrix<Complex64> {
        let from = self.sector(total);
        let to = self.sector(total.saturating_sub(1));
        let mut out = DMatrix::zeros(to.len(), from.len());
        if total == 0 {
            return out;
        }
        for (col, occ) in from.states.iter().enumerate() {
            for (mu, &c) in coeffs.iter().enumerate() {
                if occ[mu] == 0 || c == ZERO {
                    continue;
                }
                let mut next = *occ;
                next[mu] -= 1;
                let row = to.index_of(&next).expect("sector closed under lowering");
                out[(row, col)] += c * (occ[mu] as f64).sqrt();
            }
        }
        out
    }
}

/// Fixed-total-photon sector of the logical-mode Fock space.
#[derive(Debug, Clone)]
pub struct Sector {
    total: usize,
    states: Vec<Occupation>,
    index: BTreeMap<Occupation, usize>,
}

impl Sector {
    fn new(modes: usize, total: usize) -> Self {
        let mut states = Vec::new();
        let mut occ = [0u16; MAX_MODES];
        fill(&mut states, &mut occ, 0, modes, total);
        let index = states.iter().enumerate().map(|(i, o)| (*o, i)).collect();
        Self {
            total,
            states,
            index,
        }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Occupation] {
        &self.states
    }

    pub fn index_of(&self, occ: &Occupation) -> Option<usize> {
        self.index.get(occ).copied()
    }
}

fn fill(out: &mut Vec<Occupation>, occ: &mut Occupation, mode: usize, modes: usize, left: usize) {
    if mode + 1 == modes {
        occ[mode] = left as u16;
        out.push(*occ);
        occ[mode] = 0;
        return;
    }
    for k in (0..=left).rev() {
        occ[mode] = k as u16;
        fill(out, occ, mode + 1, modes, left - k);
    }
    occ[mode] = 0;
}

/// A normalized state confined to one fixed-total sector.
#[derive(Debug, Clone)]
pub struct TruncatedState {
    basis: ModeBasis,
    sector: Sector,
    amplitudes: DVector<Complex64>,
}

impl TruncatedState {
    pub fn basis(&self) -> &ModeBasis {
        &self.basis
    }

    pub fn sector(&self) -> &Sector {
        &self.sector
    }

    pub fn total_photons(&self) -> usize {
        self.sector.total
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Amplitude on a basis occupation, zero if outside the sector.
    pub fn amplitude(&self, occ: &Occupation) -> Complex64 {
        self.sector
            .index_of(occ)
            .map_or(ZERO, |i| self.amplitudes[i])
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Applies `Σ conj(v_μ) a_μ†`, the adjoint of `Σ v_μ a_μ`, to a sector state.
fn apply_creation(
    from: &Sector,
    amps: &DVector<Complex64>,
    coeffs: &[Complex64],
    to: &Sector,
) -> DVector<Complex64> {
    let mut out = DVector::zeros(to.len());
    for (occ, &a) in from.states.iter().zip(amps.iter()) {
        if a == ZERO {
            continue;
        }
        for (mu, &c) in coeffs.iter().enumerate() {
            if c == ZERO {
                continue;
            }
            let mut next = *occ;
            next[mu] += 1;
            let row = to
                .index_of(&next)
                .expect("target sector holds every raised state");
            out[row] += a * c.conj() * ((occ[mu] + 1) as f64).sqrt();
        }
    }
    out
}

/// The stored state `(X₁⁰†(1))ⁿ (X₂⁰†(2))ᵐ |0⟩ / √(n! m!)`.
pub fn build_fock_input(n: usize, m: usize, basis: &ModeBasis) -> Result<TruncatedState> {
    let total = n + m;
    if total > basis.cutoff {
        return Err(Error::Capacity {
            what: "cutoff for n + m photons",
            required: total,
            limit: basis.cutoff,
        });
    }
    let mut sector = basis.sector(0);
    let mut amps = DVector::from_element(1, ONE);
    let chains = [(basis.storage_mode(0, 0), n), (basis.storage_mode(1, 1), m)];
    for (coeffs, count) in &chains {
        for k in 1..=*count {
            let next = basis.sector(sector.total + 1);
            amps = apply_creation(&sector, &amps, coeffs, &next)
                / Complex64::new((k as f64).sqrt(), 0.0);
            sector = next;
        }
    }
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::Consistency {
            what: "stored-state norm - 1",
            value: norm - 1.0,
        });
    }
    amps /= Complex64::new(norm, 0.0);
    Ok(TruncatedState {
        basis: basis.clone(),
        sector,
        amplitudes: amps,
    })
}

/// A quadratic number-conserving operator `Σ_μν H_μν a_μ† a_ν`.
#[derive(Debug, Clone)]
pub struct NumberOperator {
    basis: ModeBasis,
    single_particle: DMatrix<Complex64>,
}

impl NumberOperator {
    pub fn basis(&self) -> &ModeBasis {
        &self.basis
    }

    /// The one-body matrix `H`.
    pub fn single_particle(&self) -> &DMatrix<Complex64> {
        &self.single_particle
    }

    /// Restriction to the fixed-total sector.
    pub fn block(&self, total: usize) -> DMatrix<Complex64> {
        let sector = self.basis.sector(total);
        let h = &self.single_particle;
        let modes = self.basis.mode_count();
        let mut out = DMatrix::zeros(sector.len(), sector.len());
        for (col, occ) in sector.states.iter().enumerate() {
            for nu in 0..modes {
                if occ[nu] == 0 {
                    continue;
                }
                let mut lowered = *occ;
                lowered[nu] -= 1;
                let down = (occ[nu] as f64).sqrt();
                for mu in 0..modes {
                    let coeff = h[(mu, nu)];
                    if coeff == ZERO {
                        continue;
                    }
                    let mut raised = lowered;
                    raised[mu] += 1;
                    let row = sector.index_of(&raised).expect("number conserving");
                    out[(row, col)] += coeff * down * (raised[mu] as f64).sqrt();
                }
            }
        }
        out
    }

    /// `(⟨N⟩, ⟨N²⟩)` without any eigendecomposition.
    fn raw_moments(&self, state: &TruncatedState) -> (f64, f64) {
        let applied = self.block(state.total_photons()) * &state.amplitudes;
        let mean = state.amplitudes.dotc(&applied).re;
        let second = applied.iter().map(|z| z.norm_sqr()).sum();
        (mean, second)
    }
}

/// Photon-number operator of a release channel for arbitrary overlap:
///
/// ```text
/// N = 1/(1-|s|²) Σ_jk (-1)^{j+k} γ_jk X¹†(j) X¹(k)
/// ```
///
/// With `|s| = 1` this reduces to `X¹†(1) X¹(1)` and that form is used.
pub fn released_number_operator(
    s: &TransferMatrix,
    basis: &ModeBasis,
    channel: Channel,
) -> NumberOperator {
    let modes = basis.mode_count();
    let packets: Vec<Vec<Complex64>> = (0..2).map(|p| basis.release_mode(s, channel, p)).collect();
    let mut h = DMatrix::zeros(modes, modes);
    if basis.packet_modes == 1 {
        for mu in 0..modes {
            for nu in 0..modes {
                h[(mu, nu)] = packets[0][mu].conj() * packets[0][nu];
            }
        }
    } else {
        let gamma = basis.overlap.matrix();
        let prefactor = 1.0 / (1.0 - basis.overlap.modulus().powi(2));
        for (j, vj) in packets.iter().enumerate() {
            for (k, vk) in packets.iter().enumerate() {
                let sign = if (j + k) % 2 == 0 { 1.0 } else { -1.0 };
                let w = gamma[j][k] * (sign * prefactor);
                for mu in 0..modes {
                    for nu in 0..modes {
                        h[(mu, nu)] += w * vj[mu].conj() * vk[nu];
                    }
                }
            }
        }
    }
    NumberOperator {
        basis: basis.clone(),
        single_particle: h,
    }
}

/// Release distribution from the spectral projectors of `op`:
/// `P(i) = ‖Π_i ψ‖²`, `Π_i` projecting on the eigenvalue-`i` eigenspace.
pub fn oracle_distribution(
    state: &TruncatedState,
    op: &NumberOperator,
) -> Result<ReleaseDistribution> {
    if state.basis != op.basis {
        return Err(Error::BasisMismatch);
    }
    let total = state.total_photons();
    let eigen = SymmetricEigen::new(op.block(total));
    let mut probs = vec![0.0; total + 1];
    for (k, &value) in eigen.eigenvalues.iter().enumerate() {
        let rounded = value.round();
        if (value - rounded).abs() > EIGEN_ROUNDING_TOLERANCE {
            return Err(Error::NonIntegerSpectrum {
                value,
                tolerance: EIGEN_ROUNDING_TOLERANCE,
            });
        }
        if rounded < 0.0 || rounded > total as f64 {
            return Err(Error::Consistency {
                what: "number eigenvalue outside 0..=total",
                value,
            });
        }
        let weight = eigen
            .eigenvectors
            .column(k)
            .dotc(&state.amplitudes)
            .norm_sqr();
        probs[rounded as usize] += weight;
    }
    ReleaseDistribution::from_raw_with_tolerance(probs, 1e-9)
}

/// `(mean, variance)` of `op` in `state` by direct matrix expectation.
pub fn oracle_moments(state: &TruncatedState, op: &NumberOperator) -> Result<(f64, f64)> {
    if state.basis != op.basis {
        return Err(Error::BasisMismatch);
    }
    let (mean, second) = op.raw_moments(state);
    Ok((mean, second - mean * mean))
}
