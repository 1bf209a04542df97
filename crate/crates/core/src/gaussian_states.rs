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

//! Quadrature statistics of the first release channel when both stored
//! pulses are squeezed-coherent states of identical packets (`s = 1`).
//!
//! Each stored pulse is the eigenstate of `A_j = cosh r_j X_j + sinh r_j X_j†`
//! with eigenvalue `α_j`. Quadratures are `q = (X + X†)/√2` and
//! `p = -i(X - X†)/√2`; the vacuum variance is 1/2.

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::mode_transform::{finite, Channel, TransferMatrix};
use crate::Result;

/// Displacements and real squeezing parameters of the two stored pulses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedInput {
    pub alpha1: Complex64,
    pub r1: f64,
    pub alpha2: Complex64,
    pub r2: f64,
}

impl SqueezedInput {
    pub fn new(alpha1: Complex64, r1: f64, alpha2: Complex64, r2: f64) -> Result<Self> {
        finite("alpha1 (re)", alpha1.re)?;
        finite("alpha1 (im)", alpha1.im)?;
        finite("alpha2 (re)", alpha2.re)?;
        finite("alpha2 (im)", alpha2.im)?;
        finite("r1", r1)?;
        finite("r2", r2)?;
        Ok(Self {
            alpha1,
            r1,
            alpha2,
            r2,
        })
    }

    /// Squeezed vacua in both channels.
    pub fn vacua(r1: f64, r2: f64) -> Result<Self> {
        let zero = Complex64::new(0.0, 0.0);
        Self::new(zero, r1, zero, r2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureStats {
    pub mean_q: f64,
    pub mean_p: f64,
    pub var_q: f64,
    pub var_p: f64,
}

impl QuadratureStats {
    pub fn product(&self) -> f64 {
        self.var_q * self.var_p
    }
}

/// `(⟨x⟩, ⟨x²⟩)` for `x = (u₁A₁ + u₂A₂ + h.c.)/√2` in the joint
/// `A`-eigenstate.
fn eigenstate_moments(u1: Complex64, u2: Complex64, a1: Complex64, a2: Complex64) -> (f64, f64) {
    let mean = core::f64::consts::SQRT_2 * (u1 * a1 + u2 * a2).re;
    let incoherent = 0.5
        * (u1.norm_sqr() * (1.0 + 2.0 * a1.norm_sqr())
            + u2.norm_sqr() * (1.0 + 2.0 * a2.norm_sqr()));
    let coherent = u1 * u1 * a1 * a1
        + u2 * u2 * a2 * a2
        + u1 * u2 * a1 * a2 * 2.0
        + u1 * u2.conj() * a1 * a2.conj() * 2.0;
    (mean, incoherent + coherent.re)
}

/// Means and variances of `q` and `p` in the first release channel.
///
/// With `u_j = S₁ⱼ cosh r_j - S₁ⱼ* sinh r_j`, `q = (u₁A₁ + u₂A₂ + h.c.)/√2`;
/// `p` follows from `S₁ⱼ → -iS₁ⱼ`. Variances are `⟨x²⟩ - ⟨x⟩²`.
pub fn released_quadratures(input: &SqueezedInput, s: &TransferMatrix) -> QuadratureStats {
    let (c1, s1) = (input.r1.cosh(), input.r1.sinh());
    let (c2, s2) = (input.r2.cosh(), input.r2.sinh());
    let u = |x: Complex64, c: f64, sh: f64| x * c - x.conj() * sh;
    let minus_i = Complex64::new(0.0, -1.0);

    let (mean_q, second_q) = eigenstate_moments(
        u(s.s11(), c1, s1),
        u(s.s12(), c2, s2),
        input.alpha1,
        input.alpha2,
    );
    let (mean_p, second_p) = eigenstate_moments(
        u(minus_i * s.s11(), c1, s1),
        u(minus_i * s.s12(), c2, s2),
        input.alpha1,
        input.alpha2,
    );
    QuadratureStats {
        mean_q,
        mean_p,
        var_q: second_q - mean_q * mean_q,
        var_p: second_p - mean_p * mean_p,
    }
}

pub fn uncertainty_product(stats: &QuadratureStats) -> f64 {
    stats.product()
}

/// One Gaussian input mode: displacement `alpha` and complex squeezing
/// `ξ = r e^{iθ}` acting as `a → a cosh r - a† e^{iθ} sinh r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianMode {
    pub alpha: Complex64,
    pub squeeze: Complex64,
}

/// Two-mode Gaussian state in quadrature ordering `(q₁, p₁, q₂, p₂)` with
/// symmetrized covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeGaussian {
    pub mean: Vector4<f64>,
    pub covariance: Matrix4<f64>,
}

impl TwoModeGaussian {
    /// Product state of two squeezed-coherent modes.
    pub fn from_modes(modes: [GaussianMode; 2]) -> Self {
        let mut mean = Vector4::zeros();
        let mut covariance = Matrix4::zeros();
        for (j, mode) in modes.iter().enumerate() {
            let r = mode.squeeze.norm();
            let theta = mode.squeeze.arg();
            let (ch, sh) = (r.cosh(), r.sinh());
            let a = mode.alpha * ch - mode.alpha.conj() * Complex64::cis(theta) * sh;
            mean[2 * j] = core::f64::consts::SQRT_2 * a.re;
            mean[2 * j + 1] = core::f64::consts::SQRT_2 * a.im;

            // variance e^{-2r}/2 along (cos θ/2, sin θ/2), e^{2r}/2 across it
            let (sn, cs) = (0.5 * theta).sin_cos();
            let rot = Matrix2::new(cs, -sn, sn, cs);
            let diag = Matrix2::new((-2.0 * r).exp() / 2.0, 0.0, 0.0, (2.0 * r).exp() / 2.0);
            let block = rot * diag * rot.transpose();
            covariance
                .fixed_view_mut::<2, 2>(2 * j, 2 * j)
                .copy_from(&block);
        }
        Self { mean, covariance }
    }

    pub fn from_input(input: &SqueezedInput) -> Self {
        Self::from_modes([
            GaussianMode {
                alpha: input.alpha1,
                squeeze: Complex64::new(input.r1, 0.0),
            },
            GaussianMode {
                alpha: input.alpha2,
                squeeze: Complex64::new(input.r2, 0.0),
            },
        ])
    }

    /// Image under the passive mode transformation `a_out = S a_in`.
    pub fn transformed(&self, s: &TransferMatrix) -> Self {
        let o = passive_symplectic(s);
        Self {
            mean: o * self.mean,
            covariance: o * self.covariance * o.transpose(),
        }
    }

    pub fn channel_stats(&self, channel: Channel) -> QuadratureStats {
        let k = 2 * channel.index();
        QuadratureStats {
            mean_q: self.mean[k],
            mean_p: self.mean[k + 1],
            var_q: self.covariance[(k, k)],
            var_p: self.covariance[(k + 1, k + 1)],
        }
    }

    /// Symplectic eigenvalues `(ν₋, ν₊)`; both are 1/2 for a pure state.
    pub fn symplectic_eigenvalues(&self) -> (f64, f64) {
        let sigma = &self.covariance;
        let a = sigma.fixed_view::<2, 2>(0, 0).determinant();
        let b = sigma.fixed_view::<2, 2>(2, 2).determinant();
        let c = sigma.fixed_view::<2, 2>(0, 2).determinant();
        let delta = a + b + 2.0 * c;
        let det = sigma.determinant();
        let disc = (delta * delta - 4.0 * det).max(0.0).sqrt();
        (
            ((delta - disc) / 2.0).max(0.0).sqrt(),
            ((delta + disc) / 2.0).sqrt(),
        )
    }
}

/// Real orthogonal-symplectic image of a 2×2 unitary on `(q₁, p₁, q₂, p₂)`.
fn passive_symplectic(s: &TransferMatrix) -> Matrix4<f64> {
    let mut o = Matrix4::zeros();
    for j in 0..2 {
        for k in 0..2 {
            let z = s.get(j, k);
            o[(2 * j, 2 * k)] = z.re;
            o[(2 * j, 2 * k + 1)] = -z.im;
            o[(2 * j + 1, 2 * k)] = z.im;
            o[(2 * j + 1, 2 * k + 1)] = z.re;
        }
    }
    o
}

/// First-channel quadrature statistics through the covariance-matrix route,
/// independent of [`released_quadratures`].
pub fn gaussian_oracle(input: &SqueezedInput, s: &TransferMatrix) -> QuadratureStats {
    TwoModeGaussian::from_input(input)
        .transformed(s)
        .channel_stats(Channel::First)
}
