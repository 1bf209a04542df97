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

//! Statistics of two light pulses stored in, mixed by, and released from a
//! tripod atomic medium acting as a beam splitter in the time domain.
//!
//! The crate is `no_std` (it needs `alloc`). It is organised as
//!
//! * [`mode_transform`]: the 2×2 transfer matrix between storage and release
//!   polaritons, and the packet-overlap Gram matrix;
//! * [`fock_interference`]: closed-form counting statistics for stored Fock
//!   states;
//! * [`fock_oracle`]: a brute-force truncated Fock-space engine used to check
//!   the closed forms at arbitrary packet overlap;
//! * [`gaussian_states`]: quadrature statistics for stored squeezed-coherent
//!   states, with a covariance-matrix cross-check;
//! * [`homodyne`]: variance of the photon-number difference between the two
//!   release channels, with a Fock-space cross-check.
//!
//! Quadratures follow `q = (X + X†)/√2`, `p = -i(X - X†)/√2`, so the vacuum
//! variance is 1/2.

#![no_std]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

mod dd;
mod error;
pub mod fock_interference;
pub mod fock_oracle;
pub mod fock_states;
pub mod gaussian_states;
pub mod homodyne;
pub mod mode_transform;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use fock_interference::{
    fano_factor, mean_release_count, release_distribution_s1, release_variance, FockInput,
    ReleaseDistribution,
};
pub use fock_oracle::{
    build_fock_input, oracle_distribution, oracle_moments, released_number_operator, ModeBasis,
    NumberOperator, TruncatedState,
};
pub use gaussian_states::{
    gaussian_oracle, released_quadratures, uncertainty_product, GaussianMode, QuadratureStats,
    SqueezedInput,
};
pub use homodyne::{
    balanced_variance, general_variance, homodyne_oracle, HomodyneConfig, ProbeTreatment,
};
pub use mode_transform::{
    build_transfer_matrix, gram_from_packets, magnetic_phase_matrix, Channel, GramMatrix,
    StageAngles, TransferMatrix,
};
