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

use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A parameter is NaN, infinite or outside its mathematical domain.
    #[error("parameter `{name}` out of domain: {value}")]
    ParameterDomain { name: &'static str, value: f64 },

    #[error("packet profile `{which}` is not normalized: integral of |f|^2 = {norm}")]
    Normalization { which: &'static str, norm: f64 },

    #[error("packet profiles are malformed: {0}")]
    Profile(&'static str),

    #[error("matrix is not unitary: max |S†S - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    /// The closed-form release distribution only covers identical packets.
    #[error("closed form requires |s| = 1 but |s| = {modulus}; use the Fock-space oracle")]
    OverlapNotUnity { modulus: f64 },

    #[error("capacity exceeded: {what} needs {required}, limit is {limit}")]
    Capacity {
        what: &'static str,
        required: usize,
        limit: usize,
    },

    #[error("ratio undefined: {0}")]
    UndefinedRatio(&'static str),

    #[error("internal consistency failure: {what} = {value:e}")]
    Consistency { what: &'static str, value: f64 },

    #[error("eigenvalue {value} is not within {tolerance:e} of an integer")]
    NonIntegerSpectrum { value: f64, tolerance: f64 },

    #[error("state truncation tail {tail:e} above threshold; try cutoff >= {suggested_cutoff}")]
    Truncation { tail: f64, suggested_cutoff: usize },

    #[error("operator and state live in different bases")]
    BasisMismatch,

    #[error("unsupported configuration: {0}")]
    Unsupported(String),
}
