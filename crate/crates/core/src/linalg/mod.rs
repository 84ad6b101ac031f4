// Copyright 2026 The superpose Authors
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
//! Dense complex linear algebra for small composite Hilbert spaces.
//!
//! Subsystems are ordered ancilla first, system qudit second, auxiliary
//! qudits after that. Basis ordering is big-endian over `dims`: for dims
//! `[n, d]` the product basis vector `|j>|k>` sits at flat index `j * d + k`.

mod density;
pub mod gates;
mod json;
mod qubit;
mod state;

pub use density::{fidelity, DensityMatrix};
pub use qubit::{make_qubit, QubitParams};
pub use state::{overlap_decompose, phase_equivalent, tensor, OverlapInfo, StateVector};

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Complex amplitude.
pub type C64 = Complex64;

/// Dense complex square matrix (operators, unitaries, density matrices).
pub type Matrix = DMatrix<C64>;

/// Overlaps with magnitude below this are treated as zero.
pub const EPS_OVERLAP: f64 = 1e-9;

/// Absolute tolerance for normalization and Hermiticity checks.
pub const NORM_TOL: f64 = 1e-12;

/// Smallest eigenvalue accepted for a positive-semidefinite matrix.
pub const PSD_FLOOR: f64 = -1e-10;

/// Shorthand for a real-valued complex number.
#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `e^{i theta}`.
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// Row-major strides for a big-endian product basis.
pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Splits a flat index into per-subsystem digits.
pub fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
    out
}

/// Inverse of [`digits`].
pub fn flat_index(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&dgt, &dim)| acc * dim + dgt)
}
