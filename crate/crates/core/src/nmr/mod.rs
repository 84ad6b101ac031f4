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
//! Pulse-level model of a two-spin NMR register. Spin A is the ancilla and
//! spin X the system; the basis is `|A X>` with `|0>` the spin-up state.

mod sequence;
pub mod tomography;

pub use sequence::{
    compile_sequence, pseudo_pure, run_sequence, run_sequence_from, sequence_unitary, Checkpoint, PulseEvent,
    PulseSequence, Spin,
};
pub use tomography::partial_tomography;

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cis, gates, DensityMatrix, Matrix, C64};

const DIMS: [usize; 2] = [2, 2];

/// Offsets and scalar coupling of the two spins, in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpinSystem")]
pub struct SpinSystem {
    omega_a: f64,
    omega_x: f64,
    j_coupling: f64,
}

#[derive(Deserialize)]
struct RawSpinSystem {
    omega_a: f64,
    omega_x: f64,
    j_coupling: f64,
}

impl TryFrom<RawSpinSystem> for SpinSystem {
    type Error = Error;

    fn try_from(raw: RawSpinSystem) -> Result<Self> {
        Self::new(raw.omega_a, raw.omega_x, raw.j_coupling)
    }
}

impl SpinSystem {
    pub fn new(omega_a: f64, omega_x: f64, j_coupling: f64) -> Result<Self> {
        if ![omega_a, omega_x, j_coupling].iter().all(|v| v.is_finite()) {
            return Err(Error::arg("spin system frequencies must be finite"));
        }
        if j_coupling == 0.0 {
            return Err(Error::arg("scalar coupling must be nonzero"));
        }
        Ok(Self {
            omega_a,
            omega_x,
            j_coupling,
        })
    }

    /// Builds the system from frequencies given in Hz.
    pub fn from_hz(nu_a: f64, nu_x: f64, j_hz: f64) -> Result<Self> {
        Self::new(TAU * nu_a, TAU * nu_x, TAU * j_hz)
    }

    pub fn omega_a(&self) -> f64 {
        self.omega_a
    }

    pub fn omega_x(&self) -> f64 {
        self.omega_x
    }

    pub fn j_coupling(&self) -> f64 {
        self.j_coupling
    }

    /// Delay whose coupling propagator is `exp(-i pi A_z X_z)` up to a global
    /// phase: `pi / J` (that is, `1/(2 J)` with J in Hz). For a negative
    /// coupling the delay is tripled, since the fourth power of that
    /// propagator is `-1`.
    pub fn coupling_delay(&self) -> f64 {
        let quarter = std::f64::consts::PI / self.j_coupling.abs();
        if self.j_coupling > 0.0 {
            quarter
        } else {
            3.0 * quarter
        }
    }

    fn energies(&self) -> [f64; 4] {
        let z = [0.5, -0.5];
        let mut e = [0.0; 4];
        for (i, slot) in e.iter_mut().enumerate() {
            let (za, zx) = (z[i >> 1], z[i & 1]);
            *slot = -self.omega_a * za - self.omega_x * zx + self.j_coupling * za * zx;
        }
        e
    }
}

impl Default for SpinSystem {
    /// On-resonance rotating frame with `J = 215 Hz`.
    fn default() -> Self {
        Self {
            omega_a: 0.0,
            omega_x: 0.0,
            j_coupling: TAU * 215.0,
        }
    }
}

/// `-omega_a A_z - omega_x X_z + J A_z X_z`, diagonal in the product basis.
pub fn hamiltonian(sys: &SpinSystem) -> Matrix {
    Matrix::from_diagonal(&nalgebra::DVector::from_iterator(
        4,
        sys.energies().iter().map(|&e| C64::new(e, 0.0)),
    ))
}

pub(crate) fn free_propagator(sys: &SpinSystem, t: f64) -> Matrix {
    Matrix::from_diagonal(&nalgebra::DVector::from_iterator(
        4,
        sys.energies().iter().map(|&e| cis(-e * t)),
    ))
}

pub(crate) fn pulse_operator(spin: Spin, flip_angle: f64, axis_phase: f64) -> Matrix {
    let r = gates::rotation_xy(flip_angle, axis_phase);
    match spin {
        Spin::A => gates::embed(&r, 0, &DIMS),
        Spin::X => gates::embed(&r, 1, &DIMS),
        Spin::Both => gates::kron(&r, &r),
    }
}

fn check_two_spin(rho: &DensityMatrix) -> Result<()> {
    if rho.dims() != DIMS {
        return Err(Error::arg(format!(
            "expected a two-spin density matrix, got dims {:?}",
            rho.dims()
        )));
    }
    Ok(())
}

/// Free evolution for `t` seconds under [`hamiltonian`].
pub fn evolve_free(rho: &DensityMatrix, sys: &SpinSystem, t: f64) -> Result<DensityMatrix> {
    check_two_spin(rho)?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::arg(format!("evolution time {t} must be non-negative")));
    }
    rho.conjugate(&free_propagator(sys, t))
}

/// Instantaneous rotation of the addressed spin(s) by `flip_angle` about the
/// in-plane axis at `axis_phase` from +x.
pub fn rf_pulse(rho: &DensityMatrix, spin: Spin, flip_angle: f64, axis_phase: f64) -> Result<DensityMatrix> {
    check_two_spin(rho)?;
    rho.conjugate(&pulse_operator(spin, flip_angle, axis_phase))
}

/// Total magnetic quantum number of a product basis state, in units of 1/2.
fn magnetization(index: usize) -> i32 {
    2 - 2 * (index.count_ones() as i32)
}

pub(crate) fn crush(m: &Matrix) -> Matrix {
    Matrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        if magnetization(i) == magnetization(j) {
            m[(i, j)]
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Dephases every coherence of nonzero order. Populations and zero-quantum
/// coherences survive.
pub fn gradient_crush(rho: &DensityMatrix) -> Result<DensityMatrix> {
    check_two_spin(rho)?;
    DensityMatrix::new(DIMS.to_vec(), crush(rho.entries()))
}
