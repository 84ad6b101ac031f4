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
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{cis, StateVector};
use crate::error::{Error, Result};

/// Bloch-sphere angles of a qubit plus an explicit global phase.
///
/// `theta` lies in `[0, pi]`; `phi` and `gamma` are kept in `[0, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawQubitParams")]
pub struct QubitParams {
    theta: f64,
    phi: f64,
    gamma: f64,
}

#[derive(Deserialize)]
struct RawQubitParams {
    theta: f64,
    phi: f64,
    #[serde(default)]
    gamma: f64,
}

impl TryFrom<RawQubitParams> for QubitParams {
    type Error = Error;

    fn try_from(raw: RawQubitParams) -> Result<Self> {
        QubitParams::new(raw.theta, raw.phi, raw.gamma)
    }
}

fn wrap_angle(x: f64) -> f64 {
    let w = x.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if w >= TAU {
        0.0
    } else {
        w
    }
}

impl QubitParams {
    /// Polar angle must lie in `[0, pi]` (a rounding slack of 1e-12 is clamped);
    /// azimuth and global phase are wrapped into `[0, 2pi)`.
    pub fn new(theta: f64, phi: f64, gamma: f64) -> Result<Self> {
        if !(theta.is_finite() && phi.is_finite() && gamma.is_finite()) {
            return Err(Error::arg("qubit angles must be finite"));
        }
        if !(-1e-12..=PI + 1e-12).contains(&theta) {
            return Err(Error::arg(format!("theta = {theta} outside [0, pi]")));
        }
        Ok(Self {
            theta: theta.clamp(0.0, PI),
            phi: wrap_angle(phi),
            gamma: wrap_angle(gamma),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Same Bloch point with the global phase dropped.
    pub fn without_phase(&self) -> Self {
        Self { gamma: 0.0, ..*self }
    }

    pub fn with_gamma(&self, gamma: f64) -> Self {
        Self {
            gamma: wrap_angle(gamma),
            ..*self
        }
    }
}

/// `e^{i gamma} (cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>)`.
pub fn make_qubit(p: QubitParams) -> StateVector {
    let (s, c) = (p.theta / 2.0).sin_cos();
    let g = cis(p.gamma);
    let amps = vec![g * c, g * cis(p.phi) * s];
    StateVector::new(vec![2], amps).expect("qubit amplitudes are finite and normalized")
}
