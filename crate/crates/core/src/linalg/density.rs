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
use nalgebra::SymmetricEigen;

use super::{digits, Matrix, C64, NORM_TOL, PSD_FLOOR};
use crate::error::{Error, Result};

/// Hermitian positive-semidefinite matrix with trace in `(0, 1]`.
///
/// Sub-normalized matrices are allowed; they arise as the block of a state
/// after a projective measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    entries: Matrix,
    trace: f64,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-12 entrywise), eigenvalues (>= -1e-10) and
    /// the trace range. The stored matrix is symmetrized to remove roundoff.
    pub fn new(dims: Vec<usize>, entries: Matrix) -> Result<Self> {
        let n: usize = dims.iter().product();
        if dims.contains(&0) || entries.nrows() != n || entries.ncols() != n {
            return Err(Error::arg(format!(
                "matrix of shape {}x{} does not match dims {dims:?}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Invariant("non-finite density matrix entry".into()));
        }
        for i in 0..n {
            for j in i..n {
                if (entries[(i, j)] - entries[(j, i)].conj()).norm() > NORM_TOL {
                    return Err(Error::Invariant(format!("not Hermitian at ({i}, {j})")));
                }
            }
        }
        let entries = (&entries + entries.adjoint()).unscale(2.0);
        let trace = entries.trace().re;
        if trace <= 0.0 {
            return Err(Error::DegenerateInput(format!("trace {trace:e} is not positive")));
        }
        if trace > 1.0 + NORM_TOL {
            return Err(Error::Invariant(format!("trace {trace} exceeds one")));
        }
        let min_eig = SymmetricEigen::new(entries.clone())
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eig < PSD_FLOOR {
            return Err(Error::Invariant(format!("negative eigenvalue {min_eig:e}")));
        }
        Ok(Self { dims, entries, trace })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.trace
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.entries.component_mul(&self.entries.transpose()).sum().re
    }

    /// Copy scaled to unit trace.
    pub fn normalized(&self) -> Result<Self> {
        Self::new(self.dims.clone(), self.entries.unscale(self.trace))
    }

    /// `U rho U^dagger`.
    pub fn conjugate(&self, u: &Matrix) -> Result<Self> {
        if u.nrows() != self.entries.nrows() || u.ncols() != self.entries.ncols() {
            return Err(Error::arg("operator shape does not match density matrix"));
        }
        Self::new(self.dims.clone(), u * &self.entries * u.adjoint())
    }

    /// Reduced density matrix over the subsystems listed in `keep`.
    ///
    /// Kept subsystems appear in their original order. Tracing out everything
    /// yields a 1x1 matrix holding the trace.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&k| k >= self.dims.len()) {
            return Err(Error::arg(format!("subsystem {bad} out of range for {:?}", self.dims)));
        }
        let traced: Vec<usize> = (0..self.dims.len()).filter(|k| !keep.contains(k)).collect();
        let out_dims: Vec<usize> = keep.iter().map(|&k| self.dims[k]).collect();
        let out_n: usize = out_dims.iter().product();
        let n = self.entries.nrows();

        let split: Vec<(usize, usize)> = (0..n)
            .map(|i| {
                let dg = digits(i, &self.dims);
                let kept = keep.iter().fold(0, |acc, &k| acc * self.dims[k] + dg[k]);
                let rest = traced.iter().fold(0, |acc, &k| acc * self.dims[k] + dg[k]);
                (kept, rest)
            })
            .collect();

        let mut out = Matrix::zeros(out_n, out_n);
        for (i, &(ki, ri)) in split.iter().enumerate() {
            for (j, &(kj, rj)) in split.iter().enumerate() {
                if ri == rj {
                    out[(ki, kj)] += self.entries[(i, j)];
                }
            }
        }
        Self::new(out_dims, out)
    }
}

/// Normalized overlap fidelity `Tr(rho_e rho_t) / sqrt(Tr(rho_e^2) Tr(rho_t^2))`.
pub fn fidelity(rho_e: &DensityMatrix, rho_t: &DensityMatrix) -> Result<f64> {
    if rho_e.dims != rho_t.dims {
        return Err(Error::arg(format!(
            "fidelity between dims {:?} and {:?}",
            rho_e.dims, rho_t.dims
        )));
    }
    let cross: C64 = rho_e.entries.component_mul(&rho_t.entries.transpose()).sum();
    let denom = (rho_e.purity() * rho_t.purity()).sqrt();
    if denom <= 0.0 {
        return Err(Error::DegenerateInput("zero-purity input to fidelity".into()));
    }
    // Cauchy-Schwarz bounds the exact value by 1; clamp the rounding excess
    Ok((cross.re / denom).clamp(0.0, 1.0))
}
