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
use nalgebra::DVector;

use super::{digits, flat_index, strides, DensityMatrix, Matrix, C64, EPS_OVERLAP, NORM_TOL};
use crate::error::{Error, Result};

/// Pure state (or unnormalized branch) on a composite Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dims: Vec<usize>,
    amps: DVector<C64>,
    normalized: bool,
}

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.contains(&0) {
        return Err(Error::arg(format!("subsystem dimensions must be positive: {dims:?}")));
    }
    Ok(dims.iter().product())
}

impl StateVector {
    /// Builds a state from raw amplitudes. The `normalized` flag is set when
    /// the squared norm is within [`NORM_TOL`] of one.
    pub fn new(dims: Vec<usize>, amps: Vec<C64>) -> Result<Self> {
        let len = check_dims(&dims)?;
        if amps.len() != len {
            return Err(Error::arg(format!(
                "{} amplitudes do not match dims {dims:?} (expected {len})",
                amps.len()
            )));
        }
        if amps.iter().any(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::Invariant("non-finite amplitude".into()));
        }
        Ok(Self::from_parts(dims, DVector::from_vec(amps)))
    }

    pub(crate) fn from_parts(dims: Vec<usize>, amps: DVector<C64>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), amps.len());
        let normalized = (amps.norm_squared() - 1.0).abs() <= NORM_TOL;
        Self { dims, amps, normalized }
    }

    /// Computational basis vector `|index>` over `dims`.
    pub fn basis(dims: Vec<usize>, index: usize) -> Result<Self> {
        let len = check_dims(&dims)?;
        if index >= len {
            return Err(Error::arg(format!("basis index {index} out of range for {dims:?}")));
        }
        let mut amps = DVector::zeros(len);
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self::from_parts(dims, amps))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amps(&self) -> &DVector<C64> {
        &self.amps
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.norm_squared()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        self.same_dims(other)?;
        Ok(self.amps.dotc(&other.amps))
    }

    fn same_dims(&self, other: &StateVector) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::arg(format!(
                "dimension mismatch: {:?} vs {:?}",
                self.dims, other.dims
            )));
        }
        Ok(())
    }

    /// Unit-norm copy. Fails when the norm is below 1e-12.
    pub fn normalize(&self) -> Result<StateVector> {
        let n = self.amps.norm();
        if n < NORM_TOL {
            return Err(Error::DegenerateInput(format!("cannot normalize state of norm {n:e}")));
        }
        Ok(Self::from_parts(self.dims.clone(), self.amps.unscale(n)))
    }

    pub fn scale(&self, factor: C64) -> StateVector {
        Self::from_parts(self.dims.clone(), self.amps.map(|a| a * factor))
    }

    /// Componentwise sum of two states on the same space.
    pub fn add(&self, other: &StateVector) -> Result<StateVector> {
        self.same_dims(other)?;
        Ok(Self::from_parts(self.dims.clone(), &self.amps + &other.amps))
    }

    /// Applies an operator on the full space.
    pub fn apply(&self, op: &Matrix) -> Result<StateVector> {
        if op.nrows() != self.len() || op.ncols() != self.len() {
            return Err(Error::arg(format!(
                "operator of shape {}x{} does not act on dims {:?}",
                op.nrows(),
                op.ncols(),
                self.dims
            )));
        }
        Ok(Self::from_parts(self.dims.clone(), op * &self.amps))
    }

    fn check_subsystem(&self, sub: usize) -> Result<usize> {
        self.dims
            .get(sub)
            .copied()
            .ok_or_else(|| Error::arg(format!("subsystem {sub} out of range for {:?}", self.dims)))
    }

    /// Applies `op` to subsystem `sub` and the identity elsewhere.
    pub fn apply_local(&self, sub: usize, op: &Matrix) -> Result<StateVector> {
        let d = self.check_subsystem(sub)?;
        if op.nrows() != d || op.ncols() != d {
            return Err(Error::arg(format!(
                "local operator of shape {}x{} does not act on subsystem of dimension {d}",
                op.nrows(),
                op.ncols()
            )));
        }
        let stride = strides(&self.dims)[sub];
        let block = d * stride;
        let mut out = DVector::zeros(self.len());
        let mut col = vec![C64::new(0.0, 0.0); d];
        for base in (0..self.len()).step_by(block) {
            for offset in 0..stride {
                for (k, slot) in col.iter_mut().enumerate() {
                    *slot = self.amps[base + offset + k * stride];
                }
                for j in 0..d {
                    let mut acc = C64::new(0.0, 0.0);
                    for (k, &v) in col.iter().enumerate() {
                        acc += op[(j, k)] * v;
                    }
                    out[base + offset + j * stride] = acc;
                }
            }
        }
        Ok(Self::from_parts(self.dims.clone(), out))
    }

    /// Contracts subsystem `sub` with `<bra|` and removes it from the
    /// factorization: `(<bra|_sub (x) I)|self>`. The result is unnormalized.
    pub fn contract(&self, sub: usize, bra: &StateVector) -> Result<StateVector> {
        let d = self.check_subsystem(sub)?;
        if bra.dims != [d] {
            return Err(Error::arg(format!(
                "bra dims {:?} do not match subsystem {sub} of dimension {d}",
                bra.dims
            )));
        }
        let mut out_dims = self.dims.clone();
        out_dims.remove(sub);
        let stride = strides(&self.dims)[sub];
        let block = d * stride;
        let mut out = Vec::with_capacity(self.len() / d);
        for base in (0..self.len()).step_by(block) {
            for offset in 0..stride {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..d {
                    acc += bra.amps[k].conj() * self.amps[base + offset + k * stride];
                }
                out.push(acc);
            }
        }
        Ok(Self::from_parts(out_dims, DVector::from_vec(out)))
    }

    /// Applies the rank-one projector `|v><v|` on subsystem `sub`, keeping dims.
    pub fn project_local(&self, sub: usize, v: &StateVector) -> Result<StateVector> {
        let d = self.check_subsystem(sub)?;
        if v.dims != [d] {
            return Err(Error::arg(format!("projector dims {:?} do not match {d}", v.dims)));
        }
        let proj = &v.amps * v.amps.adjoint();
        self.apply_local(sub, &proj)
    }

    /// Reorders amplitudes by a map on digit tuples. `map` must be a bijection
    /// of the product basis onto itself.
    pub fn permute_basis<F>(&self, map: F) -> StateVector
    where
        F: Fn(&[usize]) -> Vec<usize>,
    {
        let mut out = DVector::zeros(self.len());
        for i in 0..self.len() {
            let target = flat_index(&map(&digits(i, &self.dims)), &self.dims);
            out[target] = self.amps[i];
        }
        Self::from_parts(self.dims.clone(), out)
    }

    /// `|self><self|` as a density matrix (trace equals the squared norm).
    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.dims.clone(), &self.amps * self.amps.adjoint())
    }
}

/// Kronecker product; dims concatenate.
pub fn tensor(u: &StateVector, v: &StateVector) -> StateVector {
    let mut dims = u.dims.clone();
    dims.extend_from_slice(&v.dims);
    let amps = u.amps.kronecker(&v.amps);
    let mut out = StateVector::from_parts(dims, amps);
    // exact product of two unit vectors can miss NORM_TOL only through rounding
    out.normalized = u.normalized && v.normalized;
    out
}

/// Squared overlap magnitude and unit phase of `<chi|psi>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapInfo {
    pub c: f64,
    pub kappa: C64,
}

/// Decomposes `<chi|psi>` into `c = |<chi|psi>|^2` and `kappa = <chi|psi>/|<chi|psi>|`.
pub fn overlap_decompose(psi: &StateVector, chi: &StateVector) -> Result<OverlapInfo> {
    if !(psi.is_normalized() && chi.is_normalized()) {
        return Err(Error::arg("overlap_decompose requires normalized states"));
    }
    let ov = chi.inner(psi)?;
    let mag = ov.norm();
    if mag < EPS_OVERLAP {
        return Err(Error::ZeroOverlap {
            what: "input state".into(),
            magnitude: mag,
        });
    }
    Ok(OverlapInfo {
        c: mag * mag,
        kappa: ov / mag,
    })
}

/// True when `u` and `v` agree up to a global phase: `|<u|v>| >= 1 - tol`
/// after normalizing both.
pub fn phase_equivalent(u: &StateVector, v: &StateVector, tol: f64) -> bool {
    let Ok(ov) = u.inner(v) else {
        return false;
    };
    let n = (u.norm_sq() * v.norm_sq()).sqrt();
    if n == 0.0 {
        return false;
    }
    ov.norm() / n >= 1.0 - tol
}
