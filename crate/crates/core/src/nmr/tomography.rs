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
//! Readout of the two-spin register from single-quantum line amplitudes.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, DVector};

use super::{crush, pulse_operator, Spin, DIMS};
use crate::error::{Error, Result};
use crate::linalg::{gates, DensityMatrix, Matrix, C64, NORM_TOL};
use crate::nmr::PulseEvent;

/// Extracts the block over `{|00>, |01>}` (ancilla in `|0>`).
///
/// Returns the block scaled to unit trace and the block trace, which is the
/// probability of the ancilla outcome `|0>`.
pub fn partial_tomography(rho: &DensityMatrix) -> Result<(DensityMatrix, f64)> {
    if rho.dims() != DIMS {
        return Err(Error::arg(format!(
            "expected a two-spin density matrix, got dims {:?}",
            rho.dims()
        )));
    }
    let block = rho.entries().view((0, 0), (2, 2)).into_owned();
    let norm = block.trace().re;
    if norm < NORM_TOL {
        return Err(Error::DegenerateInput(format!("ancilla |0> block has trace {norm:e}")));
    }
    Ok((DensityMatrix::new(vec![2], block.unscale(norm))?, norm))
}

/// Complex amplitudes of the four single-quantum transitions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSignals {
    /// Spin-A lines `|00>-|10>` and `|01>-|11>`.
    pub a: [C64; 2],
    /// Spin-X lines `|00>-|01>` and `|10>-|11>`.
    pub x: [C64; 2],
}

impl LineSignals {
    fn of(m: &Matrix) -> Self {
        Self {
            a: [m[(0, 2)], m[(1, 3)]],
            x: [m[(0, 1)], m[(2, 3)]],
        }
    }

    fn components(&self) -> [f64; 8] {
        let [a0, a1] = self.a;
        let [x0, x1] = self.x;
        [a0.re, a0.im, a1.re, a1.im, x0.re, x0.im, x1.re, x1.im]
    }
}

fn apply_readout(m: &Matrix, readout: &[PulseEvent]) -> Result<Matrix> {
    readout.iter().try_fold(m.clone(), |acc, e| match *e {
        PulseEvent::Rf {
            spin,
            flip_angle,
            axis_phase,
        } => {
            let u = pulse_operator(spin, flip_angle, axis_phase);
            Ok(&u * acc * u.adjoint())
        }
        PulseEvent::Gradient => Ok(crush(&acc)),
        PulseEvent::Delay { .. } => Err(Error::arg("readout experiments contain only pulses and gradients")),
    })
}

/// Line amplitudes observed after the given readout events.
pub fn measure(rho: &DensityMatrix, readout: &[PulseEvent]) -> Result<LineSignals> {
    if rho.dims() != DIMS {
        return Err(Error::arg(format!(
            "expected a two-spin density matrix, got dims {:?}",
            rho.dims()
        )));
    }
    Ok(LineSignals::of(&apply_readout(rho.entries(), readout)?))
}

fn hard(spin: Spin, axis_phase: f64) -> PulseEvent {
    PulseEvent::Rf {
        spin,
        flip_angle: FRAC_PI_2,
        axis_phase,
    }
}

/// The four experiments `II`, `IX`, `IY` and `XX`: no pulse, a 90 degree
/// pulse on X about x or y, and 90 degree pulses on both spins about x.
pub fn full_readouts() -> Vec<Vec<PulseEvent>> {
    vec![
        vec![],
        vec![hard(Spin::X, 0.0)],
        vec![hard(Spin::X, FRAC_PI_2)],
        vec![hard(Spin::Both, 0.0)],
    ]
}

fn pauli_basis() -> Vec<Matrix> {
    let single = [gates::identity(2), gates::pauli_x(), gates::pauli_y(), gates::pauli_z()];
    let mut out = Vec::with_capacity(15);
    for (i, p) in single.iter().enumerate() {
        for (j, q) in single.iter().enumerate() {
            if i + j > 0 {
                out.push(gates::kron(p, q));
            }
        }
    }
    out
}

/// Least-squares reconstruction of a unit-trace state from line amplitudes
/// recorded after each readout.
pub fn reconstruct(observations: &[(Vec<PulseEvent>, LineSignals)]) -> Result<DensityMatrix> {
    let basis = pauli_basis();
    let rows = 8 * observations.len();
    let mut design = DMatrix::<f64>::zeros(rows, basis.len());
    let mut rhs = DVector::<f64>::zeros(rows);
    let offset = Matrix::identity(4, 4).unscale(4.0);
    for (k, (readout, signals)) in observations.iter().enumerate() {
        let known = LineSignals::of(&apply_readout(&offset, readout)?).components();
        let seen = signals.components();
        for r in 0..8 {
            rhs[8 * k + r] = seen[r] - known[r];
        }
        for (col, p) in basis.iter().enumerate() {
            let response = LineSignals::of(&apply_readout(&p.unscale(4.0), readout)?).components();
            for r in 0..8 {
                design[(8 * k + r, col)] = response[r];
            }
        }
    }
    let svd = design.svd(true, true);
    let rank = svd.singular_values.iter().filter(|&&s| s > 1e-9).count();
    if rank < basis.len() {
        return Err(Error::DegenerateInput(format!(
            "readouts determine only {rank} of {} state parameters",
            basis.len()
        )));
    }
    let coeffs = svd.solve(&rhs, 1e-12).map_err(|e| Error::Invariant(e.to_string()))?;
    let rho = basis
        .iter()
        .zip(coeffs.iter())
        .fold(offset, |acc, (p, &x)| acc + p.scale(x / 4.0));
    DensityMatrix::new(DIMS.to_vec(), rho)
}

/// Simulates the four full-tomography experiments on `rho` and reconstructs it.
pub fn full_tomography(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let observations = full_readouts()
        .into_iter()
        .map(|r| measure(rho, &r).map(|s| (r, s)))
        .collect::<Result<Vec<_>>>()?;
    reconstruct(&observations)
}

/// Recovers the ancilla-`|0>` block from three experiments: a direct readout
/// of the `|00>-|01>` coherence, a gradient plus a 90 degree y pulse on X
/// for the population difference, and a gradient plus a 90 degree y pulse on
/// A for the block normalization. Assumes unit total trace.
pub fn subspace_readout(rho: &DensityMatrix) -> Result<(DensityMatrix, f64)> {
    let coherence = measure(rho, &[])?.x[0];
    let difference = measure(rho, &[PulseEvent::Gradient, hard(Spin::X, FRAC_PI_2)])?.x[0].re;
    let a_lines = measure(rho, &[PulseEvent::Gradient, hard(Spin::A, FRAC_PI_2)])?.a;
    let norm = 0.5 + a_lines[0].re + a_lines[1].re;
    if norm < NORM_TOL {
        return Err(Error::DegenerateInput(format!("ancilla |0> block has trace {norm:e}")));
    }
    let block = Matrix::from_row_slice(
        2,
        2,
        &[
            C64::new(norm / 2.0 + difference, 0.0),
            coherence,
            coherence.conj(),
            C64::new(norm / 2.0 - difference, 0.0),
        ],
    );
    Ok((DensityMatrix::new(vec![2], block.unscale(norm))?, norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::StateVector;
    use approx::assert_abs_diff_eq;

    fn state(amps: [(f64, f64); 4]) -> DensityMatrix {
        StateVector::new(vec![2, 2], amps.iter().map(|&(a, b)| C64::new(a, b)).collect())
            .unwrap()
            .normalize()
            .unwrap()
            .to_density()
            .unwrap()
    }

    fn samples() -> Vec<DensityMatrix> {
        let mixed = DensityMatrix::new(
            vec![2, 2],
            (state([(0.3, 0.1), (0.5, -0.2), (0.1, 0.7), (-0.2, 0.2)]).entries()
                + state([(0.9, 0.0), (0.0, 0.2), (0.3, -0.3), (0.1, 0.0)]).entries())
            .unscale(2.0),
        )
        .unwrap();
        vec![
            state([(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]),
            state([(0.5, 0.0), (0.5, 0.0), (0.0, 0.5), (0.0, -0.5)]),
            state([(0.1, 0.2), (0.3, -0.4), (-0.5, 0.6), (0.7, 0.8)]),
            mixed,
        ]
    }

    #[test]
    fn ground_state_block() {
        let (q, n) = partial_tomography(&samples()[0]).unwrap();
        assert_abs_diff_eq!(n, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.entries()[(0, 0)].re, 1.0, epsilon = 1e-15);
        let excited = state([(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        assert_eq!(partial_tomography(&excited).unwrap_err().kind(), "degenerate_input");
    }

    #[test]
    fn four_experiments_reconstruct_the_state() {
        for rho in samples() {
            let back = full_tomography(&rho).unwrap();
            assert!((back.entries() - rho.entries()).norm() < 1e-9);
        }
    }

    #[test]
    fn direct_readout_alone_is_insufficient() {
        let rho = &samples()[2];
        let obs = vec![(vec![], measure(rho, &[]).unwrap())];
        assert_eq!(reconstruct(&obs).unwrap_err().kind(), "degenerate_input");
    }

    #[test]
    fn subspace_readout_matches_block() {
        for rho in samples() {
            let (q1, n1) = partial_tomography(&rho).unwrap();
            let (q2, n2) = subspace_readout(&rho).unwrap();
            assert_abs_diff_eq!(n1, n2, epsilon = 1e-12);
            assert!((q1.entries() - q2.entries()).norm() < 1e-12);
        }
    }
}
