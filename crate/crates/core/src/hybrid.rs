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
//! Superposition of `n` qudit states with a qunit ancilla. The reference
//! encoding is followed by a Fourier transform on the ancilla; outcome `|0>`
//! of the ancilla carries the desired superposition.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{cis, Matrix, StateVector};
use crate::reference::{encode_with_reference, ReferenceSpec};

/// `F[j][k] = f^{jk} / sqrt(n)` with `f = e^{2 pi i / n}`.
pub fn fourier(n: usize) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::arg("Fourier matrix needs n >= 1"));
    }
    let scale = 1.0 / (n as f64).sqrt();
    Ok(Matrix::from_fn(n, n, |j, k| {
        // reduce the exponent first so large n keeps full phase accuracy
        cis(TAU * ((j * k) % n) as f64 / n as f64) * scale
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HybridResult {
    /// Normalized encoded ancilla-system state, dims `[n, d]`.
    pub encoded_state: StateVector,
    /// Unnormalized system state for each ancilla outcome after the Fourier
    /// transform, taken from the normalized encoded state.
    pub branches: Vec<StateVector>,
    /// Probability of the reference projection, `1/N^2`.
    pub reference_prob: f64,
    /// Joint probability of the reference projection and ancilla outcome 0.
    pub success_prob: f64,
    pub final_state: StateVector,
    pub target_state: StateVector,
    pub fidelity_to_target: f64,
}

pub fn run_hybrid(spec: &ReferenceSpec) -> Result<HybridResult> {
    let (n, d) = (spec.n(), spec.d());
    if n < 2 || d < 2 {
        return Err(Error::arg(format!(
            "hybrid protocol needs n >= 2 and d >= 2 (got n = {n}, d = {d})"
        )));
    }
    let encoded = encode_with_reference(spec)?;
    let reference_prob = encoded.norm_sq();
    let encoded_state = encoded.normalize()?;
    let transformed = encoded_state.apply_local(0, &fourier(n)?)?;
    let branches = (0..n)
        .map(|j| transformed.contract(0, &StateVector::basis(vec![n], j)?))
        .collect::<Result<Vec<_>>>()?;
    let success_prob = reference_prob * branches[0].norm_sq();
    let final_state = branches[0].normalize()?;
    let target_state = spec.target_unnormalized().normalize()?;
    let fidelity_to_target = crate::linalg::fidelity(&final_state.to_density()?, &target_state.to_density()?)?;
    Ok(HybridResult {
        encoded_state,
        branches,
        reference_prob,
        success_prob,
        final_state,
        target_state,
        fidelity_to_target,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    use super::*;
    use crate::linalg::{gates, make_qubit, phase_equivalent, re, QubitParams, C64};
    use crate::reference::run_two_qubit_reduced;
    use approx::assert_abs_diff_eq;

    #[test]
    fn small_fourier_matrices() {
        assert_eq!(fourier(1).unwrap(), Matrix::from_element(1, 1, re(1.0)));
        assert!((fourier(2).unwrap() - gates::hadamard()).norm() < 1e-15);
        let f3 = fourier(3).unwrap();
        assert!(gates::unitarity_defect_max(&f3) < 1e-12);
        let expect = cis(2.0 * PI / 3.0) / 3f64.sqrt();
        assert!((f3[(1, 1)] - expect).norm() < 1e-15);
        assert!(fourier(0).is_err());
    }

    #[test]
    fn two_states_match_reduced_protocol() {
        let q = |t: f64, p: f64, g: f64| make_qubit(QubitParams::new(t, p, g).unwrap());
        let (p1, p2, chi) = (q(1.0, 0.3, 0.5), q(2.0, 4.0, 1.0), q(0.7, 1.2, 0.0));
        let (a, b) = (C64::new(0.6, 0.0), C64::new(0.0, 0.8));
        let spec = ReferenceSpec::new(vec![a, b], vec![p1.clone(), p2.clone()], chi.clone()).unwrap();
        let h = run_hybrid(&spec).unwrap();
        let r = run_two_qubit_reduced(a, b, &p1, &p2, &chi).unwrap();
        assert!((h.final_state.amps() - r.final_state.amps()).norm() < 1e-12);
        assert_abs_diff_eq!(h.success_prob, r.success_prob, epsilon = 1e-12);
    }

    #[test]
    fn identical_inputs_succeed_with_certainty() {
        let zero = StateVector::basis(vec![2], 0).unwrap();
        let w = re(1.0 / 3f64.sqrt());
        let spec = ReferenceSpec::new(vec![w; 3], vec![zero.clone(); 3], zero.clone()).unwrap();
        let h = run_hybrid(&spec).unwrap();
        assert_abs_diff_eq!(h.success_prob, 1.0, epsilon = 1e-12);
        assert!(phase_equivalent(&h.final_state, &zero, 1e-12));
        for b in &h.branches[1..] {
            assert!(b.norm_sq() < 1e-24);
        }
    }

    #[test]
    fn orthogonal_qutrit_basis_with_uniform_reference() {
        let basis: Vec<_> = (0..3).map(|k| StateVector::basis(vec![3], k).unwrap()).collect();
        let chi = StateVector::new(vec![3], vec![re(1.0 / 3f64.sqrt()); 3]).unwrap();
        let w = re(1.0 / 3f64.sqrt());
        let spec = ReferenceSpec::new(vec![w; 3], basis, chi.clone()).unwrap();
        let h = run_hybrid(&spec).unwrap();
        // reference projection 1/N^2 = 1/9, Fourier outcome 0 another 1/3
        assert_abs_diff_eq!(h.reference_prob, 1.0 / 9.0, epsilon = 1e-12);
        assert_abs_diff_eq!(h.success_prob, 1.0 / 27.0, epsilon = 1e-12);
        assert!(phase_equivalent(&h.final_state, &chi, 1e-12));
    }

    #[test]
    fn rejects_small_problems() {
        let zero = StateVector::basis(vec![2], 0).unwrap();
        let spec = ReferenceSpec::new(vec![re(1.0)], vec![zero.clone()], zero.clone()).unwrap();
        assert!(run_hybrid(&spec).is_err());
        let one3 = StateVector::basis(vec![1], 0).unwrap();
        let h = re(FRAC_1_SQRT_2);
        let spec = ReferenceSpec::new(vec![h, h], vec![one3.clone(), one3.clone()], one3).unwrap();
        assert!(run_hybrid(&spec).is_err());
    }

    #[test]
    fn dimension_cap() {
        let zero = StateVector::basis(vec![4], 0).unwrap();
        let w = re(1.0 / 7f64.sqrt());
        // 7 * 4^7 > 4096
        assert!(ReferenceSpec::new(vec![w; 7], vec![zero.clone(); 7], zero).is_err());
    }
}
