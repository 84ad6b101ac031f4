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
//! Two-qubit superposition protocol: encode both inputs on an ancilla-controlled
//! register, cancel the declared global phases with an ancilla z-rotation,
//! apply a Hadamard to the ancilla and post-select the ancilla on `|0>`.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{fidelity, gates, make_qubit, overlap_decompose, tensor, QubitParams, StateVector, C64, NORM_TOL};

/// A two-state superposition problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuperpositionSpec {
    weight_a: C64,
    weight_b: C64,
    psi1: QubitParams,
    psi2: QubitParams,
    chi: QubitParams,
}

impl SuperpositionSpec {
    /// Requires `|a|^2 + |b|^2 = 1` (within 1e-12) and nonzero overlaps of both
    /// inputs with `chi`.
    pub fn new(weight_a: C64, weight_b: C64, psi1: QubitParams, psi2: QubitParams, chi: QubitParams) -> Result<Self> {
        let total = weight_a.norm_sqr() + weight_b.norm_sqr();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::arg(format!("|a|^2 + |b|^2 = {total}, expected 1")));
        }
        let spec = Self {
            weight_a,
            weight_b,
            psi1,
            psi2,
            chi,
        };
        let chi = spec.chi_state();
        for (label, psi) in [("psi1", spec.psi1), ("psi2", spec.psi2)] {
            overlap_decompose(&make_qubit(psi), &chi).map_err(|e| match e {
                Error::ZeroOverlap { magnitude, .. } => Error::ZeroOverlap {
                    what: label.into(),
                    magnitude,
                },
                other => other,
            })?;
        }
        Ok(spec)
    }

    /// Positive real weights with `a/b = ratio`.
    pub fn from_ratio(ratio: f64, psi1: QubitParams, psi2: QubitParams, chi: QubitParams) -> Result<Self> {
        if !(ratio.is_finite() && ratio > 0.0) {
            return Err(Error::arg(format!("weight ratio {ratio} must be positive")));
        }
        let n = ratio.hypot(1.0);
        Self::new(C64::new(ratio / n, 0.0), C64::new(1.0 / n, 0.0), psi1, psi2, chi)
    }

    pub fn weight_a(&self) -> C64 {
        self.weight_a
    }

    pub fn weight_b(&self) -> C64 {
        self.weight_b
    }

    pub fn psi1(&self) -> QubitParams {
        self.psi1
    }

    pub fn psi2(&self) -> QubitParams {
        self.psi2
    }

    pub fn chi(&self) -> QubitParams {
        self.chi
    }

    pub fn chi_state(&self) -> StateVector {
        make_qubit(self.chi)
    }

    /// Inputs including their declared global phases, `e^{i gamma_j}|psi_j>`.
    pub fn phased_inputs(&self) -> (StateVector, StateVector) {
        (make_qubit(self.psi1), make_qubit(self.psi2))
    }

    /// Inputs with the global phases stripped.
    pub fn bare_inputs(&self) -> (StateVector, StateVector) {
        (
            make_qubit(self.psi1.without_phase()),
            make_qubit(self.psi2.without_phase()),
        )
    }

    /// `a|psi1> + b|psi2>` over the phase-stripped inputs (unnormalized).
    pub fn weighted_sum(&self) -> StateVector {
        let (p1, p2) = self.bare_inputs();
        p1.scale(self.weight_a)
            .add(&p2.scale(self.weight_b))
            .expect("both inputs are qubits")
    }
}

/// Outcome of one protocol run.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolResult {
    /// Normalized post-selected output.
    pub final_state: StateVector,
    /// Output branch before normalization; its squared norm is `success_prob`.
    pub branch_unnormalized: StateVector,
    pub success_prob: f64,
    /// Squared norm of the weighted sum being superposed.
    pub norm_sq: f64,
    pub target_state: StateVector,
    pub fidelity_to_target: f64,
    /// Normalized ancilla-`|1>` outcome, when that branch has norm >= 1e-12.
    pub difference_branch: Option<StateVector>,
}

impl Serialize for ProtocolResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            final_state: &'a StateVector,
            success_prob: f64,
            norm_sq: f64,
            fidelity: f64,
        }
        Wire {
            final_state: &self.final_state,
            success_prob: self.success_prob,
            norm_sq: self.norm_sq,
            fidelity: self.fidelity_to_target,
        }
        .serialize(s)
    }
}

impl ProtocolResult {
    /// Assembles a result from an unnormalized output branch and its target.
    pub(crate) fn from_branch(
        branch: StateVector,
        target_unnormalized: &StateVector,
        difference: Option<StateVector>,
    ) -> Result<Self> {
        let final_state = branch.normalize()?;
        let target_state = target_unnormalized.normalize()?;
        let fid = fidelity(&final_state.to_density()?, &target_state.to_density()?)?;
        Ok(Self {
            success_prob: branch.norm_sq(),
            norm_sq: target_unnormalized.norm_sq(),
            final_state,
            branch_unnormalized: branch,
            target_state,
            fidelity_to_target: fid,
            difference_branch: difference.and_then(|d| d.normalize().ok()),
        })
    }
}

fn check_two_qubit(state: &StateVector) -> Result<()> {
    if state.dims() != [2, 2] {
        return Err(Error::arg(format!(
            "expected a two-qubit state, got dims {:?}",
            state.dims()
        )));
    }
    Ok(())
}

/// `a|0>(e^{i gamma_1}|psi1>) + b|1>(e^{i gamma_2}|psi2>)`.
pub fn encode_two_qubit(spec: &SuperpositionSpec) -> StateVector {
    let (p1, p2) = spec.phased_inputs();
    let zero = StateVector::basis(vec![2], 0).expect("valid basis");
    let one = StateVector::basis(vec![2], 1).expect("valid basis");
    tensor(&zero, &p1)
        .scale(spec.weight_a)
        .add(&tensor(&one, &p2).scale(spec.weight_b))
        .expect("same dims")
}

/// Ancilla z-rotation `diag(e^{-i t}, e^{i t})` with `t = (gamma1 - gamma2)/2`.
///
/// On an encoded state this moves both branch phases to `(gamma1 + gamma2)/2`,
/// leaving only a global phase.
pub fn phase_gate(state: &StateVector, gamma1: f64, gamma2: f64) -> Result<StateVector> {
    check_two_qubit(state)?;
    state.apply_local(0, &gates::rz(gamma1 - gamma2))
}

pub fn ancilla_hadamard(state: &StateVector) -> Result<StateVector> {
    check_two_qubit(state)?;
    state.apply_local(0, &gates::hadamard())
}

/// Projects the ancilla on `|outcome>` and returns the unnormalized system
/// branch together with its probability.
pub fn measure_ancilla(state: &StateVector, outcome: usize) -> Result<(StateVector, f64)> {
    check_two_qubit(state)?;
    if outcome > 1 {
        return Err(Error::arg(format!("ancilla outcome {outcome} is not 0 or 1")));
    }
    let branch = state.contract(0, &StateVector::basis(vec![2], outcome)?)?;
    let p = branch.norm_sq();
    Ok((branch, p))
}

/// Full pipeline: encode, phase gate, ancilla Hadamard, post-select `|0>`.
pub fn run_direct(spec: &SuperpositionSpec) -> Result<ProtocolResult> {
    let encoded = encode_two_qubit(spec);
    let corrected = phase_gate(&encoded, spec.psi1.gamma(), spec.psi2.gamma())?;
    let mixed = ancilla_hadamard(&corrected)?;
    let (branch, _) = measure_ancilla(&mixed, 0)?;
    let (difference, _) = measure_ancilla(&mixed, 1)?;
    ProtocolResult::from_branch(branch, &spec.weighted_sum(), Some(difference))
}
