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
//! Reference-state protocols built from a controlled-SWAP cascade.
//!
//! The ancilla (a qunit) is prepared with primed weights, the cascade moves
//! input `k` into the system slot on ancilla branch `k`, and projecting every
//! auxiliary slot onto `|chi>` replaces each leftover input by its overlap
//! with the reference. That leaves the encoded state
//! `(1/N) sum_k a_k (prod_{j != k} kappa_j) |k-1>|Psi_k>`.

use serde::Serialize;

use crate::direct::ProtocolResult;
use crate::enhanced::u_chi;
use crate::error::{Error, Result};
use crate::linalg::{gates, overlap_decompose, tensor, OverlapInfo, StateVector, C64, EPS_OVERLAP, NORM_TOL};

/// Largest total dimension `n * d^n` the dense pipeline accepts.
pub const MAX_DIM: usize = 4096;

/// `n` qudit states of dimension `d` with weights and a reference state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceSpec {
    weights: Vec<C64>,
    states: Vec<StateVector>,
    chi: StateVector,
    #[serde(skip)]
    overlaps: Vec<OverlapInfo>,
    primed_weights: Vec<C64>,
    norm_n: f64,
}

impl ReferenceSpec {
    pub fn new(weights: Vec<C64>, states: Vec<StateVector>, chi: StateVector) -> Result<Self> {
        let n = states.len();
        if n == 0 || weights.len() != n {
            return Err(Error::arg(format!(
                "need one weight per state (got {} weights, {n} states)",
                weights.len()
            )));
        }
        let d = chi.len();
        if chi.dims() != [d] || d == 0 {
            return Err(Error::arg(format!(
                "reference state must be a single qudit, dims {:?}",
                chi.dims()
            )));
        }
        if let Some(bad) = states.iter().position(|s| s.dims() != [d]) {
            return Err(Error::arg(format!(
                "state {} has dims {:?}, expected [{d}]",
                bad + 1,
                states[bad].dims()
            )));
        }
        let total = (0..n).try_fold(n, |acc, _| acc.checked_mul(d));
        if !matches!(total, Some(t) if t <= MAX_DIM) {
            return Err(Error::arg(format!("n * d^n exceeds {MAX_DIM} for n = {n}, d = {d}")));
        }
        let wsum: f64 = weights.iter().map(|w| w.norm_sqr()).sum();
        if (wsum - 1.0).abs() > NORM_TOL {
            return Err(Error::arg(format!("sum of |a_k|^2 = {wsum}, expected 1")));
        }
        let overlaps = states
            .iter()
            .enumerate()
            .map(|(k, s)| {
                overlap_decompose(s, &chi).map_err(|e| match e {
                    Error::ZeroOverlap { magnitude, .. } => Error::ZeroOverlap {
                        what: format!("state {}", k + 1),
                        magnitude,
                    },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let (primed_weights, norm_n) = primed_weights(&weights, &overlaps)?;
        Ok(Self {
            weights,
            states,
            chi,
            overlaps,
            primed_weights,
            norm_n,
        })
    }

    /// Number of states.
    pub fn n(&self) -> usize {
        self.states.len()
    }

    /// Qudit dimension.
    pub fn d(&self) -> usize {
        self.chi.len()
    }

    pub fn weights(&self) -> &[C64] {
        &self.weights
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    pub fn chi(&self) -> &StateVector {
        &self.chi
    }

    pub fn overlaps(&self) -> &[OverlapInfo] {
        &self.overlaps
    }

    pub fn primed_weights(&self) -> &[C64] {
        &self.primed_weights
    }

    pub fn norm_n(&self) -> f64 {
        self.norm_n
    }

    /// Phase products `prod_{j != k} kappa_j`, one per input.
    pub fn kappa_products(&self) -> Vec<C64> {
        (0..self.n())
            .map(|k| {
                self.overlaps
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, o)| o.kappa)
                    .product()
            })
            .collect()
    }

    /// `sum_k a_k (prod_{j != k} kappa_j) |Psi_k>`, unnormalized.
    pub fn target_unnormalized(&self) -> StateVector {
        let d = self.d();
        self.kappa_products()
            .into_iter()
            .zip(&self.weights)
            .zip(&self.states)
            .fold(
                StateVector::new(vec![d], vec![C64::new(0.0, 0.0); d]).expect("zero vector"),
                |acc, ((kp, &w), s)| acc.add(&s.scale(w * kp)).expect("same dims"),
            )
    }
}

/// `a_k' = a_k / sqrt(prod_{j != k} c_j)` and `N = sqrt(sum_k |a_k'|^2)`.
pub fn primed_weights(weights: &[C64], overlaps: &[OverlapInfo]) -> Result<(Vec<C64>, f64)> {
    if weights.len() != overlaps.len() {
        return Err(Error::arg("one overlap per weight required"));
    }
    if let Some(o) = overlaps.iter().find(|o| o.c.is_nan() || o.c < EPS_OVERLAP) {
        return Err(Error::ZeroOverlap {
            what: "primed weight".into(),
            magnitude: o.c.max(0.0).sqrt(),
        });
    }
    let primed: Vec<C64> = (0..weights.len())
        .map(|k| {
            let others: f64 = overlaps
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, o)| o.c)
                .product();
            weights[k] / others.sqrt()
        })
        .collect();
    let norm = primed.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
    Ok((primed, norm))
}

/// `(1/N)(sum_k a_k' |k-1>) (x) |Psi_1> (x) ... (x) |Psi_n>`.
pub fn build_initial(spec: &ReferenceSpec) -> StateVector {
    let ancilla = StateVector::new(
        vec![spec.n()],
        spec.primed_weights.iter().map(|w| w / spec.norm_n).collect(),
    )
    .expect("finite amplitudes");
    spec.states.iter().fold(ancilla, |acc, s| tensor(&acc, s))
}

fn check_cascade_dims(state: &StateVector, n: usize, d: usize) -> Result<()> {
    let mut expect = vec![d; n + 1];
    expect[0] = n;
    if state.dims() != expect.as_slice() {
        return Err(Error::arg(format!("expected dims {expect:?}, got {:?}", state.dims())));
    }
    Ok(())
}

/// For ancilla value `k >= 1`, swaps qudit 1 with qudit `k + 1`.
pub fn controlled_swap_cascade(state: &StateVector, n: usize, d: usize) -> Result<StateVector> {
    check_cascade_dims(state, n, d)?;
    Ok(state.permute_basis(|dg| {
        let mut out = dg.to_vec();
        let k = dg[0];
        if k >= 1 {
            out.swap(1, k + 1);
        }
        out
    }))
}

/// Projects qudits `2..=n` onto `|chi>`. Returns the projected state and its
/// squared norm.
pub fn project_onto_reference(
    state: &StateVector,
    chi: &StateVector,
    n: usize,
    d: usize,
) -> Result<(StateVector, f64)> {
    check_cascade_dims(state, n, d)?;
    let mut out = state.clone();
    for sub in 2..=n {
        out = out.project_local(sub, chi)?;
    }
    let p = out.norm_sq();
    Ok((out, p))
}

/// Removes auxiliary qudits `2..=n` from a state already projected onto
/// `|chi>` there; the norm is unchanged.
fn drop_auxiliaries(state: &StateVector, chi: &StateVector, n: usize) -> Result<StateVector> {
    (2..=n).rev().try_fold(state.clone(), |acc, sub| acc.contract(sub, chi))
}

/// Ancilla-plus-system state after preparation, cascade and reference
/// projection: dims `[n, d]`, squared norm `1/N^2` (the projection probability).
pub fn encode_with_reference(spec: &ReferenceSpec) -> Result<StateVector> {
    let (n, d) = (spec.n(), spec.d());
    let swapped = controlled_swap_cascade(&build_initial(spec), n, d)?;
    let (projected, _) = project_onto_reference(&swapped, &spec.chi, n, d)?;
    drop_auxiliaries(&projected, &spec.chi, n)
}

fn pair_spec(a: C64, b: C64, psi1: &StateVector, psi2: &StateVector, chi: &StateVector) -> Result<ReferenceSpec> {
    if chi.dims() != [2] {
        return Err(Error::arg("two-state reference protocols act on qubits"));
    }
    ReferenceSpec::new(vec![a, b], vec![psi1.clone(), psi2.clone()], chi.clone())
}

/// Reduced two-qubit protocol: primed-weight ancilla, one reference
/// projection, Hadamard on the ancilla and post-selection on `|0>`.
pub fn run_two_qubit_reduced(
    a: C64,
    b: C64,
    psi1: &StateVector,
    psi2: &StateVector,
    chi: &StateVector,
) -> Result<ProtocolResult> {
    let spec = pair_spec(a, b, psi1, psi2, chi)?;
    let encoded = encode_with_reference(&spec)?;
    let mixed = encoded.apply_local(0, &gates::hadamard())?;
    let branch = mixed.contract(0, &StateVector::basis(vec![2], 0)?)?;
    let difference = mixed.contract(0, &StateVector::basis(vec![2], 1)?)?;
    ProtocolResult::from_branch(branch, &spec.target_unnormalized(), Some(difference))
}

/// Three-qubit baseline: unprimed ancilla `a|0> + b|1>`, controlled-SWAP,
/// reference projection on the third qubit, and an ancilla projection onto
/// `|mu> ~ sqrt(c1)|0> + sqrt(c2)|1>`.
pub fn run_three_qubit(
    a: C64,
    b: C64,
    psi1: &StateVector,
    psi2: &StateVector,
    chi: &StateVector,
) -> Result<ProtocolResult> {
    let spec = pair_spec(a, b, psi1, psi2, chi)?;
    let ancilla = StateVector::new(vec![2], vec![a, b])?;
    let initial = tensor(&tensor(&ancilla, psi1), psi2);
    let swapped = controlled_swap_cascade(&initial, 2, 2)?;
    let (projected, _) = project_onto_reference(&swapped, chi, 2, 2)?;
    let reduced = drop_auxiliaries(&projected, chi, 2)?;
    let (c1, c2) = (spec.overlaps[0].c, spec.overlaps[1].c);
    // row 0 of u_chi(c2, c1) is <mu|
    let rotated = reduced.apply_local(0, &u_chi(c2, c1)?)?;
    let branch = rotated.contract(0, &StateVector::basis(vec![2], 0)?)?;
    let difference = rotated.contract(0, &StateVector::basis(vec![2], 1)?)?;
    ProtocolResult::from_branch(branch, &spec.target_unnormalized(), Some(difference))
}
