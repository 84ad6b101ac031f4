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
//! The eleven benchmark input pairs and their gate- and pulse-level runs.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

use serde::Serialize;

use super::format_number;
use crate::direct::{run_direct, SuperpositionSpec};
use crate::error::Result;
use crate::linalg::{fidelity, DensityMatrix, QubitParams, StateVector};
use crate::nmr::{compile_sequence, partial_tomography, pseudo_pure, run_sequence_from, Checkpoint, SpinSystem};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Dataset {
    pub id: usize,
    pub psi1: QubitParams,
    pub psi2: QubitParams,
    /// `a/b`, both weights positive.
    pub weight_ratio: f64,
    /// Reported experimental fidelity, kept for reference only.
    pub paper_fidelity: f64,
}

impl Dataset {
    pub fn gamma2(&self) -> f64 {
        self.psi2.gamma()
    }

    /// Protocol input with the reference `|0>`.
    pub fn spec(&self) -> Result<SuperpositionSpec> {
        SuperpositionSpec::from_ratio(
            self.weight_ratio,
            self.psi1,
            self.psi2,
            QubitParams::new(0.0, 0.0, 0.0)?,
        )
    }
}

pub fn table1_datasets() -> Vec<Dataset> {
    let q = |theta: f64, phi: f64, gamma: f64| QubitParams::new(theta, phi, gamma).expect("fixture angles are valid");
    let zero = q(0.0, 0.0, 0.0);
    let two_thirds = 2.0 * FRAC_PI_3;
    let rows = [
        (zero, q(FRAC_PI_2, 0.0, 0.0), 1.0, 0.996),
        (zero, q(FRAC_PI_2, FRAC_PI_4, 0.0), 1.0, 0.995),
        (zero, q(FRAC_PI_2, FRAC_PI_2, 0.0), 1.0, 0.997),
        (zero, q(FRAC_PI_2, PI, 0.0), 1.0, 0.997),
        (q(two_thirds, 0.0, 0.0), q(FRAC_PI_3, 0.0, 0.0), 1.0, 0.998),
        (q(two_thirds, FRAC_PI_4, 0.0), q(FRAC_PI_3, two_thirds, 0.0), 1.0, 0.974),
        (q(two_thirds, 0.0, 0.0), q(FRAC_PI_3, 0.0, 0.0), 2.0, 0.999),
        (q(two_thirds, 0.0, 0.0), q(FRAC_PI_3, 0.0, 0.0), 3.0, 0.999),
        (q(two_thirds, 0.0, 0.0), q(FRAC_PI_3, 0.0, two_thirds), 1.0, 0.999),
        (
            q(two_thirds, FRAC_PI_4, 0.0),
            q(FRAC_PI_3, two_thirds, two_thirds),
            1.0,
            0.981,
        ),
        (zero, q(17.0 * PI / 18.0, 0.0, 0.0), 1.0, 0.988),
    ];
    rows.iter()
        .enumerate()
        .map(|(k, &(psi1, psi2, weight_ratio, paper_fidelity))| Dataset {
            id: k + 1,
            psi1,
            psi2,
            weight_ratio,
            paper_fidelity,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Gate,
    Pulse,
    Both,
}

impl Mode {
    fn gate(self) -> bool {
        self != Mode::Pulse
    }

    fn pulse(self) -> bool {
        self != Mode::Gate
    }
}

/// Pulse-level run of one protocol instance.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseRun {
    pub checkpoints: BTreeMap<Checkpoint, DensityMatrix>,
    /// Readout of the ancilla-`|0>` block at checkpoint (iv).
    pub qubit_state: DensityMatrix,
    /// Trace of that block, the success probability.
    pub normalization: f64,
    pub fidelity_to_target: f64,
}

/// Compiles, runs and reads out the pulse sequence for `spec`, starting from
/// the pseudo-pure state of purity `epsilon`.
pub fn pulse_pipeline(spec: &SuperpositionSpec, sys: &SpinSystem, epsilon: f64) -> Result<PulseRun> {
    let seq = compile_sequence(spec, sys);
    let checkpoints = run_sequence_from(&seq, sys, &pseudo_pure(epsilon)?)?;
    let (qubit_state, normalization) = partial_tomography(&checkpoints[&Checkpoint::Iv])?;
    let target = spec.weighted_sum().normalize()?.to_density()?;
    let fidelity_to_target = fidelity(&qubit_state, &target)?;
    Ok(PulseRun {
        checkpoints,
        qubit_state,
        normalization,
        fidelity_to_target,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Row {
    pub dataset_id: usize,
    pub psi1: QubitParams,
    pub psi2: QubitParams,
    pub weight_ratio: f64,
    pub gamma2: f64,
    pub paper_fidelity: f64,
    pub sim_fidelity_gate: Option<f64>,
    pub sim_fidelity_pulse: Option<f64>,
    /// Gate-level success probability, or the pulse-level one in pulse mode.
    pub success_prob: f64,
    pub success_prob_pulse: Option<f64>,
    #[serde(skip)]
    pub final_state_gate: Option<StateVector>,
    #[serde(skip)]
    pub final_state_pulse: Option<DensityMatrix>,
}

impl Table1Row {
    pub const HEADER: [&'static str; 12] = [
        "dataset_id",
        "psi1_theta",
        "psi1_phi",
        "psi2_theta",
        "psi2_phi",
        "weight_ratio",
        "gamma2",
        "paper_fidelity",
        "sim_fidelity_gate",
        "sim_fidelity_pulse",
        "success_prob",
        "success_prob_pulse",
    ];

    pub fn record(&self) -> Vec<String> {
        let opt = |x: Option<f64>| x.map(format_number).unwrap_or_default();
        vec![
            self.dataset_id.to_string(),
            format_number(self.psi1.theta()),
            format_number(self.psi1.phi()),
            format_number(self.psi2.theta()),
            format_number(self.psi2.phi()),
            format_number(self.weight_ratio),
            format_number(self.gamma2),
            format_number(self.paper_fidelity),
            opt(self.sim_fidelity_gate),
            opt(self.sim_fidelity_pulse),
            format_number(self.success_prob),
            opt(self.success_prob_pulse),
        ]
    }
}

/// Runs every dataset at gate level, pulse level (default spin system, ideal
/// pseudo-pure start) or both.
pub fn reproduce_table1(mode: Mode) -> Result<Vec<Table1Row>> {
    let sys = SpinSystem::default();
    table1_datasets()
        .iter()
        .map(|d| {
            let spec = d.spec()?;
            let gate = mode.gate().then(|| run_direct(&spec)).transpose()?;
            let pulse = mode.pulse().then(|| pulse_pipeline(&spec, &sys, 1.0)).transpose()?;
            let success_prob = match (&gate, &pulse) {
                (Some(g), _) => g.success_prob,
                (None, Some(p)) => p.normalization,
                (None, None) => unreachable!("every mode runs at least one pipeline"),
            };
            Ok(Table1Row {
                dataset_id: d.id,
                psi1: d.psi1,
                psi2: d.psi2,
                weight_ratio: d.weight_ratio,
                gamma2: d.gamma2(),
                paper_fidelity: d.paper_fidelity,
                sim_fidelity_gate: gate.as_ref().map(|g| g.fidelity_to_target),
                sim_fidelity_pulse: pulse.as_ref().map(|p| p.fidelity_to_target),
                success_prob,
                success_prob_pulse: pulse.as_ref().map(|p| p.normalization),
                final_state_gate: gate.map(|g| g.final_state),
                final_state_pulse: pulse.map(|p| p.qubit_state),
            })
        })
        .collect()
}
