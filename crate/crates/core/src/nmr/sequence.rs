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
//! Pulse sequences: event model, compilation of the superposition protocol
//! and propagation with checkpoint recording.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use super::{crush, free_propagator, pulse_operator, SpinSystem, DIMS};
use crate::direct::SuperpositionSpec;
use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, Matrix, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    A,
    X,
    #[serde(rename = "both")]
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PulseEvent {
    /// Hard pulse; `axis_phase` is measured from +x in the xy-plane.
    Rf {
        spin: Spin,
        flip_angle: f64,
        axis_phase: f64,
    },
    /// Free evolution, in seconds.
    Delay { duration: f64 },
    /// Pulsed field gradient that dephases nonzero coherence orders.
    Gradient,
}

impl PulseEvent {
    fn validate(&self) -> Result<()> {
        match *self {
            PulseEvent::Rf {
                flip_angle, axis_phase, ..
            } => {
                if !(flip_angle.is_finite() && (0.0..=TAU).contains(&flip_angle)) {
                    return Err(Error::arg(format!("flip angle {flip_angle} is outside [0, 2pi]")));
                }
                if !axis_phase.is_finite() {
                    return Err(Error::arg("axis phase must be finite"));
                }
            }
            PulseEvent::Delay { duration } => {
                if !(duration.is_finite() && duration >= 0.0) {
                    return Err(Error::arg(format!("delay {duration} must be non-negative")));
                }
            }
            PulseEvent::Gradient => {}
        }
        Ok(())
    }

    fn operator(&self, sys: &SpinSystem) -> Option<Matrix> {
        match *self {
            PulseEvent::Rf {
                spin,
                flip_angle,
                axis_phase,
            } => Some(pulse_operator(spin, flip_angle, axis_phase)),
            PulseEvent::Delay { duration } => Some(free_propagator(sys, duration)),
            PulseEvent::Gradient => None,
        }
    }
}

/// Step labels of the protocol, ordered along the sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Checkpoint {
    I,
    Ii,
    Iii,
    Iv,
    V,
}

impl Checkpoint {
    pub const ALL: [Checkpoint; 5] = [
        Checkpoint::I,
        Checkpoint::Ii,
        Checkpoint::Iii,
        Checkpoint::Iv,
        Checkpoint::V,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Checkpoint::I => "i",
            Checkpoint::Ii => "ii",
            Checkpoint::Iii => "iii",
            Checkpoint::Iv => "iv",
            Checkpoint::V => "v",
        }
    }
}

/// Ordered events plus checkpoints. A checkpoint at index `k` records the
/// state after the first `k` events.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSequence")]
pub struct PulseSequence {
    events: Vec<PulseEvent>,
    checkpoints: BTreeMap<Checkpoint, usize>,
}

#[derive(Deserialize)]
struct RawSequence {
    events: Vec<PulseEvent>,
    #[serde(default)]
    checkpoints: BTreeMap<Checkpoint, usize>,
}

impl TryFrom<RawSequence> for PulseSequence {
    type Error = Error;

    fn try_from(raw: RawSequence) -> Result<Self> {
        Self::new(raw.events, raw.checkpoints)
    }
}

impl PulseSequence {
    pub fn new(events: Vec<PulseEvent>, checkpoints: BTreeMap<Checkpoint, usize>) -> Result<Self> {
        for (k, e) in events.iter().enumerate() {
            e.validate().map_err(|err| Error::arg(format!("event {k}: {err}")))?;
        }
        let mut last: Option<usize> = None;
        for (cp, &idx) in &checkpoints {
            if idx > events.len() {
                return Err(Error::arg(format!(
                    "checkpoint {} at {idx} is past the last event ({})",
                    cp.label(),
                    events.len()
                )));
            }
            if last.is_some_and(|prev| idx <= prev) {
                return Err(Error::arg(format!(
                    "checkpoint {} is not after its predecessor",
                    cp.label()
                )));
            }
            last = Some(idx);
        }
        Ok(Self { events, checkpoints })
    }

    pub fn events(&self) -> &[PulseEvent] {
        &self.events
    }

    pub fn checkpoints(&self) -> &BTreeMap<Checkpoint, usize> {
        &self.checkpoints
    }

    /// Events between two checkpoints; `None` as `from` means the start.
    pub fn block(&self, from: Option<Checkpoint>, to: Checkpoint) -> Result<&[PulseEvent]> {
        let index = |cp: Checkpoint| {
            self.checkpoints
                .get(&cp)
                .copied()
                .ok_or_else(|| Error::arg(format!("sequence has no checkpoint {}", cp.label())))
        };
        let start = match from {
            Some(cp) => index(cp)?,
            None => 0,
        };
        let end = index(to)?;
        if start > end {
            return Err(Error::arg("block bounds are reversed"));
        }
        Ok(&self.events[start..end])
    }
}

/// `(1 - epsilon) I/4 + epsilon |00><00|`.
pub fn pseudo_pure(epsilon: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::arg(format!("pseudo-pure purity {epsilon} is outside [0, 1]")));
    }
    let mut m = Matrix::identity(4, 4).scale((1.0 - epsilon) / 4.0);
    m[(0, 0)] += C64::new(epsilon, 0.0);
    DensityMatrix::new(DIMS.to_vec(), m)
}

/// Product of the event propagators, first event rightmost.
pub fn sequence_unitary(events: &[PulseEvent], sys: &SpinSystem) -> Result<Matrix> {
    events.iter().try_fold(Matrix::identity(4, 4), |acc, e| {
        e.operator(sys)
            .map(|u| u * acc)
            .ok_or_else(|| Error::arg("a gradient has no unitary propagator"))
    })
}

pub fn run_sequence(seq: &PulseSequence, sys: &SpinSystem) -> Result<BTreeMap<Checkpoint, DensityMatrix>> {
    run_sequence_from(seq, sys, &pseudo_pure(1.0)?)
}

/// Propagates `initial` through the sequence and records every checkpoint.
pub fn run_sequence_from(
    seq: &PulseSequence,
    sys: &SpinSystem,
    initial: &DensityMatrix,
) -> Result<BTreeMap<Checkpoint, DensityMatrix>> {
    if initial.dims() != DIMS {
        return Err(Error::arg(format!(
            "expected a two-spin initial state, got dims {:?}",
            initial.dims()
        )));
    }
    let mut rho = initial.entries().clone();
    let mut out = BTreeMap::new();
    let mut pending = seq.checkpoints.iter().peekable();
    for step in 0..=seq.events.len() {
        while let Some((&cp, _)) = pending.next_if(|(_, &idx)| idx == step) {
            out.insert(cp, DensityMatrix::new(DIMS.to_vec(), rho.clone())?);
        }
        if let Some(event) = seq.events.get(step) {
            rho = match event.operator(sys) {
                Some(u) => &u * rho * u.adjoint(),
                None => crush(&rho),
            };
        }
    }
    Ok(out)
}

struct Builder {
    sys: SpinSystem,
    events: Vec<PulseEvent>,
    checkpoints: BTreeMap<Checkpoint, usize>,
}

impl Builder {
    fn rf(&mut self, spin: Spin, flip_angle: f64, axis_phase: f64) {
        // R(a + 2pi) = -R(a), so wrapping only changes a global phase
        let flip_angle = flip_angle.rem_euclid(TAU);
        self.events.push(PulseEvent::Rf {
            spin,
            flip_angle,
            axis_phase: axis_phase.rem_euclid(TAU),
        });
    }

    /// `R_z(angle) = R_x(pi/2) R_y(angle) R_x(-pi/2)` from hard pulses.
    fn z_rotation(&mut self, spin: Spin, angle: f64) {
        self.rf(spin, FRAC_PI_2, PI);
        self.rf(spin, angle, FRAC_PI_2);
        self.rf(spin, FRAC_PI_2, 0.0);
    }

    /// Free evolution followed by refocusing of the chemical-shift precession.
    fn delay(&mut self, duration: f64) {
        self.events.push(PulseEvent::Delay { duration });
        for (spin, omega) in [(Spin::A, self.sys.omega_a()), (Spin::X, self.sys.omega_x())] {
            if omega != 0.0 {
                self.z_rotation(spin, omega * duration);
            }
        }
    }

    /// Half-angle pulse, coupling delay, half-angle pulse. The delay rotates X
    /// by `R_z(+pi/2)` when A is `|0>` and `R_z(-pi/2)` when A is `|1>`, so the
    /// two halves add up on one control branch and cancel on the other. The
    /// leftover conditional z rotations of both blocks are removed by
    /// [`Builder::coupling_compensation`].
    fn controlled_rotation(&mut self, control: usize, angle: f64, first_phase: f64) {
        let second_phase = if control == 0 {
            first_phase + FRAC_PI_2
        } else {
            first_phase - FRAC_PI_2
        };
        self.rf(Spin::X, angle / 2.0, first_phase);
        self.delay(self.sys.coupling_delay());
        self.rf(Spin::X, angle / 2.0, second_phase);
    }

    fn coupling_compensation(&mut self) {
        self.z_rotation(Spin::Both, PI);
    }

    fn mark(&mut self, cp: Checkpoint) {
        self.checkpoints.insert(cp, self.events.len());
    }
}

/// Compiles the three-block protocol: ancilla preparation, controlled
/// encoding of the two inputs, and the phase correction plus pseudo-Hadamard.
///
/// Checkpoints: (i) after preparation, (ii) after encoding, (iii) after the
/// phase correction, (iv) after the pseudo-Hadamard and (v) at acquisition.
pub fn compile_sequence(spec: &SuperpositionSpec, sys: &SpinSystem) -> PulseSequence {
    let mut b = Builder {
        sys: *sys,
        events: Vec::new(),
        checkpoints: BTreeMap::new(),
    };
    let (wa, wb) = (spec.weight_a(), spec.weight_b());
    let (p1, p2) = (spec.psi1(), spec.psi2());

    // a|0> + b e^{i(gamma2 - gamma1)}|1> up to a global phase
    let delta = wb.norm().atan2(wa.norm());
    let relative = wb.arg() - wa.arg() + p2.gamma() - p1.gamma();
    b.rf(Spin::A, 2.0 * delta, FRAC_PI_2 + relative);
    b.mark(Checkpoint::I);

    // net effect after compensation: R(theta_j, phi_j + pi/2) on branch j,
    // which takes |0> to cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
    b.controlled_rotation(0, p1.theta(), p1.phi() + FRAC_PI_2);
    b.controlled_rotation(1, p2.theta(), p2.phi());
    b.coupling_compensation();
    b.mark(Checkpoint::Ii);

    b.z_rotation(Spin::A, p1.gamma() - p2.gamma());
    b.mark(Checkpoint::Iii);

    // pulse about -y, then R_z(pi) turns it into a Hadamard up to phase
    b.rf(Spin::A, FRAC_PI_2, 3.0 * FRAC_PI_2);
    b.z_rotation(Spin::A, PI);
    b.mark(Checkpoint::Iv);

    b.events.push(PulseEvent::Delay { duration: 0.0 });
    b.mark(Checkpoint::V);

    PulseSequence::new(b.events, b.checkpoints).expect("compiled sequence is well formed")
}
