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
//! Simulation toolkit for superposing pure quantum states with partial prior
//! information: gate-level protocols, their qudit and enhanced-probability
//! variants, and a two-spin NMR pulse-level simulator.

pub mod analysis;
pub mod direct;
pub mod enhanced;
pub mod error;
pub mod hybrid;
pub mod linalg;
pub mod nmr;
pub mod reference;

pub use analysis::{
    reproduce_table1, success_ratio, sweep_rp, verify_probability_formulas, SweepGrid, Table1Row, VerifyReport,
};
pub use direct::{run_direct, ProtocolResult, SuperpositionSpec};
pub use enhanced::{geometry_report, run_enhanced, EnhancedResult, Geometry, GeometryReport};
pub use error::{Error, Result};
pub use hybrid::{fourier, run_hybrid, HybridResult};
pub use linalg::{
    fidelity, make_qubit, overlap_decompose, phase_equivalent, tensor, DensityMatrix, Matrix, OverlapInfo, QubitParams,
    StateVector, C64,
};
pub use nmr::{Checkpoint, PulseEvent, PulseSequence, SpinSystem};
pub use reference::{run_three_qubit, run_two_qubit_reduced, ReferenceSpec};
