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

//! End-to-end acceptance checks. Each check prints one PASS/FAIL line; the
//! test fails if any check fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use superpose_core::analysis::{pulse_pipeline, table1_datasets};
use superpose_core::direct::{ancilla_hadamard, encode_two_qubit, measure_ancilla, phase_gate};
use superpose_core::enhanced::{u_chi, u_chi_perp};
use superpose_core::linalg::gates;
use superpose_core::{
    fidelity, fourier, make_qubit, phase_equivalent, run_direct, run_enhanced, run_hybrid, run_three_qubit,
    success_ratio, tensor, Geometry, QubitParams, ReferenceSpec, SpinSystem, StateVector, C64,
};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}

fn superpose(args: &[&str]) -> (bool, Value, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_superpose"))
        .args(args)
        .output()
        .expect("binary runs");
    let value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.success(), value, out.stdout)
}

fn state_from(v: &Value) -> StateVector {
    serde_json::from_value(v.clone()).expect("state JSON")
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed())
}

fn real(x: f64, y: f64) -> StateVector {
    StateVector::new(vec![2], vec![C64::new(x, 0.0), C64::new(y, 0.0)]).unwrap()
}

fn ideal_table() -> Outcome {
    let (res, elapsed) = timed(|| {
        table1_datasets()
            .iter()
            .map(|d| run_direct(&d.spec().unwrap()).unwrap().fidelity_to_target)
            .fold(f64::INFINITY, f64::min)
    });
    Outcome::new(
        res >= 1.0 - 1e-9 && elapsed < Duration::from_secs(1),
        format!("min fidelity {res:.15}, {elapsed:?}"),
    )
}

fn gate_pulse_equivalence() -> Outcome {
    let sys = SpinSystem::default();
    let ((min_f, max_dp), elapsed) = timed(|| {
        let mut worst = (f64::INFINITY, 0.0f64);
        for d in table1_datasets() {
            let spec = d.spec().unwrap();
            let gate = run_direct(&spec).unwrap();
            let pulse = pulse_pipeline(&spec, &sys, 1.0).unwrap();
            let f = fidelity(&pulse.qubit_state, &gate.final_state.to_density().unwrap()).unwrap();
            worst.0 = worst.0.min(f);
            worst.1 = worst.1.max((pulse.normalization - gate.success_prob).abs());
        }
        worst
    });
    Outcome::new(
        min_f >= 1.0 - 1e-6 && max_dp <= 1e-6 && elapsed < Duration::from_secs(5),
        format!("min fidelity {min_f:.12}, max |dP| {max_dp:.2e}, {elapsed:?}"),
    )
}

fn formula_oracle() -> Outcome {
    let ((ok, report, _), elapsed) = timed(|| superpose(&["verify", "--trials", "1000", "--seed", "0"]));
    let passed = ok && report["passed"] == Value::Bool(true) && report["trials"] == 1000;
    let worst = report["max_deviation"]
        .as_object()
        .map(|m| m.values().filter_map(Value::as_f64).fold(0.0, f64::max))
        .unwrap_or(f64::NAN);
    let checks = report["max_deviation"].as_object().map_or(0, |m| m.len());
    Outcome::new(
        passed && worst <= 1e-9 && elapsed < Duration::from_secs(30),
        format!("{checks} checks, max deviation {worst:.2e}, {elapsed:?}"),
    )
}

fn ratio_points() -> Outcome {
    let p1 = success_ratio(3.0, 0.2).unwrap();
    let p2 = success_ratio(3.0, 0.1).unwrap();
    let mut line_dev = 0.0f64;
    for k in 1..100 {
        let t = k as f64 / 100.0;
        line_dev = line_dev.max((success_ratio(1.0, t).unwrap() - 1.0).abs());
        let r_c = 10f64.powf(4.0 * t - 2.0);
        line_dev = line_dev.max((success_ratio(r_c, 0.5).unwrap() - 1.0).abs());
    }
    let d1 = (p1 - 10.0 / 7.0).abs();
    let d2 = (p2 - 5.0 / 3.0).abs();
    Outcome::new(
        d1 <= 1e-12 && d2 <= 1e-12 && line_dev <= 1e-12,
        format!("|dev| {d1:.1e}, {d2:.1e}, unit lines {line_dev:.1e}"),
    )
}

fn enhanced_claims() -> Outcome {
    let (a, b) = (C64::new(0.6, 0.0), C64::new(0.8, 0.0));
    let zero = real(1.0, 0.0);
    // c1 = 1/4 and c2 = 3/4 on one meridian
    let (p1, p2) = (real(0.5, 0.75f64.sqrt()), real(0.75f64.sqrt(), 0.5));
    let r = run_enhanced(a, b, &p1, &p2, &zero).unwrap();
    let p3 = run_three_qubit(a, b, &p1, &p2, &zero).unwrap().success_prob;
    let da = (r.p_total - 2.0 * p3).abs();
    let longitudinal = r.geometry == Geometry::Longitudinal;

    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let eq = run_enhanced(
        h,
        h,
        &real(FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        &real(FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
        &zero,
    )
    .unwrap();
    let db = (eq.p_total - 0.5).abs();

    let purity = r
        .joint_state
        .to_density()
        .unwrap()
        .partial_trace(&[0])
        .unwrap()
        .purity();
    Outcome::new(
        longitudinal && da <= 1e-9 && db <= 1e-9 && purity >= 1.0 - 1e-9,
        format!("|P - 2P3| {da:.1e}, |P - 1/2| {db:.1e}, purity {purity:.15}"),
    )
}

fn phase_invariance() -> Outcome {
    let data = table1_datasets();
    let sys = SpinSystem::default();
    let mut worst_gate = f64::INFINITY;
    let mut worst_pulse = f64::INFINITY;
    let mut all = true;
    for (i, j) in [(5, 9), (6, 10)] {
        let (u, v) = (data[i - 1].spec().unwrap(), data[j - 1].spec().unwrap());
        let (gu, gv) = (run_direct(&u).unwrap().final_state, run_direct(&v).unwrap().final_state);
        all &= phase_equivalent(&gu, &gv, 1e-9);
        worst_gate = worst_gate.min(gu.inner(&gv).unwrap().norm());
        let pu = pulse_pipeline(&u, &sys, 1.0).unwrap().qubit_state;
        let pv = pulse_pipeline(&v, &sys, 1.0).unwrap().qubit_state;
        // for pure states the fidelity is the squared overlap
        worst_pulse = worst_pulse.min(fidelity(&pu, &pv).unwrap().sqrt());
    }
    Outcome::new(
        all && worst_pulse >= 1.0 - 1e-9,
        format!("gate |<u|v>| {worst_gate:.15}, pulse {worst_pulse:.15}"),
    )
}

fn hybrid_reduction(dir: &Path) -> Outcome {
    let (t1, p1, g1) = (1.0, 0.3, 0.7);
    let (t2, p2, g2) = (2.2, 4.0, 1.9);
    let states = vec![
        make_qubit(QubitParams::new(t1, p1, g1).unwrap()),
        make_qubit(QubitParams::new(t2, p2, g2).unwrap()),
    ];
    let path = dir.join("states.json");
    std::fs::write(&path, serde_json::to_string(&states).unwrap()).unwrap();
    let (ok_q, qudit, _) = superpose(&[
        "qudit",
        "--n",
        "2",
        "--d",
        "2",
        "--states",
        path.to_str().unwrap(),
        "--weights",
        "0.6,0.8:0.3",
        "--chi-index",
        "0",
    ]);
    let (ok_r, reduced, _) = superpose(&[
        "run-reference",
        "--mode",
        "reduced",
        "--psi1",
        &format!("{t1},{p1},{g1}"),
        "--psi2",
        &format!("{t2},{p2},{g2}"),
        "--a",
        "0.6",
        "--b",
        "0.8,0.3",
        "--json",
    ]);
    if !(ok_q && ok_r) {
        return Outcome::new(false, "a command failed");
    }
    let (u, v) = (state_from(&qudit["final_state"]), state_from(&reduced["final_state"]));
    let ov = u.amps().dotc(v.amps()).norm_sqr();
    let dp = (qudit["success_prob"].as_f64().unwrap() - reduced["success_prob"].as_f64().unwrap()).abs();
    Outcome::new(
        ov >= 1.0 - 1e-9 && dp <= 1e-9,
        format!("fidelity {ov:.15}, |dP| {dp:.1e}"),
    )
}

fn small_overlap() -> Outcome {
    let d = table1_datasets()[10];
    let overlap = (d.psi2.theta() / 2.0).cos();
    let f = run_direct(&d.spec().unwrap()).unwrap().fidelity_to_target;
    Outcome::new(
        f >= 1.0 - 1e-9 && (overlap - (PI / 36.0).sin()).abs() < 1e-12,
        format!("overlap {overlap:.6}, fidelity {f:.15}"),
    )
}

fn structural(dir: &Path) -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=8 {
        worst = worst.max(gates::unitarity_defect_max(&fourier(n).unwrap()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..100 {
        let (x, y) = (rng.random_range(1e-6..1.0), rng.random_range(1e-6..1.0));
        worst = worst.max(gates::unitarity_defect_max(&u_chi(x, y).unwrap()));
        worst = worst.max(gates::unitarity_defect_max(&u_chi_perp(1.0 - x, 1.0 - y).unwrap()));
    }
    let random_qubit = |rng: &mut ChaCha8Rng| {
        make_qubit(
            QubitParams::new(
                rng.random_range(0.0..3.0),
                rng.random_range(0.0..TAU),
                rng.random_range(0.0..TAU),
            )
            .unwrap(),
        )
    };
    for _ in 0..50 {
        let states: Vec<StateVector> = (0..3).map(|_| random_qubit(&mut rng)).collect();
        let w: Vec<C64> = (0..3)
            .map(|_| C64::new(rng.random_range(0.1..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let n = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let spec = ReferenceSpec::new(w.iter().map(|z| z / n).collect(), states.clone(), real(1.0, 0.0)).unwrap();
        let total: f64 = run_hybrid(&spec).unwrap().branches.iter().map(|b| b.norm_sq()).sum();
        worst = worst.max((total - 1.0).abs());

        let d = table1_datasets()[rng.random_range(0..11)];
        let mixed =
            ancilla_hadamard(&phase_gate(&encode_two_qubit(&d.spec().unwrap()), d.psi1.gamma(), d.gamma2()).unwrap())
                .unwrap();
        let (_, q0) = measure_ancilla(&mixed, 0).unwrap();
        let (_, q1) = measure_ancilla(&mixed, 1).unwrap();
        worst = worst.max((q0 + q1 - 1.0).abs());

        let joint = tensor(&states[0], &tensor(&states[1], &states[2]));
        let rho = joint.to_density().unwrap();
        let left = rho.partial_trace(&[0]).unwrap();
        let rest = rho.partial_trace(&[1, 2]).unwrap();
        let expect_rest = tensor(&states[1], &states[2]).to_density().unwrap();
        worst = worst.max((left.entries() - states[0].to_density().unwrap().entries()).norm());
        worst = worst.max((rest.entries() - expect_rest.entries()).norm());
        let product = states[0].inner(&states[1]).unwrap() * states[1].inner(&states[2]).unwrap();
        let paired = tensor(&states[0], &states[1])
            .inner(&tensor(&states[1], &states[2]))
            .unwrap();
        worst = worst.max((product - paired).norm());
    }
    let first = dir.join("table1_a.csv");
    let second = dir.join("table1_b.csv");
    let (ok1, _, _) = superpose(&["table1", "--mode", "both", "--out", first.to_str().unwrap()]);
    let (ok2, _, _) = superpose(&["table1", "--mode", "both", "--out", second.to_str().unwrap()]);
    let identical = ok1 && ok2 && std::fs::read(&first).unwrap() == std::fs::read(&second).unwrap();
    Outcome::new(
        worst <= 1e-12 && identical,
        format!("max identity defect {worst:.1e}, csv identical {identical}"),
    )
}

#[test]
fn acceptance() {
    let dir = tempfile::tempdir().unwrap();
    let checks: Vec<(&str, Outcome)> = vec![
        ("1 ideal table reproduction", ideal_table()),
        ("2 gate/pulse equivalence", gate_pulse_equivalence()),
        ("3 formula oracle", formula_oracle()),
        ("4 success ratio points", ratio_points()),
        ("5 enhanced protocol claims", enhanced_claims()),
        ("6 phase invariance", phase_invariance()),
        ("7 hybrid reduction", hybrid_reduction(dir.path())),
        ("8 small overlap robustness", small_overlap()),
        ("9 structural properties", structural(dir.path())),
    ];
    for (name, o) in &checks {
        println!(
            "{} criterion {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    let failed: Vec<&str> = checks.iter().filter(|(_, o)| !o.passed).map(|(n, _)| *n).collect();
    assert!(failed.is_empty(), "failed: {failed:?}");
}
