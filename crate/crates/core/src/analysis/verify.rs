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
//! Randomized comparison of simulated success probabilities against the
//! closed forms.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::closed_form::{self, Bias};
use crate::enhanced::{chi_perp, run_enhanced, Geometry};
use crate::error::{Error, Result};
use crate::hybrid::run_hybrid;
use crate::linalg::{cis, StateVector, C64};
use crate::reference::{run_three_qubit, run_two_qubit_reduced, ReferenceSpec};

/// Allowed absolute gap between simulation and closed form.
pub const TOLERANCE: f64 = 1e-9;

/// Inputs are redrawn until every squared overlap is at least this large.
const MIN_OVERLAP: f64 = 1e-4;

const MAX_LISTED_FAILURES: usize = 20;

/// Deliberate error injected into the closed forms.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Tamper {
    /// Added to the first input's squared overlap.
    pub c1_bias: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyFailure {
    pub trial: usize,
    pub check: String,
    pub simulated: f64,
    pub closed_form: f64,
    pub deviation: f64,
    pub spec: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub checks: usize,
    /// Largest deviation seen per check.
    pub max_deviation: BTreeMap<String, f64>,
    pub failure_count: usize,
    /// The first failures, in trial order.
    pub failures: Vec<VerifyFailure>,
    pub passed: bool,
}

struct Recorder {
    trial: usize,
    checks: usize,
    max_deviation: BTreeMap<String, f64>,
    failure_count: usize,
    failures: Vec<VerifyFailure>,
}

impl Recorder {
    fn check(&mut self, name: &str, simulated: f64, closed_form: f64, spec: impl FnOnce() -> Value) {
        let deviation = (simulated - closed_form).abs();
        self.checks += 1;
        let slot = self.max_deviation.entry(name.to_string()).or_insert(0.0);
        // NaN must register as a failure rather than vanish in max()
        if deviation > *slot || deviation.is_nan() {
            *slot = deviation;
        }
        if deviation.is_nan() || deviation > TOLERANCE {
            self.failure_count += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(VerifyFailure {
                    trial: self.trial,
                    check: name.to_string(),
                    simulated,
                    closed_form,
                    deviation,
                    spec: spec(),
                });
            }
        }
    }

    fn flag(&mut self, name: &str, ok: bool, spec: impl FnOnce() -> Value) {
        self.check(name, if ok { 0.0 } else { 1.0 }, 0.0, spec);
    }
}

fn random_state<R: Rng>(rng: &mut R, d: usize) -> StateVector {
    loop {
        // uniform box samples, normalized; rejection keeps the norm away from 0
        let amps: Vec<C64> = (0..d)
            .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        if let Ok(s) = StateVector::new(vec![d], amps).and_then(|s| s.normalize()) {
            if s.norm_sq() > 0.0 {
                return s;
            }
        }
    }
}

fn random_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<C64> {
    let raw: Vec<C64> = (0..n)
        .map(|_| cis(rng.random_range(0.0..TAU)) * rng.random_range(0.1..1.0))
        .collect();
    let norm = raw.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
    raw.iter().map(|w| w / norm).collect()
}

fn overlap_sq(psi: &StateVector, chi: &StateVector) -> f64 {
    chi.inner(psi).map(|z| z.norm_sqr()).unwrap_or(0.0)
}

fn well_separated(states: &[&StateVector], bases: &[&StateVector]) -> bool {
    states
        .iter()
        .all(|s| bases.iter().all(|b| overlap_sq(s, b) >= MIN_OVERLAP))
}

/// `e^{i gamma}(cos(t/2)|chi> + e^{i phi} sin(t/2)|chi_perp>)`.
fn about_axis(chi: &StateVector, perp: &StateVector, t: f64, phi: f64, gamma: f64) -> StateVector {
    chi.scale(C64::new((t / 2.0).cos(), 0.0))
        .add(&perp.scale(cis(phi) * (t / 2.0).sin()))
        .expect("qubit states")
        .scale(cis(gamma))
}

fn pair_json(a: C64, b: C64, psi1: &StateVector, psi2: &StateVector, chi: &StateVector) -> Value {
    json!({ "a": [a.re, a.im], "b": [b.re, b.im], "psi1": psi1, "psi2": psi2, "chi": chi })
}

fn amps(s: &StateVector) -> Vec<C64> {
    s.amps().iter().copied().collect()
}

/// Runs `trials` random instances, seeded deterministically.
pub fn verify_probability_formulas(trials: usize, seed: u64) -> Result<VerifyReport> {
    verify_with_tamper(trials, seed, Tamper::default())
}

/// As [`verify_probability_formulas`], with an error injected into the closed
/// forms.
pub fn verify_with_tamper(trials: usize, seed: u64, tamper: Tamper) -> Result<VerifyReport> {
    if trials == 0 {
        return Err(Error::arg("at least one trial is required"));
    }
    let bias = Bias { c1: tamper.c1_bias };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rec = Recorder {
        trial: 0,
        checks: 0,
        max_deviation: BTreeMap::new(),
        failure_count: 0,
        failures: Vec::new(),
    };
    for trial in 0..trials {
        rec.trial = trial;
        pair_checks(&mut rng, &mut rec, bias)?;
        hybrid_checks(&mut rng, &mut rec, bias)?;
        geometry_checks(&mut rng, &mut rec, bias)?;
    }
    Ok(VerifyReport {
        trials,
        seed,
        tolerance: TOLERANCE,
        checks: rec.checks,
        max_deviation: rec.max_deviation,
        failure_count: rec.failure_count,
        passed: rec.failure_count == 0,
        failures: rec.failures,
    })
}

fn pair_checks<R: Rng>(rng: &mut R, rec: &mut Recorder, bias: Bias) -> Result<()> {
    let (psi1, psi2, chi) = loop {
        let (p1, p2, chi) = (random_state(rng, 2), random_state(rng, 2), random_state(rng, 2));
        let perp = chi_perp(&chi)?;
        if well_separated(&[&p1, &p2], &[&chi, &perp]) {
            break (p1, p2, chi);
        }
    };
    let w = random_weights(rng, 2);
    let (a, b) = (w[0], w[1]);
    let (v1, v2, vc) = (amps(&psi1), amps(&psi2), amps(&chi));
    let spec = || pair_json(a, b, &psi1, &psi2, &chi);

    let reduced = run_two_qubit_reduced(a, b, &psi1, &psi2, &chi)?;
    rec.check(
        "two_qubit",
        reduced.success_prob,
        closed_form::two_qubit(a, b, &v1, &v2, &vc, bias),
        spec,
    );
    let three = run_three_qubit(a, b, &psi1, &psi2, &chi)?;
    rec.check(
        "three_qubit",
        three.success_prob,
        closed_form::three_qubit(a, b, &v1, &v2, &vc, bias),
        spec,
    );

    let enhanced = run_enhanced(a, b, &psi1, &psi2, &chi)?;
    if enhanced.geometry != Geometry::TransverseAntipodal {
        let (p1, p2) = closed_form::enhanced(a, b, &v1, &v2, &vc, bias);
        rec.check("enhanced_chi_branch", enhanced.p1, p1, spec);
        rec.check("enhanced_chi_perp_branch", enhanced.p2, p2, spec);
    }
    Ok(())
}

fn hybrid_checks<R: Rng>(rng: &mut R, rec: &mut Recorder, bias: Bias) -> Result<()> {
    for (n, d) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let chi = random_state(rng, d);
        let states: Vec<StateVector> = (0..n)
            .map(|_| loop {
                let s = random_state(rng, d);
                if overlap_sq(&s, &chi) >= MIN_OVERLAP {
                    break s;
                }
            })
            .collect();
        let weights = random_weights(rng, n);
        let spec = ReferenceSpec::new(weights.clone(), states.clone(), chi.clone())?;
        let sim = run_hybrid(&spec)?.success_prob;
        let raw: Vec<Vec<C64>> = states.iter().map(amps).collect();
        let closed = closed_form::hybrid(&weights, &raw, &amps(&chi), bias);
        rec.check(&format!("hybrid_n{n}_d{d}"), sim, closed, || {
            let w: Vec<[f64; 2]> = weights.iter().map(|z| [z.re, z.im]).collect();
            json!({ "weights": w, "states": states, "chi": chi })
        });
    }
    Ok(())
}

fn geometry_checks<R: Rng>(rng: &mut R, rec: &mut Recorder, bias: Bias) -> Result<()> {
    let chi = random_state(rng, 2);
    let perp = chi_perp(&chi)?;
    let w = random_weights(rng, 2);
    let (a, b) = (w[0], w[1]);
    // polar angles kept off the poles so both overlaps stay nonzero
    let mut polar = || rng.random_range(0.05..(PI - 0.05));
    let (t1, t2, t) = (polar(), polar(), polar());
    let phi = rng.random_range(0.0..TAU);
    let (g1, g2) = (rng.random_range(0.0..TAU), rng.random_range(0.0..TAU));

    let cases = [
        (
            "longitudinal",
            Geometry::Longitudinal,
            about_axis(&chi, &perp, t1, phi, g1),
            about_axis(&chi, &perp, t2, phi, g2),
        ),
        (
            "antipodal",
            Geometry::TransverseAntipodal,
            about_axis(&chi, &perp, t, phi, g1),
            about_axis(&chi, &perp, t, phi + PI, g2),
        ),
    ];
    for (label, expected, psi1, psi2) in cases {
        let r = run_enhanced(a, b, &psi1, &psi2, &chi)?;
        let spec = || pair_json(a, b, &psi1, &psi2, &chi);
        rec.flag(
            &format!("enhanced_{label}_geometry"),
            r.geometry == expected && r.coherent,
            spec,
        );
        let (v1, v2, vc) = (amps(&psi1), amps(&psi2), amps(&chi));
        let closed = if expected == Geometry::Longitudinal {
            closed_form::enhanced_longitudinal(a, b, &v1, &v2, &vc, bias)
        } else {
            closed_form::enhanced_antipodal(a, b, &v1, &v2, &vc, bias)
        };
        rec.check(&format!("enhanced_{label}_total"), r.p_total, closed, spec);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_run_passes() {
        let report = verify_probability_formulas(25, 7).unwrap();
        assert!(report.passed, "{:#?}", report.failures);
        assert_eq!(report.max_deviation.len(), 12);
        assert!(report.max_deviation.values().all(|&d| d < TOLERANCE));
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = verify_probability_formulas(5, 3).unwrap();
        let b = verify_probability_formulas(5, 3).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn tampering_is_detected() {
        let report = verify_with_tamper(5, 0, Tamper { c1_bias: 1e-3 }).unwrap();
        assert!(!report.passed);
        assert!(report.failure_count > 0);
        let first = &report.failures[0];
        assert!(first.deviation > TOLERANCE);
        assert!(first.spec.get("chi").is_some());
    }

    #[test]
    fn zero_trials_rejected() {
        assert_eq!(verify_probability_formulas(0, 0).unwrap_err().kind(), "argument");
    }
}
