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
//! Probability comparisons, parameter sweeps, the benchmark dataset driver and the
//! randomized formula check.

pub mod closed_form;
mod table1;
mod verify;

pub use table1::{pulse_pipeline, reproduce_table1, table1_datasets, Dataset, Mode, PulseRun, Table1Row};
pub use verify::{verify_probability_formulas, verify_with_tamper, Tamper, VerifyFailure, VerifyReport};

use serde::Serialize;

use crate::error::{Error, Result};

/// Threshold on `|r_p - 1|` below which the two protocols tie.
pub const TIE_TOL: f64 = 1e-12;

/// Ratio of two-qubit to three-qubit success probabilities,
/// `(r_c + 1) / (2 (1 + b_sq (r_c - 1)))` with `r_c = c2/c1`.
pub fn success_ratio(r_c: f64, b_sq: f64) -> Result<f64> {
    check_rc(r_c)?;
    check_bsq(b_sq)?;
    Ok((r_c + 1.0) / (2.0 * (1.0 + b_sq * (r_c - 1.0))))
}

fn check_rc(r_c: f64) -> Result<()> {
    if !(r_c.is_finite() && r_c > 0.0) {
        return Err(Error::arg(format!("overlap ratio {r_c} must be positive")));
    }
    Ok(())
}

fn check_bsq(b_sq: f64) -> Result<()> {
    if !(b_sq > 0.0 && b_sq < 1.0) {
        return Err(Error::arg(format!("|b|^2 = {b_sq} is outside (0, 1)")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    r_c_values: Vec<f64>,
    b_sq_values: Vec<f64>,
}

impl SweepGrid {
    pub fn new(r_c_values: Vec<f64>, b_sq_values: Vec<f64>) -> Result<Self> {
        r_c_values.iter().try_for_each(|&r| check_rc(r))?;
        b_sq_values.iter().try_for_each(|&b| check_bsq(b))?;
        Ok(Self {
            r_c_values,
            b_sq_values,
        })
    }

    /// `steps` evenly spaced overlap ratios from `min` to `max` inclusive.
    pub fn linear(min: f64, max: f64, steps: usize, b_sq_values: Vec<f64>) -> Result<Self> {
        if steps == 0 || (steps == 1 && min != max) || min > max {
            return Err(Error::arg(format!("cannot place {steps} steps on [{min}, {max}]")));
        }
        let r_c = (0..steps)
            .map(|k| {
                if steps == 1 {
                    min
                } else {
                    min + (max - min) * k as f64 / (steps - 1) as f64
                }
            })
            .collect();
        Self::new(r_c, b_sq_values)
    }

    pub fn r_c_values(&self) -> &[f64] {
        &self.r_c_values
    }

    pub fn b_sq_values(&self) -> &[f64] {
        &self.b_sq_values
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    TwoQubitWins,
    Tie,
    ThreeQubitWins,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::TwoQubitWins => "two_qubit_wins",
            Regime::Tie => "tie",
            Regime::ThreeQubitWins => "three_qubit_wins",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub r_c: f64,
    pub b_sq: f64,
    pub r_p: f64,
    pub regime: Regime,
}

impl SweepRow {
    pub const HEADER: [&'static str; 4] = ["r_c", "b_sq", "r_p", "regime"];

    pub fn record(&self) -> Vec<String> {
        vec![
            format_number(self.r_c),
            format_number(self.b_sq),
            format_number(self.r_p),
            self.regime.label().to_string(),
        ]
    }
}

/// One row per `(b_sq, r_c)` pair: all overlap ratios for the first `b_sq`,
/// then the next.
pub fn sweep_rp(grid: &SweepGrid) -> Vec<SweepRow> {
    let mut rows = Vec::with_capacity(grid.r_c_values.len() * grid.b_sq_values.len());
    for &b_sq in &grid.b_sq_values {
        for &r_c in &grid.r_c_values {
            let r_p = success_ratio(r_c, b_sq).expect("grid values are validated");
            let regime = if (r_p - 1.0).abs() <= TIE_TOL {
                Regime::Tie
            } else if r_p > 1.0 {
                Regime::TwoQubitWins
            } else {
                Regime::ThreeQubitWins
            };
            rows.push(SweepRow { r_c, b_sq, r_p, regime });
        }
    }
    rows
}

/// Nine significant digits, plain notation for magnitudes in `[1e-6, 1e9)`
/// and scientific notation otherwise.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // round to nine digits first so the exponent reflects the printed value
    let sci = format!("{x:.8e}");
    let exponent: i32 = sci.split('e').nth(1).and_then(|e| e.parse().ok()).unwrap_or(0);
    if (-6..9).contains(&exponent) {
        let decimals = (8 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}
