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
//! Closed-form success probabilities written directly against amplitude
//! slices, independent of the protocol simulators.

use crate::linalg::C64;

/// `<u|v>`.
fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(x, y)| x.conj() * y).sum()
}

fn norm_sq(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

fn unit_phase(z: C64) -> C64 {
    z / z.norm()
}

/// Squared overlap and unit phase of `<chi|psi>`, with `c` shifted by `bias`.
fn overlap(psi: &[C64], chi: &[C64], bias: f64) -> (f64, C64) {
    let ov = inner(chi, psi);
    (ov.norm_sqr() + bias, unit_phase(ov))
}

/// `|| a k2 psi1 + b k1 psi2 ||^2` for unit phases `k1`, `k2`.
fn phased_norm_sq(a: C64, b: C64, psi1: &[C64], psi2: &[C64], k1: C64, k2: C64) -> f64 {
    let v: Vec<C64> = psi1.iter().zip(psi2).map(|(x, y)| a * k2 * x + b * k1 * y).collect();
    norm_sq(&v)
}

/// Overlap-sensitive hooks used to check that the harness detects errors.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Bias {
    /// Added to the first input's squared overlap with the reference.
    pub c1: f64,
}

/// Two-qubit reduced protocol: `c1 c2 N^2 / (2 (c1 |a|^2 + c2 |b|^2))`.
pub fn two_qubit(a: C64, b: C64, psi1: &[C64], psi2: &[C64], chi: &[C64], bias: Bias) -> f64 {
    let (c1, k1) = overlap(psi1, chi, bias.c1);
    let (c2, k2) = overlap(psi2, chi, 0.0);
    c1 * c2 * phased_norm_sq(a, b, psi1, psi2, k1, k2) / (2.0 * (c1 * a.norm_sqr() + c2 * b.norm_sqr()))
}

/// Three-qubit protocol: `c1 c2 N^2 / (c1 + c2)`.
pub fn three_qubit(a: C64, b: C64, psi1: &[C64], psi2: &[C64], chi: &[C64], bias: Bias) -> f64 {
    let (c1, k1) = overlap(psi1, chi, bias.c1);
    let (c2, k2) = overlap(psi2, chi, 0.0);
    c1 * c2 * phased_norm_sq(a, b, psi1, psi2, k1, k2) / (c1 + c2)
}

/// Qudit protocol with a qunit ancilla:
/// `(prod c / sum |a_k|^2 c_k) || sum_k a_k (prod_{j != k} kappa_j) Psi_k ||^2 / n`.
pub fn hybrid(weights: &[C64], states: &[Vec<C64>], chi: &[C64], bias: Bias) -> f64 {
    let n = weights.len();
    let info: Vec<(f64, C64)> = states
        .iter()
        .enumerate()
        .map(|(k, s)| overlap(s, chi, if k == 0 { bias.c1 } else { 0.0 }))
        .collect();
    let product: f64 = info.iter().map(|(c, _)| c).product();
    let weighted: f64 = weights.iter().zip(&info).map(|(w, (c, _))| w.norm_sqr() * c).sum();
    let d = chi.len();
    let mut sum = vec![C64::new(0.0, 0.0); d];
    for k in 0..n {
        let phase: C64 = (0..n).filter(|&j| j != k).map(|j| info[j].1).product();
        for (acc, x) in sum.iter_mut().zip(&states[k]) {
            *acc += weights[k] * phase * x;
        }
    }
    product / weighted * norm_sq(&sum) / n as f64
}

/// `-conj(beta)|0> + conj(alpha)|1>`.
pub fn orthogonal_reference(chi: &[C64]) -> [C64; 2] {
    [-chi[1].conj(), chi[0].conj()]
}

/// Branch probabilities of the enhanced protocol with ancilla outcome `|0>`
/// on both branches: `N_i^2 x1 x2 / (x1 + x2)`, where `x` are the overlaps
/// with `chi` (first) or its orthogonal complement (second).
pub fn enhanced(a: C64, b: C64, psi1: &[C64], psi2: &[C64], chi: &[C64], bias: Bias) -> (f64, f64) {
    let branch = |basis: &[C64], shift: f64| {
        let (x1, k1) = overlap(psi1, basis, shift);
        let (x2, k2) = overlap(psi2, basis, 0.0);
        phased_norm_sq(a, b, psi1, psi2, k1, k2) * x1 * x2 / (x1 + x2)
    };
    (branch(chi, bias.c1), branch(&orthogonal_reference(chi), -bias.c1))
}

/// Total probability for a pair on one meridian about the reference axis:
/// `N^2 (c1 c2/(c1 + c2) + c1' c2'/(c1' + c2'))` with `c' = 1 - c`.
pub fn enhanced_longitudinal(a: C64, b: C64, psi1: &[C64], psi2: &[C64], chi: &[C64], bias: Bias) -> f64 {
    let (c1, k1) = overlap(psi1, chi, bias.c1);
    let (c2, k2) = overlap(psi2, chi, 0.0);
    let (p1, p2) = (1.0 - c1, 1.0 - c2);
    phased_norm_sq(a, b, psi1, psi2, k1, k2) * (c1 * c2 / (c1 + c2) + p1 * p2 / (p1 + p2))
}

/// Total probability for an antipodal transverse pair: `N^2 (c/2 + c'/2)`.
pub fn enhanced_antipodal(a: C64, b: C64, psi1: &[C64], psi2: &[C64], chi: &[C64], bias: Bias) -> f64 {
    let (c, k1) = overlap(psi1, chi, bias.c1);
    let (_, k2) = overlap(psi2, chi, 0.0);
    phased_norm_sq(a, b, psi1, psi2, k1, k2) * (c / 2.0 + (1.0 - c) / 2.0)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_1_SQRT_2;

    use super::*;
    use approx::assert_abs_diff_eq;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn identical_inputs() {
        let zero = [r(1.0), r(0.0)];
        let (a, b) = (r(0.6), r(0.8));
        let none = Bias::default();
        assert_abs_diff_eq!(
            three_qubit(a, b, &zero, &zero, &zero, none),
            0.5 * (1.0 + 0.96),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            two_qubit(a, b, &zero, &zero, &zero, none),
            0.5 * (1.0 + 0.96),
            epsilon = 1e-15
        );
        let h = r(FRAC_1_SQRT_2);
        assert_abs_diff_eq!(
            hybrid(&[h, h], &[zero.to_vec(), zero.to_vec()], &zero, none),
            1.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn equatorial_pair() {
        let h = r(FRAC_1_SQRT_2);
        let (plus, minus, zero) = ([h, h], [h, -h], [r(1.0), r(0.0)]);
        let (p1, p2) = enhanced(h, h, &plus, &minus, &zero, Bias::default());
        assert_abs_diff_eq!(p1, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(p2, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(
            enhanced_antipodal(h, h, &plus, &minus, &zero, Bias::default()),
            0.5,
            epsilon = 1e-15
        );
    }

    #[test]
    fn bias_moves_the_value() {
        let zero = [r(1.0), r(0.0)];
        let psi = [r(0.6), r(0.8)];
        let clean = three_qubit(r(0.6), r(0.8), &psi, &zero, &zero, Bias::default());
        let biased = three_qubit(r(0.6), r(0.8), &psi, &zero, &zero, Bias { c1: 1e-3 });
        assert!((clean - biased).abs() > 1e-6);
    }
}
