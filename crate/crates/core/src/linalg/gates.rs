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
//! Common single-qubit operators and matrix helpers.

use std::f64::consts::FRAC_1_SQRT_2;

use super::{cis, re, Matrix, C64};

pub fn identity(n: usize) -> Matrix {
    Matrix::identity(n, n)
}

pub fn hadamard() -> Matrix {
    Matrix::from_row_slice(
        2,
        2,
        &[
            re(FRAC_1_SQRT_2),
            re(FRAC_1_SQRT_2),
            re(FRAC_1_SQRT_2),
            re(-FRAC_1_SQRT_2),
        ],
    )
}

pub fn pauli_x() -> Matrix {
    Matrix::from_row_slice(2, 2, &[re(0.0), re(1.0), re(1.0), re(0.0)])
}

pub fn pauli_y() -> Matrix {
    let i = C64::i();
    Matrix::from_row_slice(2, 2, &[re(0.0), -i, i, re(0.0)])
}

pub fn pauli_z() -> Matrix {
    Matrix::from_diagonal(&nalgebra::DVector::from_vec(vec![re(1.0), re(-1.0)]))
}

/// `exp(-i angle (cos(phase) X + sin(phase) Y) / 2)`: rotation about an axis
/// in the xy-plane at `phase` from +x.
pub fn rotation_xy(angle: f64, phase: f64) -> Matrix {
    let (s, c) = (angle / 2.0).sin_cos();
    let mi = -C64::i();
    Matrix::from_row_slice(2, 2, &[re(c), mi * s * cis(-phase), mi * s * cis(phase), re(c)])
}

/// `exp(-i angle Z / 2)`.
pub fn rz(angle: f64) -> Matrix {
    Matrix::from_diagonal(&nalgebra::DVector::from_vec(vec![cis(-angle / 2.0), cis(angle / 2.0)]))
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    a.kronecker(b)
}

/// Lifts a local operator on subsystem `sub` to the full space over `dims`.
pub fn embed(op: &Matrix, sub: usize, dims: &[usize]) -> Matrix {
    dims.iter().enumerate().fold(identity(1), |acc, (k, &d)| {
        if k == sub {
            kron(&acc, op)
        } else {
            kron(&acc, &identity(d))
        }
    })
}

/// Frobenius distance of `U^dagger U` from the identity.
pub fn unitarity_defect(u: &Matrix) -> f64 {
    (u.adjoint() * u - identity(u.ncols())).norm()
}

/// Largest entrywise deviation of `U^dagger U` from the identity.
pub fn unitarity_defect_max(u: &Matrix) -> f64 {
    (u.adjoint() * u - identity(u.ncols()))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// True when `a = e^{i alpha} b` for some alpha, to Frobenius tolerance `tol`.
pub fn equal_up_to_phase(a: &Matrix, b: &Matrix, tol: f64) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    let ov: C64 = b.adjoint().component_mul(&a.transpose()).sum();
    if ov.norm() == 0.0 {
        return a.norm() <= tol && b.norm() <= tol;
    }
    let phase = ov / ov.norm();
    (a - b.map(|z| z * phase)).norm() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn pi_about_x_flips() {
        let r = rotation_xy(PI, 0.0);
        assert!(equal_up_to_phase(&r, &pauli_x(), 1e-15));
    }

    #[test]
    fn half_turns_compose() {
        for phase in [0.0, 0.3, PI / 2.0, 4.0] {
            let half = rotation_xy(PI / 2.0, phase);
            assert!((&half * &half - rotation_xy(PI, phase)).norm() < 1e-15);
        }
    }

    #[test]
    fn embed_matches_kron() {
        let x = pauli_x();
        let e = embed(&x, 1, &[3, 2]);
        assert!((e - kron(&identity(3), &x)).norm() == 0.0);
    }

    #[test]
    fn hadamard_squares_to_identity() {
        let h = hadamard();
        assert!((&h * &h - identity(2)).norm() < 1e-15);
        assert!(unitarity_defect(&rotation_xy(1.234, 2.1)) < 1e-15);
        assert!(unitarity_defect(&rz(0.7)) < 1e-15);
    }

    #[test]
    fn y_axis_rotation_is_exponential_of_pauli_y() {
        // exp(-i a Y / 2) = cos(a/2) I - i sin(a/2) Y
        let a: f64 = 0.9;
        let expect = identity(2).map(|z| z * (a / 2.0).cos()) - pauli_y().map(|z| z * C64::i() * (a / 2.0).sin());
        assert!((rotation_xy(a, PI / 2.0) - expect).norm() < 1e-15);
    }
}
