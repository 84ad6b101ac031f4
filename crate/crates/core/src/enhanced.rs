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
//! Enhanced-probability superposition of two qubit states. Both outcomes of
//! the reference measurement, `|chi>` and `|chi_perp>`, are turned into a
//! superposition by an ancilla rotation conditioned on the reference qubit.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    overlap_decompose, phase_equivalent, re, tensor, Matrix, OverlapInfo, StateVector, C64, EPS_OVERLAP,
};
use crate::reference::controlled_swap_cascade;

/// Angular tolerance used by [`geometry_classify`].
pub const GEOMETRY_TOL: f64 = 1e-9;

/// Tolerance for treating the two harvested branches as one state.
pub const COHERENCE_TOL: f64 = 1e-9;

/// `(1/N)[[1/sqrt(x), 1/sqrt(y)], [1/sqrt(y), -1/sqrt(x)]]` with
/// `N = sqrt((x + y)/(x y))`.
pub fn u_chi(x: f64, y: f64) -> Result<Matrix> {
    for (label, c) in [("first overlap", x), ("second overlap", y)] {
        if !c.is_finite() || c > 1.0 + 1e-12 {
            return Err(Error::arg(format!("{label} {c} is not in (0, 1]")));
        }
        if c < EPS_OVERLAP {
            return Err(Error::ZeroOverlap {
                what: label.into(),
                magnitude: c.max(0.0).sqrt(),
            });
        }
    }
    // 1/(N sqrt(x)) = sqrt(y/(x+y)), which avoids dividing by small overlaps
    let s = x + y;
    let p = re((y / s).sqrt());
    let q = re((x / s).sqrt());
    Ok(Matrix::from_row_slice(2, 2, &[p, q, q, -p]))
}

/// Same operator built from the overlaps with `|chi_perp>`.
pub fn u_chi_perp(x_perp: f64, y_perp: f64) -> Result<Matrix> {
    u_chi(x_perp, y_perp)
}

/// `-conj(beta)|0> + conj(alpha)|1>` for `chi = alpha|0> + beta|1>`.
pub fn chi_perp(chi: &StateVector) -> Result<StateVector> {
    if chi.dims() != [2] {
        return Err(Error::arg(format!("chi must be a qubit, got dims {:?}", chi.dims())));
    }
    let (alpha, beta) = (chi.amps()[0], chi.amps()[1]);
    StateVector::new(vec![2], vec![-beta.conj(), alpha.conj()])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    /// Both inputs share one meridian relative to the `chi` axis.
    Longitudinal,
    /// Equal polar angles and azimuths half a turn apart.
    TransverseAntipodal,
    Generic,
}

struct PairOverlaps {
    along: [OverlapInfo; 2],
    across: [OverlapInfo; 2],
}

fn labelled(psi: &StateVector, basis: &StateVector, what: &str) -> Result<OverlapInfo> {
    overlap_decompose(psi, basis).map_err(|e| match e {
        Error::ZeroOverlap { magnitude, .. } => Error::ZeroOverlap {
            what: what.into(),
            magnitude,
        },
        other => other,
    })
}

fn pair_overlaps(psi1: &StateVector, psi2: &StateVector, chi: &StateVector) -> Result<PairOverlaps> {
    for (label, s) in [("psi1", psi1), ("psi2", psi2), ("chi", chi)] {
        if s.dims() != [2] {
            return Err(Error::arg(format!("{label} must be a qubit, got dims {:?}", s.dims())));
        }
        if !s.is_normalized() {
            return Err(Error::arg(format!("{label} is not normalized")));
        }
    }
    let perp = chi_perp(chi)?;
    Ok(PairOverlaps {
        along: [
            labelled(psi1, chi, "psi1 with chi")?,
            labelled(psi2, chi, "psi2 with chi")?,
        ],
        across: [
            labelled(psi1, &perp, "psi1 with chi_perp")?,
            labelled(psi2, &perp, "psi2 with chi_perp")?,
        ],
    })
}

fn angle_gap(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(TAU);
    d.min(TAU - d)
}

fn classify(o: &PairOverlaps) -> Geometry {
    let azimuth = |j: usize| (o.across[j].kappa / o.along[j].kappa).arg();
    let (az1, az2) = (azimuth(0), azimuth(1));
    if angle_gap(az1, az2) <= GEOMETRY_TOL {
        Geometry::Longitudinal
    } else if (o.along[0].c - o.along[1].c).abs() <= GEOMETRY_TOL && angle_gap(az1 + PI, az2) <= GEOMETRY_TOL {
        Geometry::TransverseAntipodal
    } else {
        Geometry::Generic
    }
}

/// Places the pair relative to the `chi` axis. Inputs without a defined
/// azimuth (an overlap below the zero-overlap threshold) are `Generic`.
pub fn geometry_classify(psi1: &StateVector, psi2: &StateVector, chi: &StateVector) -> Geometry {
    pair_overlaps(psi1, psi2, chi).map_or(Geometry::Generic, |o| classify(&o))
}

/// Overlaps and azimuths behind a [`Geometry`] classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometryReport {
    pub geometry: Geometry,
    /// Squared overlaps with `|chi>`.
    pub c: [f64; 2],
    /// Squared overlaps with `|chi_perp>`.
    pub c_perp: [f64; 2],
    /// Phase of `<chi_perp|psi>` relative to `<chi|psi>`, in `(-pi, pi]`.
    pub azimuth: [f64; 2],
}

pub fn geometry_report(psi1: &StateVector, psi2: &StateVector, chi: &StateVector) -> Result<GeometryReport> {
    let o = pair_overlaps(psi1, psi2, chi)?;
    let azimuth = |j: usize| (o.across[j].kappa / o.along[j].kappa).arg();
    Ok(GeometryReport {
        geometry: classify(&o),
        c: [o.along[0].c, o.along[1].c],
        c_perp: [o.across[0].c, o.across[1].c],
        azimuth: [azimuth(0), azimuth(1)],
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnhancedResult {
    /// Normalized system state from the `|chi>` branch.
    pub branch_chi: StateVector,
    /// Normalized system state from the `|chi_perp>` branch.
    pub branch_chi_perp: StateVector,
    pub p1: f64,
    pub p2: f64,
    pub p_total: f64,
    pub coherent: bool,
    pub geometry: Geometry,
    /// Ancilla outcome harvested on the `|chi_perp>` branch.
    pub perp_outcome: usize,
    /// Normalized system (x) reference state after projecting the ancilla
    /// on `|0>`.
    pub joint_state: StateVector,
}

/// Runs the enhanced protocol on qubit inputs with a qubit reference.
///
/// On the `|chi_perp>` branch the ancilla outcome `|0>` is harvested,
/// except for antipodal transverse pairs where outcome `|1>` carries the
/// same superposition as the `|chi>` branch.
pub fn run_enhanced(
    a: C64,
    b: C64,
    psi1: &StateVector,
    psi2: &StateVector,
    chi: &StateVector,
) -> Result<EnhancedResult> {
    let total = a.norm_sqr() + b.norm_sqr();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::arg(format!("|a|^2 + |b|^2 = {total}, expected 1")));
    }
    let o = pair_overlaps(psi1, psi2, chi)?;
    let geometry = classify(&o);
    let perp = chi_perp(chi)?;

    let ancilla = StateVector::new(vec![2], vec![a, b])?;
    let swapped = controlled_swap_cascade(&tensor(&tensor(&ancilla, psi1), psi2), 2, 2)?;
    let on_chi = swapped.contract(2, chi)?;
    let on_perp = swapped.contract(2, &perp)?;
    let rotated_chi = on_chi.apply_local(0, &u_chi(o.along[1].c, o.along[0].c)?)?;
    let rotated_perp = on_perp.apply_local(0, &u_chi_perp(o.across[1].c, o.across[0].c)?)?;

    let zero = StateVector::basis(vec![2], 0)?;
    let perp_outcome = usize::from(geometry == Geometry::TransverseAntipodal);
    let chi_branch = rotated_chi.contract(0, &zero)?;
    let perp_branch = rotated_perp.contract(0, &StateVector::basis(vec![2], perp_outcome)?)?;
    let (p1, p2) = (chi_branch.norm_sq(), perp_branch.norm_sq());

    let branch_chi = chi_branch.normalize()?;
    let branch_chi_perp = perp_branch.normalize()?;
    let coherent = phase_equivalent(&branch_chi, &branch_chi_perp, COHERENCE_TOL);
    let p_total = if coherent { p1 + p2 } else { p1 };

    let joint = tensor(&chi_branch, chi).add(&tensor(&rotated_perp.contract(0, &zero)?, &perp))?;
    Ok(EnhancedResult {
        branch_chi,
        branch_chi_perp,
        p1,
        p2,
        p_total,
        coherent,
        geometry,
        perp_outcome,
        joint_state: joint.normalize()?,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3, FRAC_PI_4};

    use super::*;
    use crate::linalg::{gates, make_qubit, QubitParams};
    use approx::assert_abs_diff_eq;

    fn q(theta: f64, phi: f64) -> StateVector {
        make_qubit(QubitParams::new(theta, phi, 0.0).unwrap())
    }

    fn real(x: f64, y: f64) -> StateVector {
        StateVector::new(vec![2], vec![re(x), re(y)]).unwrap()
    }

    fn close(m: &Matrix, rows: [[f64; 2]; 2], tol: f64) {
        for i in 0..2 {
            for j in 0..2 {
                assert!((m[(i, j)] - re(rows[i][j])).norm() < tol, "{m}");
            }
        }
    }

    #[test]
    fn u_chi_examples() {
        close(
            &u_chi(0.3, 0.3).unwrap(),
            [[FRAC_1_SQRT_2, FRAC_1_SQRT_2], [FRAC_1_SQRT_2, -FRAC_1_SQRT_2]],
            1e-15,
        );
        close(&u_chi(0.25, 0.75).unwrap(), [[0.866025, 0.5], [0.5, -0.866025]], 1e-6);
        close(
            &u_chi_perp(0.75, 0.25).unwrap(),
            [[0.5, 0.866025], [0.866025, -0.5]],
            1e-6,
        );
        assert!(matches!(u_chi(0.0, 0.5), Err(Error::ZeroOverlap { .. })));
        assert!(u_chi(1.5, 0.5).is_err());
        assert!(gates::unitarity_defect_max(&u_chi(0.01, 0.9).unwrap()) < 1e-12);
    }

    #[test]
    fn perp_is_orthogonal() {
        let chi = make_qubit(QubitParams::new(1.1, 2.3, 0.4).unwrap());
        let perp = chi_perp(&chi).unwrap();
        assert!(chi.inner(&perp).unwrap().norm() < 1e-15);
        assert!(phase_equivalent(
            &chi_perp(&real(1.0, 0.0)).unwrap(),
            &real(0.0, 1.0),
            1e-15
        ));
    }

    #[test]
    fn geometry_examples() {
        let zero = real(1.0, 0.0);
        let d5 = (q(2.0 * FRAC_PI_3, 0.0), q(FRAC_PI_3, 0.0));
        let d6 = (q(2.0 * FRAC_PI_3, FRAC_PI_4), q(FRAC_PI_3, 2.0 * FRAC_PI_3));
        let plus = real(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
        let minus = real(FRAC_1_SQRT_2, -FRAC_1_SQRT_2);
        assert_eq!(geometry_classify(&d5.0, &d5.1, &zero), Geometry::Longitudinal);
        assert_eq!(geometry_classify(&plus, &minus, &zero), Geometry::TransverseAntipodal);
        assert_eq!(geometry_classify(&d6.0, &d6.1, &zero), Geometry::Generic);
        assert_eq!(geometry_classify(&zero, &plus, &zero), Geometry::Generic);
        let report = geometry_report(&plus, &minus, &zero).unwrap();
        assert_eq!(report.geometry, Geometry::TransverseAntipodal);
        assert!((report.c[0] - 0.5).abs() < 1e-15 && (report.c_perp[1] - 0.5).abs() < 1e-15);
        assert!((report.azimuth[1].abs() - PI).abs() < 1e-15);
    }

    #[test]
    fn equatorial_antipodal_pair_reaches_one_half() {
        let h = re(FRAC_1_SQRT_2);
        let r = run_enhanced(
            h,
            h,
            &real(FRAC_1_SQRT_2, FRAC_1_SQRT_2),
            &real(FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
            &real(1.0, 0.0),
        )
        .unwrap();
        assert_abs_diff_eq!(r.p1, 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(r.p2, 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(r.p_total, 0.5, epsilon = 1e-12);
        assert!(r.coherent);
        assert_eq!(r.perp_outcome, 1);
        assert!(phase_equivalent(&r.branch_chi, &real(1.0, 0.0), 1e-12));
    }

    #[test]
    fn mirrored_overlaps_double_the_probability() {
        // c1 = 1/4 and c2 = 3/4 = 1 - c1, both real and on one meridian
        let (p1, p2) = (real(0.5, 0.75f64.sqrt()), real(0.75f64.sqrt(), 0.5));
        let (a, b) = (re(0.6), re(0.8));
        let r = run_enhanced(a, b, &p1, &p2, &real(1.0, 0.0)).unwrap();
        assert_eq!(r.geometry, Geometry::Longitudinal);
        let n_sq = p1.scale(a).add(&p2.scale(b)).unwrap().norm_sq();
        let p3 = n_sq * (0.25 * 0.75) / 1.0;
        assert_abs_diff_eq!(r.p1, p3, epsilon = 1e-12);
        assert_abs_diff_eq!(r.p_total, 2.0 * p3, epsilon = 1e-12);
    }

    #[test]
    fn generic_pair_reports_chi_branch_only() {
        let (p1, p2) = (q(2.0 * FRAC_PI_3, FRAC_PI_4), q(FRAC_PI_3, 2.0 * FRAC_PI_3));
        let r = run_enhanced(re(0.6), re(0.8), &p1, &p2, &real(1.0, 0.0)).unwrap();
        assert_eq!(r.geometry, Geometry::Generic);
        assert!(!r.coherent);
        assert_eq!(r.p_total, r.p1);
    }

    #[test]
    fn longitudinal_joint_state_factorizes() {
        let (p1, p2) = (q(2.0 * FRAC_PI_3, 0.0), q(FRAC_PI_3, 0.0));
        let r = run_enhanced(re(0.6), re(0.8), &p1, &p2, &real(1.0, 0.0)).unwrap();
        let rho = r.joint_state.to_density().unwrap().partial_trace(&[0]).unwrap();
        assert!(rho.purity() >= 1.0 - 1e-12);
    }

    #[test]
    fn zero_overlap_with_either_basis_state() {
        let (zero, one) = (real(1.0, 0.0), real(0.0, 1.0));
        let plus = real(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
        let h = re(FRAC_1_SQRT_2);
        for (p1, p2) in [(&one, &plus), (&zero, &plus)] {
            let err = run_enhanced(h, h, p1, p2, &zero).unwrap_err();
            assert_eq!(err.kind(), "zero_overlap");
        }
        assert!(run_enhanced(re(1.0), re(1.0), &plus, &plus, &zero).is_err());
    }
}
