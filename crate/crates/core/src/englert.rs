//! Which-way detector (WWD) quantities.
//!
//! A detector in state `ρ` is coupled to arm `k` by a unitary `U_k`. Its two
//! conditional states are `ρ^k = U_k† ρ U_k`; how well they can be told apart
//! (trace distance) is the path distinguishability, and the overlap
//! `|Tr(U_0† ρ U_1)|` is the surviving fringe visibility. Together they obey
//! `V² + D² ≤ 1`, with equality for a pure detector.

use crate::error::{Error, Result};
use crate::linalg::{inner, Complex, Mat2};

const OPERATOR_TOL: f64 = 1e-12;

/// A 2×2 density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2(Mat2);

impl DensityMatrix2 {
    pub fn new(m: Mat2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite("density matrix"));
        }
        let herm = m.hermiticity_error();
        if herm > OPERATOR_TOL {
            return Err(Error::Operator(format!(
                "density matrix is not Hermitian (error {herm:e})"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > OPERATOR_TOL || tr.im.abs() > OPERATOR_TOL {
            return Err(Error::Operator(format!(
                "density matrix trace is {tr}, expected 1"
            )));
        }
        let [lo, _] = m.hermitian_eigenvalues();
        if lo < -OPERATOR_TOL {
            return Err(Error::Operator(format!(
                "density matrix has negative eigenvalue {lo:e}"
            )));
        }
        Ok(DensityMatrix2(m))
    }

    /// `|v⟩⟨v|` for a unit vector.
    pub fn pure(v: [Complex; 2]) -> Result<Self> {
        Self::new(Mat2::outer(v))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    /// Eigenvalues, ascending, with float noise below zero clipped.
    pub fn eigenvalues(&self) -> [f64; 2] {
        self.0.hermitian_eigenvalues().map(|x| x.max(0.0))
    }

    pub fn purity(&self) -> f64 {
        self.0.mul(&self.0).trace().re
    }

    /// `U† ρ U`
    pub fn conjugate_by(&self, u: &Unitary2) -> Result<Self> {
        let m = u.0.adjoint().mul(&self.0).mul(&u.0);
        Self::new(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2(Mat2);

impl Unitary2 {
    pub fn new(m: Mat2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite("unitary"));
        }
        let err = m.adjoint().mul(&m).max_abs_diff(&Mat2::identity());
        if err > OPERATOR_TOL {
            return Err(Error::Operator(format!(
                "matrix is not unitary (‖U†U − I‖ = {err:e})"
            )));
        }
        Ok(Unitary2(m))
    }

    pub fn identity() -> Self {
        Unitary2(Mat2::identity())
    }

    pub fn pauli_x() -> Self {
        Unitary2(Mat2::from_real([[0.0, 1.0], [1.0, 0.0]]))
    }

    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Unitary2(Mat2::from_real([[h, h], [h, -h]]))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }
}

/// Half the trace norm of `rho0 − rho1`.
pub fn trace_distance(rho0: &DensityMatrix2, rho1: &DensityMatrix2) -> f64 {
    let [l0, l1] = rho0.0.sub(&rho1.0).hermitian_eigenvalues();
    (0.5 * (l0.abs() + l1.abs())).min(1.0)
}

/// Closed form `√(1 − |⟨a|b⟩|²)` for unit vectors.
pub fn pure_trace_distance(a: [Complex; 2], b: [Complex; 2]) -> f64 {
    (1.0 - inner(&a, &b).norm_sqr()).max(0.0).sqrt()
}

/// `|Tr(U_0† ρ U_1)|`
pub fn englert_visibility(u0: &Unitary2, u1: &Unitary2, rho_i: &DensityMatrix2) -> f64 {
    u0.0.adjoint()
        .mul(&rho_i.0)
        .mul(&u1.0)
        .trace()
        .norm()
        .min(1.0)
}

/// Visibility and distinguishability of one detector configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityPair {
    pub visibility: f64,
    pub distinguishability: f64,
}

impl DualityPair {
    /// `V² + D²`
    pub fn sum_of_squares(&self) -> f64 {
        self.visibility.powi(2) + self.distinguishability.powi(2)
    }
}

/// `V` from [`englert_visibility`] and `D` as the trace distance between the
/// detector states `U_0† ρ U_0` and `U_1† ρ U_1`.
pub fn wwd_duality_pair(
    u0: &Unitary2,
    u1: &Unitary2,
    rho_i: &DensityMatrix2,
) -> Result<DualityPair> {
    let visibility = englert_visibility(u0, u1, rho_i);
    let rho0 = rho_i.conjugate_by(u0)?;
    let rho1 = rho_i.conjugate_by(u1)?;
    Ok(DualityPair {
        visibility,
        distinguishability: trace_distance(&rho0, &rho1),
    })
}
