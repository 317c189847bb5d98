//! Fidelity and Bures distance between quanton states.
//!
//! Two quantons `|ψ⟩ = build(p, {φ0, φ0⊥})` and `|ψ̄⟩ = build(p̄, {φ̄0, φ̄0⊥})`
//! are related through the overlap matrix of their polarization bases. With the
//! diagonal fixed to `⟨φ̄0|φ0⟩ = γ` and `⟨φ̄0⊥|φ0⊥⟩ = γe^{−iξ}`, unitarity leaves
//! one free phase `μ` in the off-diagonal:
//!
//! ```text
//! ⟨φ̄0|φ0⊥⟩ = √(1−γ²) e^{−iμ}        ⟨φ̄0⊥|φ0⟩ = −√(1−γ²) e^{i(μ−ξ)}
//! ```
//!
//! which gives
//!
//! ```text
//! ⟨ψ̄|ψ⟩ = [ γ(1+D)(1+D̄) + γVV̄ e^{iλ1} + γCC̄ e^{iλ2}
//!          + √(1−γ²) (CV̄ e^{i(λ3+ξ−μ)} − VC̄ e^{i(λ4+μ−ξ)}) ] / (2√((1+D)(1+D̄)))
//! ```
//!
//! When `|ψ⟩` is a particle (`D = 1`) only the first term survives and the
//! Bures distance `√2·√(1 − |⟨ψ̄|ψ⟩|)` depends on `γ` and `D̄` alone.

use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};
use crate::linalg::{cis, inner, wrap_phase, Complex, Mat2};
use crate::quanton::{self, build_state, PolarizationBasis, QuantonParams, StateVector4, TOL_NORM};

// γ or √(1−γ²) below this leaves the corresponding phase undefined.
const EDGE: f64 = 1e-12;

/// `(γ, ξ, μ)` relating a second polarization basis to a first one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OverlapParams {
    pub gamma: f64,
    pub xi: f64,
    pub mu: f64,
}

impl OverlapParams {
    pub fn new(gamma: f64, xi: f64, mu: f64) -> Result<Self> {
        let ov = OverlapParams { gamma, xi, mu };
        ov.validate()?;
        Ok(ov)
    }

    pub fn validate(&self) -> Result<()> {
        check_range("gamma", self.gamma, 0.0, 1.0)?;
        if !self.xi.is_finite() {
            return Err(Error::NonFinite("xi"));
        }
        if !self.mu.is_finite() {
            return Err(Error::NonFinite("mu"));
        }
        Ok(())
    }

    fn sin_part(&self) -> f64 {
        (1.0 - self.gamma * self.gamma).max(0.0).sqrt()
    }
}

/// Phase combinations of the closed-form overlap, each in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedPhases {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub lambda4: f64,
}

impl DerivedPhases {
    /// `p` is the unbarred state, `pbar` the barred one.
    pub fn new(p: &QuantonParams, pbar: &QuantonParams, ov: &OverlapParams) -> Self {
        let l1 = p.alpha - pbar.alpha;
        DerivedPhases {
            lambda1: wrap_phase(l1),
            lambda2: wrap_phase(l1 + p.beta - pbar.beta - ov.xi),
            lambda3: wrap_phase(l1 + p.beta - ov.xi),
            lambda4: wrap_phase(l1 - pbar.beta),
        }
    }
}

/// The particle closest to a given state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleWitness {
    /// Arm the particle sits on, in the input's labeling (0 unless path 1 dominates).
    pub path: usize,
    pub polarization: [Complex; 2],
    pub distance: f64,
}

impl ParticleWitness {
    pub fn state(&self) -> Result<StateVector4> {
        StateVector4::particle(self.path, self.polarization)
    }
}

/// `|⟨s1|s2⟩|` from the four amplitudes.
pub fn overlap_bruteforce(s1: &StateVector4, s2: &StateVector4) -> Result<f64> {
    s1.check_norm(TOL_NORM)?;
    s2.check_norm(TOL_NORM)?;
    Ok(s1.inner(s2).norm().min(1.0))
}

/// `√2·√(1 − F)` for an overlap magnitude `F`.
pub fn bures_from_overlap(overlap: f64) -> f64 {
    std::f64::consts::SQRT_2 * (1.0 - overlap).max(0.0).sqrt()
}

pub fn bures_distance(s1: &StateVector4, s2: &StateVector4) -> Result<f64> {
    Ok(bures_from_overlap(overlap_bruteforce(s1, s2)?))
}

/// Bases realizing `ov`: `{(1,0), (0,1)}` for the first state and
/// `φ̄0 = (γ, √(1−γ²)e^{iμ})`, `φ̄0⊥ = e^{iξ}(−√(1−γ²)e^{−iμ}, γ)` for the second.
pub fn realize_bases(ov: &OverlapParams) -> Result<(PolarizationBasis, PolarizationBasis)> {
    ov.validate()?;
    let g = Complex::new(ov.gamma, 0.0);
    let s = ov.sin_part();
    let phibar0 = [g, cis(ov.mu) * s];
    let phibar0perp = [cis(ov.xi - ov.mu) * (-s), cis(ov.xi) * ov.gamma];
    Ok((
        PolarizationBasis::standard(),
        PolarizationBasis::new(phibar0, phibar0perp)?,
    ))
}

/// Builds `(|ψ⟩, |ψ̄⟩)` from `p1`, `p2` on the bases of [`realize_bases`].
pub fn realize_pair(
    p1: &QuantonParams,
    p2: &QuantonParams,
    ov: &OverlapParams,
) -> Result<(StateVector4, StateVector4)> {
    let (b1, b2) = realize_bases(ov)?;
    Ok((build_state(p1, &b1)?, build_state(p2, &b2)?))
}

/// Recovers `(γ, ξ, μ)` of `b2` (barred) relative to `b1`.
///
/// With `M_ij = ⟨b2_i|b1_j⟩` rephased so that `M_00 = γ ≥ 0`, `e^{−iξ}` is its
/// determinant (equivalently `M_11 / M_00`) and `μ = −arg M_01`. `μ` is returned
/// as 0 when `γ = 1`; when `γ = 0` there is no phase reference and `M` is used as is.
pub fn relative_overlap_params(
    b1: &PolarizationBasis,
    b2: &PolarizationBasis,
) -> Result<OverlapParams> {
    b1.validate()?;
    b2.validate()?;
    let m = basis_overlap_matrix(b1, b2);
    let gamma = m.get(0, 0).norm().min(1.0);
    let kappa = if gamma > EDGE { m.get(0, 0).arg() } else { 0.0 };
    let xi = wrap_phase(2.0 * kappa - m.det().arg());
    let s = (1.0 - gamma * gamma).max(0.0).sqrt();
    let mu = if s > EDGE {
        wrap_phase(-(m.get(0, 1) * cis(-kappa)).arg())
    } else {
        0.0
    };
    Ok(OverlapParams { gamma, xi, mu })
}

/// `|⟨ψ̄|ψ⟩|` from parameters only; `p1` is `ψ`, `p2` is `ψ̄`.
pub fn overlap_closed_form(
    p1: &QuantonParams,
    p2: &QuantonParams,
    ov: &OverlapParams,
) -> Result<f64> {
    p1.validate(quanton::TOL_TRIALITY)?;
    p2.validate(quanton::TOL_TRIALITY)?;
    ov.validate()?;

    if p1.is_particle() {
        return Ok(ov.gamma * ((1.0 + p2.d) / 2.0).sqrt());
    }
    if p2.is_particle() {
        return Ok(ov.gamma * ((1.0 + p1.d) / 2.0).sqrt());
    }

    let lam = DerivedPhases::new(p1, p2, ov);
    let g = ov.gamma;
    let s = ov.sin_part();
    let plus = (1.0 + p1.d) * (1.0 + p2.d);
    let num = Complex::new(g * plus, 0.0)
        + cis(lam.lambda1) * (g * p1.v * p2.v)
        + cis(lam.lambda2) * (g * p1.c * p2.c)
        + cis(lam.lambda3 + ov.xi - ov.mu) * (s * p1.c * p2.v)
        - cis(lam.lambda4 + ov.mu - ov.xi) * (s * p1.v * p2.c);
    Ok((num.norm() / (2.0 * plus.sqrt())).min(1.0))
}

/// Bures distance from a particle to any state with distinguishability `dbar`,
/// where `gamma` is the overlap of their path-0 polarizations.
pub fn particle_distance(gamma: f64, dbar: f64) -> Result<f64> {
    check_range("gamma", gamma, 0.0, 1.0)?;
    check_range("dbar", dbar, 0.0, 1.0)?;
    Ok(bures_from_overlap(gamma * ((1.0 + dbar) / 2.0).sqrt()))
}

/// The nearest particle state: it sits on the dominant arm and carries that
/// arm's conditional polarization.
pub fn min_particle_distance(state: &StateVector4) -> Result<ParticleWitness> {
    let r = quanton::extract_params(state)?;
    let distance = particle_distance(1.0, r.params.d)?;
    let u = cis(r.global_phase);
    Ok(ParticleWitness {
        path: usize::from(r.paths_swapped),
        polarization: r.basis.phi0.map(|z| z * u),
        distance,
    })
}

/// Gram matrix `⟨b2_i|b1_j⟩` of two polarization bases.
pub fn basis_overlap_matrix(b1: &PolarizationBasis, b2: &PolarizationBasis) -> Mat2 {
    let rows = [b2.phi0, b2.phi0perp];
    let cols = [b1.phi0, b1.phi0perp];
    Mat2::new(
        inner(&rows[0], &cols[0]),
        inner(&rows[0], &cols[1]),
        inner(&rows[1], &cols[0]),
        inner(&rows[1], &cols[1]),
    )
}
