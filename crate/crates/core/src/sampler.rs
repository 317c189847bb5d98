//! Seeded random inputs.
//!
//! Every draw is a pure function of a [`SampleSeed`]. The generator is
//! ChaCha20 (`rand_chacha::ChaCha20Rng`) keyed with `seed_from_u64(seed)` and
//! positioned on stream `stream` via `set_stream`, so sample `k` of a sweep is
//! reproduced by `SampleSeed { seed, stream: k }` no matter which thread draws it
//! or in what order. Gaussians come from `rand_distr::StandardNormal`.

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::englert::{DensityMatrix2, Unitary2};
use crate::error::{check_range, Result};
use crate::geometry::OverlapParams;
use crate::linalg::{cis, norm_sq, perp, Complex, Mat2};
use crate::quanton::{build_state, PolarizationBasis, QuantonParams, StateVector4};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SampleSeed {
    pub seed: u64,
    pub stream: u64,
}

impl SampleSeed {
    pub fn new(seed: u64, stream: u64) -> Self {
        SampleSeed { seed, stream }
    }

    pub fn rng(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniformly distributed unit vector in C².
pub fn random_unit2<R: Rng + ?Sized>(rng: &mut R) -> [Complex; 2] {
    loop {
        let v = [complex_gaussian(rng), complex_gaussian(rng)];
        let n = norm_sq(&v).sqrt();
        if n > 1e-150 {
            return v.map(|z| z / n);
        }
    }
}

/// Haar-distributed 2×2 unitary: a uniform first column completed by a
/// uniformly phased orthogonal second column.
pub fn haar_unitary2<R: Rng + ?Sized>(rng: &mut R) -> Unitary2 {
    let c0 = random_unit2(rng);
    let phase = cis(rng.random_range(0.0..TAU));
    let c1 = perp(c0).map(|z| z * phase);
    Unitary2::new(Mat2::from_columns(c0, c1)).expect("columns are orthonormal by construction")
}

pub fn random_polarization_basis<R: Rng + ?Sized>(rng: &mut R) -> PolarizationBasis {
    PolarizationBasis::from_phi0(random_unit2(rng)).expect("unit vector")
}

/// Haar-random pure state on path ⊗ polarization.
pub fn haar_random_state(seed: SampleSeed) -> StateVector4 {
    let mut rng = seed.rng();
    loop {
        let amp = [0; 4].map(|_| complex_gaussian(&mut rng));
        if let Ok(s) = StateVector4::normalize(amp) {
            return s;
        }
    }
}

/// Parameters and basis of a random quanton with distinguishability `dbar`.
///
/// `(V̄, C̄) = √(1−D̄²)(cos θ, sin θ)` with `θ` uniform on `[0, π/2]`, phases
/// uniform on `[0, 2π)`, and a uniformly random polarization basis.
pub fn random_quanton_fixed_d(
    dbar: f64,
    seed: SampleSeed,
) -> Result<(QuantonParams, PolarizationBasis)> {
    check_range("dbar", dbar, 0.0, 1.0)?;
    draw_quanton_fixed_d(&mut seed.rng(), dbar)
}

fn draw_quanton_fixed_d<R: Rng + ?Sized>(
    rng: &mut R,
    dbar: f64,
) -> Result<(QuantonParams, PolarizationBasis)> {
    let theta = rng.random_range(0.0..=FRAC_PI_2);
    let alpha = rng.random_range(0.0..TAU);
    let beta = rng.random_range(0.0..TAU);
    let basis = random_polarization_basis(rng);
    let r = (1.0 - dbar * dbar).max(0.0).sqrt();
    let params = QuantonParams::new(dbar, r * theta.cos(), r * theta.sin(), alpha, beta)?;
    Ok((params, basis))
}

#[allow(non_snake_case)]
pub fn random_state_fixed_D(dbar: f64, seed: SampleSeed) -> Result<StateVector4> {
    let (params, basis) = random_quanton_fixed_d(dbar, seed)?;
    build_state(&params, &basis)
}

/// Quanton parameters with `D` uniform on `[0, 1)` and the rest drawn as in
/// [`random_quanton_fixed_d`].
pub fn random_quanton_params(seed: SampleSeed) -> QuantonParams {
    let mut rng = seed.rng();
    let d = rng.random_range(0.0..1.0);
    draw_quanton_fixed_d(&mut rng, d).expect("d in range").0
}

/// `γ` uniform on `[0, 1]`, `ξ` and `μ` uniform on `[0, 2π)`.
pub fn random_overlap_params(seed: SampleSeed) -> OverlapParams {
    let mut rng = seed.rng();
    OverlapParams {
        gamma: rng.random_range(0.0..=1.0),
        xi: rng.random_range(0.0..TAU),
        mu: rng.random_range(0.0..TAU),
    }
}

/// Two arm unitaries and an initial detector state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WwdInstance {
    pub u0: Unitary2,
    pub u1: Unitary2,
    pub rho: DensityMatrix2,
}

/// Haar-random arm unitaries; the detector is a random ket when `pure`, else a
/// full-rank `GG†/Tr(GG†)` mixture with complex Gaussian `G`.
pub fn random_wwd_instance(seed: SampleSeed, pure: bool) -> WwdInstance {
    let mut rng = seed.rng();
    let u0 = haar_unitary2(&mut rng);
    let u1 = haar_unitary2(&mut rng);
    let rho = if pure {
        DensityMatrix2::pure(random_unit2(&mut rng)).expect("unit vector")
    } else {
        random_mixed_density(&mut rng)
    };
    WwdInstance { u0, u1, rho }
}

fn random_mixed_density<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix2 {
    loop {
        let g = Mat2::new(
            complex_gaussian(rng),
            complex_gaussian(rng),
            complex_gaussian(rng),
            complex_gaussian(rng),
        );
        let m = g.mul(&g.adjoint());
        let tr = m.trace().re;
        let off = 0.5 * (m.get(0, 1) + m.get(1, 0).conj());
        let rho = Mat2::new(
            Complex::new(m.get(0, 0).re / tr, 0.0),
            off / tr,
            off.conj() / tr,
            Complex::new(m.get(1, 1).re / tr, 0.0),
        );
        if rho.hermitian_eigenvalues()[0] > 1e-12 {
            return DensityMatrix2::new(rho).expect("positive unit-trace Hermitian");
        }
    }
}
