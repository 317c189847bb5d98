//! Reference computations that work on raw amplitudes only, independent of the
//! extraction and closed-form code paths under test.

#![allow(dead_code)]

use std::f64::consts::{PI, SQRT_2, TAU};

use quanton_core::quanton::StateVector4;
use quanton_core::Complex;

pub const GRID_POLAR: usize = 200;
pub const GRID_AZIMUTH: usize = 400;

/// `|⟨a|b⟩|` summed term by term.
pub fn raw_overlap(a: &StateVector4, b: &StateVector4) -> f64 {
    let mut acc = Complex::new(0.0, 0.0);
    for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
        acc += x.conj() * y;
    }
    acc.norm()
}

pub fn raw_bures(a: &StateVector4, b: &StateVector4) -> f64 {
    SQRT_2 * (1.0 - raw_overlap(a, b).min(1.0)).max(0.0).sqrt()
}

/// Smallest Bures distance from `state` to a particle `|k⟩ ⊗ |χ(θ, φ)⟩`, searched
/// over a `GRID_POLAR × GRID_AZIMUTH` Bloch-sphere grid on both arms, with
/// `χ = (cos θ/2, e^{iφ} sin θ/2)`.
pub fn bloch_grid_min_distance(state: &StateVector4) -> f64 {
    let a = state.amplitudes();
    let mut best = 0.0f64;
    for i in 0..GRID_POLAR {
        let theta = PI * i as f64 / (GRID_POLAR - 1) as f64;
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        for j in 0..GRID_AZIMUTH {
            let phi = TAU * j as f64 / GRID_AZIMUTH as f64;
            let chi1 = Complex::from_polar(s, phi);
            for k in 0..2 {
                let ov = (a[2 * k] * c + a[2 * k + 1] * chi1.conj()).norm();
                best = best.max(ov);
            }
        }
    }
    SQRT_2 * (1.0 - best.min(1.0)).max(0.0).sqrt()
}

/// Path-population imbalance straight from the amplitudes.
pub fn raw_predictability(state: &StateVector4) -> f64 {
    let a = state.amplitudes();
    let p0 = a[0].norm_sqr() + a[1].norm_sqr();
    let p1 = a[2].norm_sqr() + a[3].norm_sqr();
    (p0 - p1).abs()
}
