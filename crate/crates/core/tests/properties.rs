mod common;

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use proptest::prelude::*;
use quanton_core::englert::{
    pure_trace_distance, trace_distance, wwd_duality_pair, DensityMatrix2,
};
use quanton_core::geometry::{
    bures_distance, min_particle_distance, overlap_bruteforce, overlap_closed_form,
    particle_distance, realize_pair, relative_overlap_params, OverlapParams,
};
use quanton_core::linalg::{cis, phase_distance, Mat2};
use quanton_core::quanton::{
    build_state, concurrence, extract_params, triality_residual, PolarizationBasis, QuantonParams,
    StateVector4,
};
use quanton_core::sampler::{
    haar_random_state, haar_unitary2, random_quanton_fixed_d, random_state_fixed_D, random_unit2,
    random_wwd_instance, SampleSeed,
};
use quanton_core::Complex;

fn seed() -> impl Strategy<Value = SampleSeed> {
    (any::<u64>(), any::<u64>()).prop_map(|(s, k)| SampleSeed::new(s, k))
}

fn unit2() -> impl Strategy<Value = [Complex; 2]> {
    seed().prop_map(|s| random_unit2(&mut s.rng()))
}

/// Valid parameters with `D < 1`, as (D, θ, α, β) on the VDC sphere.
fn params() -> impl Strategy<Value = QuantonParams> {
    (0.0..0.999f64, 0.01..1.56f64, 0.0..TAU, 0.0..TAU).prop_map(|(d, th, a, b)| {
        let r = (1.0 - d * d).sqrt();
        QuantonParams::new(d, r * th.cos(), r * th.sin(), a, b).unwrap()
    })
}

fn canonical_basis() -> impl Strategy<Value = PolarizationBasis> {
    unit2().prop_map(|v| {
        // make the larger component real positive
        let k = usize::from(v[1].norm() > v[0].norm());
        let u = cis(-v[k].arg());
        PolarizationBasis::from_phi0(v.map(|z| z * u)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn build_extract_round_trip(p in params(), b in canonical_basis(), g in 0.0..TAU) {
        let s = build_state(&p, &b).unwrap().scale_phase(g);
        let r = extract_params(&s).unwrap();
        prop_assert!(!r.paths_swapped);
        prop_assert!((r.params.d - p.d).abs() < 1e-9);
        prop_assert!((r.params.v - p.v).abs() < 1e-9);
        prop_assert!((r.params.c - p.c).abs() < 1e-9);
        prop_assert!(phase_distance(r.params.alpha, p.alpha) < 1e-9);
        prop_assert!(phase_distance(r.params.beta, p.beta) < 1e-9);
        for k in 0..2 {
            prop_assert!((r.basis.phi0[k] - b.phi0[k]).norm() < 1e-9);
        }
    }

    #[test]
    fn arbitrary_basis_round_trip(p in params(), phi0 in unit2(), phase in 0.0..TAU) {
        let b = PolarizationBasis::new(phi0, quanton_core::linalg::perp(phi0).map(|z| z * cis(phase))).unwrap();
        let s = build_state(&p, &b).unwrap();
        let r = extract_params(&s).unwrap();
        prop_assert!((r.params.d - p.d).abs() < 1e-9);
        prop_assert!(phase_distance(r.params.alpha, p.alpha) < 1e-9);
        prop_assert!((common::raw_overlap(&r.rebuild().unwrap(), &s) - 1.0).abs() < 1e-12);
        // same φ0 up to a phase
        prop_assert!((quanton_core::linalg::inner(&r.basis.phi0, &phi0).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn triality_and_greenberg_yasin(s in seed()) {
        let state = haar_random_state(s);
        prop_assert!(triality_residual(&state).unwrap() < 1e-10);
        let r = extract_params(&state).unwrap();
        let pv = r.predictability.powi(2) + r.params.v.powi(2);
        prop_assert!(pv <= 1.0 + 1e-12);
        prop_assert!((r.predictability - common::raw_predictability(&state)).abs() < 1e-15);
        prop_assert!((r.predictability - r.params.d).abs() < 1e-10);
    }

    #[test]
    fn concurrence_is_local_unitary_invariant(s in seed()) {
        let mut rng = s.rng();
        let state = haar_random_state(s);
        let up = *haar_unitary2(&mut rng).matrix();
        let us = *haar_unitary2(&mut rng).matrix();
        let c0 = concurrence(&state).unwrap();
        let c1 = concurrence(&state.apply_local(&up, &Mat2::identity())).unwrap();
        let c2 = concurrence(&state.apply_local(&Mat2::identity(), &us)).unwrap();
        let c3 = concurrence(&state.apply_local(&up, &us)).unwrap();
        prop_assert!((c0 - c1).abs() < 1e-12);
        prop_assert!((c0 - c2).abs() < 1e-12);
        prop_assert!((c0 - c3).abs() < 1e-12);
    }

    #[test]
    fn product_states_saturate_greenberg_yasin(path in unit2(), pol in unit2()) {
        let s = StateVector4::product(path, pol).unwrap();
        let r = extract_params(&s).unwrap();
        prop_assert!(r.params.c < 1e-10);
        prop_assert!((r.predictability.powi(2) + r.params.v.powi(2) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn trace_distance_is_a_metric(s in seed()) {
        let mut rng = s.rng();
        let rhos: Vec<DensityMatrix2> = (0..3)
            .map(|k| random_wwd_instance(SampleSeed::new(s.seed, s.stream.wrapping_add(k)), k == 0).rho)
            .collect();
        let (a, b, c) = (&rhos[0], &rhos[1], &rhos[2]);
        prop_assert_eq!(trace_distance(a, b), trace_distance(b, a));
        prop_assert!(trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12);
        let (x, y) = (random_unit2(&mut rng), random_unit2(&mut rng));
        let d = trace_distance(&DensityMatrix2::pure(x).unwrap(), &DensityMatrix2::pure(y).unwrap());
        prop_assert!((d - pure_trace_distance(x, y)).abs() < 1e-12);
    }

    #[test]
    fn englert_duality(s in seed(), pure in any::<bool>()) {
        let w = random_wwd_instance(s, pure);
        let p = wwd_duality_pair(&w.u0, &w.u1, &w.rho).unwrap();
        prop_assert!(p.sum_of_squares() <= 1.0 + 1e-12);
        if pure {
            prop_assert!((p.sum_of_squares() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn closed_form_matches_bruteforce(p1 in params(), p2 in params(), g in 0.0..=1.0f64, xi in 0.0..TAU, mu in 0.0..TAU) {
        let ov = OverlapParams::new(g, xi, mu).unwrap();
        let (s1, s2) = realize_pair(&p1, &p2, &ov).unwrap();
        let brute = common::raw_overlap(&s2, &s1);
        prop_assert!((overlap_closed_form(&p1, &p2, &ov).unwrap() - brute).abs() < 1e-9);
    }

    #[test]
    fn realized_bases_round_trip(g in 0.0..=1.0f64, xi in 0.0..TAU, mu in 0.0..TAU) {
        let ov = OverlapParams::new(g, xi, mu).unwrap();
        let (b1, b2) = quanton_core::geometry::realize_bases(&ov).unwrap();
        let back = relative_overlap_params(&b1, &b2).unwrap();
        prop_assert!((back.gamma - g).abs() < 1e-12);
        if g > 1e-9 {
            prop_assert!(phase_distance(back.xi, xi) < 1e-9);
        }
        if g < 1.0 - 1e-9 {
            prop_assert!(phase_distance(back.mu, mu) < 1e-6);
        }
    }

    #[test]
    fn bures_metric_axioms(s in seed()) {
        let a = haar_random_state(s);
        let b = haar_random_state(SampleSeed::new(s.seed, s.stream.wrapping_add(1)));
        let c = haar_random_state(SampleSeed::new(s.seed, s.stream.wrapping_add(2)));
        let dab = bures_distance(&a, &b).unwrap();
        prop_assert_eq!(dab, bures_distance(&b, &a).unwrap());
        prop_assert!(bures_distance(&a, &a).unwrap() < 1e-7);
        prop_assert!(bures_distance(&a, &c).unwrap() <= dab + bures_distance(&b, &c).unwrap() + 1e-12);
        prop_assert!((0.0..=std::f64::consts::SQRT_2).contains(&dab));
    }

    #[test]
    fn equidistance_from_particle(dbar in 0.0..=1.0f64, s in seed(), pol in unit2()) {
        let particle = StateVector4::particle(0, pol).unwrap();
        let (params, basis) = random_quanton_fixed_d(dbar, s).unwrap();
        let state = build_state(&params, &basis).unwrap();
        let r = extract_params(&state).unwrap();
        let pb = PolarizationBasis::from_phi0(pol).unwrap();
        let gamma = relative_overlap_params(&pb, &r.basis).unwrap().gamma;
        let measured = common::raw_bures(&particle, &state);
        prop_assert!((measured - particle_distance(gamma, dbar).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn particle_distance_monotone(g in 0.01..=1.0f64, d0 in 0.0..1.0f64, step in 1e-6..1.0f64) {
        let d1 = (d0 + step).min(1.0);
        prop_assume!(d1 > d0);
        prop_assert!(particle_distance(g, d1).unwrap() < particle_distance(g, d0).unwrap());
        prop_assert_eq!(particle_distance(0.0, d0).unwrap(), particle_distance(0.0, d1).unwrap());
    }

    #[test]
    fn witness_achieves_min_distance(s in seed()) {
        let state = haar_random_state(s);
        let w = min_particle_distance(&state).unwrap();
        let direct = common::raw_bures(&w.state().unwrap(), &state);
        prop_assert!((direct - w.distance).abs() < 1e-10);
    }
}

#[test]
fn overlap_of_identical_states_is_one() {
    let s = haar_random_state(SampleSeed::new(4, 4));
    assert!((overlap_bruteforce(&s, &s).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn wave_reference_is_not_equidistant() {
    let h = FRAC_1_SQRT_2;
    let wave = StateVector4::from_real([h, 0.0, h, 0.0]).unwrap();
    // both have D̄ = 0 and share the standard polarization basis (γ = 1) with the wave
    let e = StateVector4::from_real([h, 0.0, 0.0, h]).unwrap();
    let w2 = build_state(
        &QuantonParams::new(0.0, 0.6, 0.8, 0.0, 0.0).unwrap(),
        &PolarizationBasis::standard(),
    )
    .unwrap();
    for s in [&e, &w2] {
        assert!(extract_params(s).unwrap().params.d.abs() < 1e-12);
    }
    let d1 = bures_distance(&wave, &e).unwrap();
    let d2 = bures_distance(&wave, &w2).unwrap();
    assert!((d1 - 1.0).abs() < 1e-12);
    assert!((d1 - d2).abs() > 0.1, "{d1} vs {d2}");
}

#[test]
fn entanglon_reference_is_not_equidistant() {
    let h = FRAC_1_SQRT_2;
    let ent = StateVector4::from_real([h, 0.0, 0.0, h]).unwrap();
    let wave = StateVector4::from_real([h, 0.0, h, 0.0]).unwrap();
    // same D̄ = 0 and γ = 1, differing only in α
    let e2 = build_state(
        &QuantonParams::new(0.0, 0.0, 1.0, std::f64::consts::PI, 0.0).unwrap(),
        &PolarizationBasis::standard(),
    )
    .unwrap();
    let d1 = bures_distance(&ent, &wave).unwrap();
    let d2 = bures_distance(&ent, &e2).unwrap();
    assert!((d1 - d2).abs() > 0.1, "{d1} vs {d2}");
}

#[test]
fn min_distance_is_injective_in_dbar() {
    let dists: Vec<f64> = (0..=100)
        .map(|i| {
            let s = random_state_fixed_D(i as f64 / 100.0, SampleSeed::new(17, i)).unwrap();
            min_particle_distance(&s).unwrap().distance
        })
        .collect();
    assert!(dists.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn fixed_d_sampler_covers_quarter_circle() {
    let dbar = 0.4f64;
    let r = (1.0 - dbar * dbar).sqrt();
    let ratios: Vec<f64> = (0..10_000)
        .map(|k| {
            random_quanton_fixed_d(dbar, SampleSeed::new(8, k))
                .unwrap()
                .0
                .v
                / r
        })
        .collect();
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert!(lo < 0.01, "{lo}");
    assert!(hi > 0.99, "{hi}");
}

#[test]
fn haar_path_population_is_balanced() {
    let n = 100_000;
    let mean = (0..n)
        .map(|k| haar_random_state(SampleSeed::new(2024, k)).path_probabilities()[0])
        .sum::<f64>()
        / n as f64;
    assert!((mean - 0.5).abs() < 0.01, "{mean}");
}

#[test]
fn sampler_is_schedule_independent() {
    use rayon::prelude::*;
    let serial: Vec<StateVector4> = (0..2000)
        .map(|k| haar_random_state(SampleSeed::new(5, k)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let parallel: Vec<StateVector4> = pool.install(|| {
        (0..2000u64)
            .into_par_iter()
            .map(|k| haar_random_state(SampleSeed::new(5, 1999 - k)))
            .collect::<Vec<_>>()
    });
    let mut parallel = parallel;
    parallel.reverse();
    assert_eq!(serial, parallel);
}
