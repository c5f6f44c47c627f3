mod common;

use std::f64::consts::TAU;

use nonclass_core::fock::{self, FockVector, PhaseConvention};
use nonclass_core::{
    center, covariance_from_input, log_negativity, squeezed_coherent_moments, symplectic_eta, BeamSplitterParams,
    CenteredMoments, SqueezedCoherentParams,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Levels needed for the squeezed-vacuum tail to drop below ~1e-16.
fn dim_for(r: f64) -> usize {
    let per_pair = -2.0 * r.tanh().ln();
    (2.0 * (37.0 / per_pair).ceil()) as usize + 2
}

fn reference_blocks(psi: &[Complex64], t: f64, phi: f64) -> nalgebra::Matrix4<f64> {
    common::split(psi, t, phi).covariance()
}

#[test]
fn squeezed_vacuum_balanced_splitter_gives_en_equal_to_r() {
    for r in [0.25, 0.5, 1.0, 1.5, 2.0] {
        let dim = dim_for(r).max(120);
        let psi = common::squeezed_vacuum(r, 0.0, dim);
        let t = std::f64::consts::FRAC_1_SQRT_2;
        let v = reference_blocks(&psi, t, 0.0);
        let eta = common::pt_eta_minus(&v);
        assert!((2.0 * eta - (-r).exp()).abs() < 1e-9, "r = {r}: 2 eta- = {}", 2.0 * eta);
        assert!((common::log_neg(eta) - r).abs() < 1e-9);

        let lib = squeezed_coherent_moments(&SqueezedCoherentParams::squeezed_vacuum(r, 0.0).unwrap());
        let blocks = covariance_from_input(&center(&lib).unwrap(), &BeamSplitterParams::new(t, 0.0).unwrap()).unwrap();
        let en = log_negativity(symplectic_eta(&blocks).unwrap().minus);
        assert!((en - r).abs() < 1e-9, "r = {r}: library E_N = {en}");
    }
}

#[test]
fn reference_squeezed_vacuum_matches_library_moments() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let r = 1.2 * rng.random::<f64>();
        let theta = TAU * rng.random::<f64>();
        let (_, a2, n) = common::moments(&common::squeezed_vacuum(r, theta, dim_for(r.max(0.05))));
        let lib = squeezed_coherent_moments(&SqueezedCoherentParams::squeezed_vacuum(r, theta).unwrap());
        assert!((a2 - lib.a_squared).norm() < 1e-10, "r = {r}, theta = {theta}");
        assert!((n - lib.photon_number).abs() < 1e-10);
    }
}

fn gap(x: &nalgebra::Matrix4<f64>, y: &nalgebra::Matrix4<f64>) -> f64 {
    (x - y).abs().max()
}

#[test]
fn gaussian_blocks_match_fock_space_for_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..64 {
        let dim = rng.random_range(2..40);
        let psi = if trial % 2 == 0 {
            common::random_state(&mut rng, dim)
        } else {
            // truncated, so renormalize
            let raw = common::squeezed_vacuum(1.5 * rng.random::<f64>(), TAU * rng.random::<f64>(), dim);
            let norm = raw.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            raw.into_iter().map(|c| c / norm).collect()
        };
        let t = rng.random::<f64>();
        let phi = TAU * rng.random::<f64>();
        let reference = reference_blocks(&psi, t, phi);

        let (mean, a2, n) = common::moments(&psi);
        let centered = CenteredMoments::from_complex(a2 - mean * mean, n - mean.norm_sqr()).unwrap();
        let bs = BeamSplitterParams::new(t, phi).unwrap();
        let predicted = covariance_from_input(&centered, &bs).unwrap().assemble();
        let scale = 1.0 + n;
        assert!(gap(&predicted, &reference) < 1e-10 * scale, "trial {trial}: {}", gap(&predicted, &reference));

        let input = FockVector::new(psi.clone()).unwrap();
        let measured = fock::two_mode_covariance(&fock::apply_beam_splitter(&input, &bs)).assemble();
        assert!(gap(&measured, &reference) < 1e-10 * scale, "trial {trial}");
        assert!(fock::covariance_discrepancy(&input, &bs, PhaseConvention::Standard).unwrap() < 1e-10 * scale);
    }
}

#[test]
fn splitter_preserves_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let psi = common::random_state(&mut rng, 30);
    let out = common::split(&psi, 0.3, 1.1);
    assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
}

#[test]
fn conjugated_phase_is_detected() {
    let psi = common::squeezed_vacuum(0.8, 0.4, 60);
    let bs = BeamSplitterParams::new(0.6, 1.0).unwrap();
    let input = FockVector::new(psi).unwrap();
    assert!(fock::covariance_discrepancy(&input, &bs, PhaseConvention::Corrupted).unwrap() > 1e-3);
}
