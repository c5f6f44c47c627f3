mod common;

use nonclass_core::dicke::{self, DickeConfig, Method, SolverOptions};

fn config(n_atoms: usize, fock_dim: usize, g: f64, counter_rotating: bool) -> DickeConfig {
    DickeConfig { n_atoms, fock_dim, omega: 1.0, omega_eg: 1.0, g, counter_rotating }
}

fn sorted_eigenvalues(m: nalgebra::DMatrix<f64>) -> Vec<f64> {
    let mut e: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

#[test]
fn sparse_hamiltonian_has_reference_spectrum() {
    for counter in [false, true] {
        for g in [0.0, 0.7, 1.3] {
            let cfg = config(3, 12, g, counter);
            let ours = sorted_eigenvalues(dicke::build_hamiltonian(&cfg).unwrap().to_dense());
            let reference = sorted_eigenvalues(common::dense_dicke(3, 12, 1.0, 1.0, g, counter));
            for (a, b) in ours.iter().zip(&reference) {
                assert!((a - b).abs() < 1e-10, "g = {g}, counter = {counter}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn lanczos_ground_state_matches_reference() {
    let opts = SolverOptions { method: Method::Lanczos, ..SolverOptions::default() };
    for counter in [false, true] {
        for g in [0.25, 0.5, 1.5, 2.0] {
            let cfg = config(6, 30, g, counter);
            let gs = dicke::ground_state(&dicke::build_hamiltonian(&cfg).unwrap(), &opts).unwrap();
            let (e0, photons) = common::dense_ground(&common::dense_dicke(6, 30, 1.0, 1.0, g, counter), 30);
            assert!((gs.energy - e0).abs() < 1e-9, "g = {g}: {} vs {e0}", gs.energy);
            if !gs.degenerate {
                let m = dicke::field_moments(&gs, &cfg);
                assert!((m.photon_number - photons).abs() < 1e-6, "g = {g}");
            }
        }
    }
}
