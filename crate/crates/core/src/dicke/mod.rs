//! `N` two-level atoms collectively coupled to one field mode.
//!
//! The atoms are restricted to the symmetric Dicke ladder `|m>`, `m = 0..N`
//! excitations (`S_z = m - N/2`), so the Hilbert space is
//! `(N + 1) x fock_dim` with basis index `m * fock_dim + n`. Units have
//! `hbar = 1`:
//!
//! ```text
//! H = omega a^dagger a + omega_eg S_z + (g / sqrtN) (S+ a + S- a^dagger)
//!     [ + (g / sqrtN) (S+ a^dagger + S- a)   when counter_rotating ]
//! ```
//!
//! The co-rotating form conserves `a^dagger a + S_z`, which pins `<a>` and
//! `<a^2>` to zero in every nondegenerate eigenstate; the counter-rotating
//! variant breaks that conservation down to parity.
//!
//! [`DickeConfig::g_c`] is the co-rotating threshold `sqrt(omega omega_eg)`.
//! With the counter-rotating terms at equal strength the field condenses near
//! `g_c / 2` instead, and above it the two parity sectors become degenerate,
//! so the returned ground state is one member of a near-degenerate pair.

mod eigen;
mod sparse;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use eigen::{ground_state, GroundStateResult, Method, SolverOptions, DEGENERACY_TOL, DENSE_LIMIT};
pub use sparse::SparseOperator;

use crate::{Error, Result, SingleModeMoments};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DickeConfig {
    pub n_atoms: usize,
    pub fock_dim: usize,
    pub omega: f64,
    pub omega_eg: f64,
    pub g: f64,
    pub counter_rotating: bool,
}

impl Default for DickeConfig {
    fn default() -> Self {
        Self { n_atoms: 80, fock_dim: 142, omega: 1.0, omega_eg: 1.0, g: 0.0, counter_rotating: false }
    }
}

impl DickeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_atoms < 1 || self.fock_dim < 2 {
            return Err(Error::InvalidArgument(format!(
                "need n_atoms >= 1 and fock_dim >= 2, got {} and {}",
                self.n_atoms, self.fock_dim
            )));
        }
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.omega) || !positive(self.omega_eg) || !(self.g.is_finite() && self.g >= 0.0) {
            return Err(Error::InvalidArgument("need omega, omega_eg > 0 and g >= 0".into()));
        }
        Ok(())
    }

    /// `sqrt(omega omega_eg)`.
    pub fn g_c(&self) -> f64 {
        (self.omega * self.omega_eg).sqrt()
    }

    pub fn dim(&self) -> usize {
        (self.n_atoms + 1) * self.fock_dim
    }

    pub fn index(&self, m: usize, n: usize) -> usize {
        m * self.fock_dim + n
    }

    pub fn with_g(self, g: f64) -> Self {
        Self { g, ..self }
    }
}

pub fn build_hamiltonian(cfg: &DickeConfig) -> Result<SparseOperator> {
    cfg.validate()?;
    let big_n = cfg.n_atoms;
    let d = cfg.fock_dim;
    let kappa = cfg.g / (big_n as f64).sqrt();
    let mut triplets = Vec::with_capacity(cfg.dim() * 5);

    for m in 0..=big_n {
        let sz = m as f64 - big_n as f64 / 2.0;
        // <m+1| S+ |m>
        let raise = if m < big_n { (((big_n - m) * (m + 1)) as f64).sqrt() } else { 0.0 };
        for n in 0..d {
            let i = cfg.index(m, n);
            triplets.push((i, i, cfg.omega * n as f64 + cfg.omega_eg * sz));
            if m == big_n || kappa == 0.0 {
                continue;
            }
            // S+ a: |m, n> -> |m+1, n-1>
            if n > 0 {
                let j = cfg.index(m + 1, n - 1);
                let x = kappa * raise * (n as f64).sqrt();
                triplets.push((j, i, x));
                triplets.push((i, j, x));
            }
            // S+ a^dagger: |m, n> -> |m+1, n+1>
            if cfg.counter_rotating && n + 1 < d {
                let j = cfg.index(m + 1, n + 1);
                let x = kappa * raise * ((n + 1) as f64).sqrt();
                triplets.push((j, i, x));
                triplets.push((i, j, x));
            }
        }
    }
    Ok(SparseOperator::from_triplets(cfg.dim(), triplets))
}

/// Diagonal of `a^dagger a + S_z + N/2` (total excitation number).
pub fn excitation_number(cfg: &DickeConfig) -> Vec<f64> {
    (0..=cfg.n_atoms).flat_map(|m| (0..cfg.fock_dim).map(move |n| (m + n) as f64)).collect()
}

/// `<a>`, `<a^2>`, `<a^dagger a>` of the field factor of a state vector.
pub fn field_moments(result: &GroundStateResult, cfg: &DickeConfig) -> SingleModeMoments {
    vector_field_moments(&result.vector, cfg)
}

pub fn vector_field_moments(psi: &[f64], cfg: &DickeConfig) -> SingleModeMoments {
    assert_eq!(psi.len(), cfg.dim());
    let (mut a, mut a2, mut num) = (0.0, 0.0, 0.0);
    for m in 0..=cfg.n_atoms {
        let row = &psi[cfg.index(m, 0)..cfg.index(m, 0) + cfg.fock_dim];
        for n in 0..cfg.fock_dim {
            let nf = n as f64;
            num += nf * row[n] * row[n];
            if n >= 1 {
                a += row[n - 1] * nf.sqrt() * row[n];
            }
            if n >= 2 {
                a2 += row[n - 2] * (nf * (nf - 1.0)).sqrt() * row[n];
            }
        }
    }
    SingleModeMoments::new(Complex64::new(a, 0.0), Complex64::new(a2, 0.0), num)
}

/// Probability in the highest retained photon level.
pub fn field_tail_mass(psi: &[f64], cfg: &DickeConfig) -> f64 {
    (0..=cfg.n_atoms).map(|m| psi[cfg.index(m, cfg.fock_dim - 1)].powi(2)).sum()
}
