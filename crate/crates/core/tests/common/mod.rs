//! Reference computations for the integration and acceptance tests.
//!
//! Nothing here calls into the library. States are built amplitude by
//! amplitude, the splitter is applied by repeated action of the mapped creation
//! operator, and symplectic eigenvalues come from a general eigensolver.

#![allow(dead_code)]

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;
use rand::Rng;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn ln_fact(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `S(r e^{i theta}) |0>` from its closed-form number-state expansion,
/// `c_{2k} = (-e^{i theta} tanh r)^k sqrt((2k)!) / (2^k k! sqrt(cosh r))`.
pub fn squeezed_vacuum(r: f64, theta: f64, dim: usize) -> Vec<Complex64> {
    let mut psi = vec![ZERO; dim];
    let lt = r.tanh().ln();
    for k in 0..dim.div_ceil(2) {
        let mag = if k == 0 {
            0.0
        } else if r == 0.0 {
            f64::NEG_INFINITY
        } else {
            k as f64 * lt + 0.5 * ln_fact(2 * k) - k as f64 * 2f64.ln() - ln_fact(k)
        };
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        psi[2 * k] = Complex64::from_polar(sign * (mag - 0.5 * r.cosh().ln()).exp(), k as f64 * theta);
    }
    psi
}

/// Uniformly random direction in the first `dim` number states.
pub fn random_state<R: Rng>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    let mut psi: Vec<Complex64> =
        (0..dim).map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
    let norm = psi.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    psi.iter_mut().for_each(|c| *c /= norm);
    psi
}

/// `(<a>, <a^2>, <a^dagger a>)` summed directly over amplitudes.
pub fn moments(psi: &[Complex64]) -> (Complex64, Complex64, f64) {
    let mut a = ZERO;
    let mut a2 = ZERO;
    let mut n = 0.0;
    for k in 0..psi.len() {
        let kf = k as f64;
        n += kf * psi[k].norm_sqr();
        if k >= 1 {
            a += psi[k - 1].conj() * psi[k] * kf.sqrt();
        }
        if k >= 2 {
            a2 += psi[k - 2].conj() * psi[k] * (kf * (kf - 1.0)).sqrt();
        }
    }
    (a, a2, n)
}

/// Two-mode amplitudes on a `side x side` grid, index `n1 * side + n2`.
pub struct TwoMode {
    pub side: usize,
    pub amp: Vec<Complex64>,
}

/// Splitter acting on annihilators as `a_i -> sum_j M_ij a_j` with
/// `M = [[t e^{i phi}, r], [-r, t e^{-i phi}]]`; the input occupies port 1 and
/// port 2 is empty.
///
/// Conjugating creators gives `U a1^dagger U^dagger = M_11 a1^dagger + M_21 a2^dagger`,
/// so `|n, 0> = (a1^dagger)^n / sqrt(n!) |0, 0>` maps to the same polynomial in the
/// mapped creator. The polynomial is built one power at a time.
pub fn split(input: &[Complex64], t: f64, phi: f64) -> TwoMode {
    let r = (1.0 - t * t).max(0.0).sqrt();
    let m = [
        [Complex64::from_polar(t, phi), Complex64::new(r, 0.0)],
        [Complex64::new(-r, 0.0), Complex64::from_polar(t, -phi)],
    ];
    let (mu1, mu2) = (m[0][0], m[1][0]);

    // One slack level so every second moment of the stored vector is exact.
    let side = input.len() + 2;
    let mut amp = vec![ZERO; side * side];
    // power[k] is the coefficient of |k, n-k> in (mapped creator)^n/sqrt(n!) |0,0>
    let mut power = vec![Complex64::new(1.0, 0.0)];
    for (n, &cn) in input.iter().enumerate() {
        if n > 0 {
            let mut next = vec![ZERO; n + 1];
            for (k, &c) in power.iter().enumerate() {
                // a1^dagger |k, n-1-k> and a2^dagger |k, n-1-k>
                next[k + 1] += mu1 * c * ((k + 1) as f64).sqrt();
                next[k] += mu2 * c * ((n - k) as f64).sqrt();
            }
            let s = (n as f64).sqrt();
            power = next.into_iter().map(|c| c / s).collect();
        }
        for (k, &c) in power.iter().enumerate() {
            amp[k * side + (n - k)] += cn * c;
        }
    }
    TwoMode { side, amp }
}

impl TwoMode {
    fn lower(&self, mode: usize) -> Vec<Complex64> {
        let s = self.side;
        let mut out = vec![ZERO; s * s];
        for n1 in 0..s {
            for n2 in 0..s {
                let (k, src) = if mode == 0 { (n1 + 1, (n1 + 1) * s + n2) } else { (n2 + 1, n1 * s + n2 + 1) };
                if k < s {
                    out[n1 * s + n2] = self.amp[src] * (k as f64).sqrt();
                }
            }
        }
        out
    }

    fn raise(&self, mode: usize) -> Vec<Complex64> {
        let s = self.side;
        let mut out = vec![ZERO; s * s];
        for n1 in 0..s {
            for n2 in 0..s {
                let k = if mode == 0 { n1 } else { n2 };
                if k > 0 {
                    let src = if mode == 0 { (n1 - 1) * s + n2 } else { n1 * s + n2 - 1 };
                    out[n1 * s + n2] = self.amp[src] * (k as f64).sqrt();
                }
            }
        }
        out
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Centered, symmetrized covariance in `(x1, p1, x2, p2)` order with
    /// `x = (a + a^dagger)/sqrt2`, `p = -i(a - a^dagger)/sqrt2`.
    pub fn covariance(&self) -> Matrix4<f64> {
        // ops = [a1, a1^dagger, a2, a2^dagger]; w = op psi, u = op^dagger psi
        let w = [self.lower(0), self.raise(0), self.lower(1), self.raise(1)];
        let u = [self.raise(0), self.lower(0), self.raise(1), self.lower(1)];
        let dot = |x: &[Complex64], y: &[Complex64]| -> Complex64 { x.iter().zip(y).map(|(a, b)| a.conj() * b).sum() };
        let mut mom = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                mom[i][j] = dot(&u[i], &w[j]);
            }
        }
        let mean: Vec<Complex64> = w.iter().map(|x| dot(&self.amp, x)).collect();

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let i = Complex64::new(0.0, 1.0);
        // rows: coefficients of (a1, a1^dagger, a2, a2^dagger)
        let coef = [
            [Complex64::new(s, 0.0), Complex64::new(s, 0.0), ZERO, ZERO],
            [-i * s, i * s, ZERO, ZERO],
            [ZERO, ZERO, Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
            [ZERO, ZERO, -i * s, i * s],
        ];
        let mut v = Matrix4::zeros();
        for p in 0..4 {
            for q in 0..4 {
                let mut sym = ZERO;
                let mut mp = ZERO;
                let mut mq = ZERO;
                for a in 0..4 {
                    mp += coef[p][a] * mean[a];
                    mq += coef[q][a] * mean[a];
                    for b in 0..4 {
                        sym += coef[p][a] * coef[q][b] * (mom[a][b] + mom[b][a]) * 0.5;
                    }
                }
                v[(p, q)] = sym.re - mp.re * mq.re;
            }
        }
        v
    }
}

/// Smallest symplectic eigenvalue of the partial transpose (`p2 -> -p2`),
/// from the eigenvalues `+-i eta` of `Omega V~`.
pub fn pt_eta_minus(v: &Matrix4<f64>) -> f64 {
    let p = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 1.0, -1.0));
    let vt = p * v * p;
    let mut omega = Matrix4::zeros();
    omega[(0, 1)] = 1.0;
    omega[(1, 0)] = -1.0;
    omega[(2, 3)] = 1.0;
    omega[(3, 2)] = -1.0;
    (omega * vt).complex_eigenvalues().iter().map(|z| z.im.abs()).fold(f64::INFINITY, f64::min)
}

pub fn log_neg(eta_minus: f64) -> f64 {
    (-(2.0 * eta_minus).ln()).max(0.0)
}

/// Dense Dicke Hamiltonian on spin-`N/2` times `fock_dim` photon levels,
/// basis `|m_z> (x) |n>` with `m_z = -N/2 .. N/2`.
pub fn dense_dicke(n_atoms: usize, fock_dim: usize, omega: f64, omega_eg: f64, g: f64, counter: bool) -> DMatrix<f64> {
    let j = n_atoms as f64 / 2.0;
    let spins = n_atoms + 1;
    let dim = spins * fock_dim;
    let idx = |s: usize, n: usize| s * fock_dim + n;
    let coupling = g / (n_atoms as f64).sqrt();
    let mut h = DMatrix::zeros(dim, dim);
    for s in 0..spins {
        let mz = s as f64 - j;
        for n in 0..fock_dim {
            h[(idx(s, n), idx(s, n))] = omega * n as f64 + omega_eg * mz;
        }
        if s + 1 < spins {
            let jp = (j * (j + 1.0) - mz * (mz + 1.0)).sqrt();
            for n in 0..fock_dim {
                // J+ a
                if n + 1 < fock_dim {
                    let x = coupling * jp * ((n + 1) as f64).sqrt();
                    h[(idx(s + 1, n), idx(s, n + 1))] += x;
                    h[(idx(s, n + 1), idx(s + 1, n))] += x;
                }
                // J+ a^dagger
                if counter && n + 1 < fock_dim {
                    let x = coupling * jp * ((n + 1) as f64).sqrt();
                    h[(idx(s + 1, n + 1), idx(s, n))] += x;
                    h[(idx(s, n), idx(s + 1, n + 1))] += x;
                }
            }
        }
    }
    h
}

/// Lowest eigenvalue, its vector and `<a^dagger a>` of a dense Dicke matrix.
pub fn dense_ground(h: &DMatrix<f64>, fock_dim: usize) -> (f64, f64) {
    let eig = h.clone().symmetric_eigen();
    let (k, e0) =
        eig.eigenvalues.iter().enumerate().fold((0, f64::INFINITY), |b, (i, &e)| if e < b.1 { (i, e) } else { b });
    let v = eig.eigenvectors.column(k);
    let photons = (0..v.len()).map(|i| (i % fock_dim) as f64 * v[i] * v[i]).sum();
    (e0, photons)
}
