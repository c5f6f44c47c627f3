//! Lowest eigenpairs of a real symmetric sparse operator.
//!
//! The iterative path is a thick-restarted Lanczos process (Krylov-Schur form)
//! with full reorthogonalization. The second level is found by a second run
//! with the ground vector locked out, which also catches degeneracies that a
//! single Krylov sequence cannot resolve.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::SparseOperator;
use crate::{Error, Execution, Result};

/// Operators up to this dimension are diagonalized densely under [`Method::Auto`].
pub const DENSE_LIMIT: usize = 512;
/// Two lowest levels closer than this are reported as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Method {
    #[default]
    Auto,
    Lanczos,
    Dense,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub method: Method,
    /// Required residual `||H v - E v||`.
    pub tol: f64,
    /// Budget of operator applications per eigenpair.
    pub max_iter: usize,
    pub basis_size: usize,
    pub keep: usize,
    /// On degeneracy, return `(v0 + v1)/sqrt2` instead of `v0`.
    pub mix_degenerate: bool,
    pub exec: Execution,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            method: Method::Auto,
            tol: 1e-8,
            max_iter: 50_000,
            basis_size: 64,
            keep: 24,
            mix_degenerate: false,
            exec: Execution::Sequential,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateResult {
    pub energy: f64,
    /// Normalized; the largest-magnitude entry is positive.
    pub vector: Vec<f64>,
    pub residual: f64,
    /// Operator applications (iterative) or 0 (dense).
    pub iterations: usize,
    /// Second-lowest level.
    pub second_energy: f64,
    pub degenerate: bool,
}

pub fn ground_state(h: &SparseOperator, opts: &SolverOptions) -> Result<GroundStateResult> {
    if h.dim() < 2 {
        return Err(Error::InvalidArgument("operator dimension must be at least 2".into()));
    }
    let dense = match opts.method {
        Method::Dense => true,
        Method::Lanczos => false,
        Method::Auto => h.dim() <= DENSE_LIMIT,
    };
    let (e0, mut v0, e1, mut v1, iterations) = if dense {
        let (e0, v0, e1, v1) = dense_lowest_two(h);
        (e0, v0, e1, v1, 0)
    } else {
        let start = vec![1.0 / (h.dim() as f64).sqrt(); h.dim()];
        let first = lowest_pair(h, &[], start, opts)?;
        let second_start = scrambled_start(h.dim());
        let second = lowest_pair(h, std::slice::from_ref(&first.vector), second_start, opts)?;
        (first.value, first.vector, second.value, second.vector, first.matvecs + second.matvecs)
    };

    fix_sign(&mut v0);
    fix_sign(&mut v1);
    let degenerate = (e1 - e0).abs() < DEGENERACY_TOL;
    let vector = if degenerate && opts.mix_degenerate {
        let mut mixed: Vec<f64> = v0.iter().zip(&v1).map(|(a, b)| a + b).collect();
        normalize(&mut mixed);
        fix_sign(&mut mixed);
        mixed
    } else {
        v0
    };
    let residual = residual_norm(h, &vector, e0, opts.exec);
    if residual > opts.tol {
        return Err(Error::NotConverged { residual, iterations });
    }
    Ok(GroundStateResult { energy: e0, vector, residual, iterations, second_energy: e1, degenerate })
}

fn dense_lowest_two(h: &SparseOperator) -> (f64, Vec<f64>, f64, Vec<f64>) {
    let eig = SymmetricEigen::new(h.to_dense());
    let mut order: Vec<usize> = (0..h.dim()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let col = |i: usize| eig.eigenvectors.column(order[i]).iter().copied().collect::<Vec<f64>>();
    (eig.eigenvalues[order[0]], col(0), eig.eigenvalues[order[1]], col(1))
}

struct Eigenpair {
    value: f64,
    vector: Vec<f64>,
    matvecs: usize,
}

/// Lowest eigenpair of `H` restricted to the complement of `locked`.
fn lowest_pair(h: &SparseOperator, locked: &[Vec<f64>], start: Vec<f64>, opts: &SolverOptions) -> Result<Eigenpair> {
    let n = h.dim();
    let free = n - locked.len();
    if free == 0 {
        return Err(Error::InvalidArgument("no dimensions left after locking".into()));
    }
    let m = opts.basis_size.max(4).min(free);
    let keep = opts.keep.clamp(1, m.saturating_sub(2).max(1));

    let mut v = start;
    project_out(&mut v, locked);
    if normalize(&mut v) < 1e-12 {
        v = scrambled_start(n);
        project_out(&mut v, locked);
        normalize(&mut v);
    }

    let mut basis: Vec<Vec<f64>> = vec![v];
    // projected operator, (m + 1) x m: column j holds V^T H v_j plus the
    // outgoing coefficient in row j + 1
    let mut proj = DMatrix::<f64>::zeros(m + 1, m);
    let mut matvecs = 0usize;
    let mut w = vec![0.0; n];
    let norm_est = {
        let d = h.diagonal();
        d.iter().fold(0.0f64, |a, x| a.max(x.abs())).max(1.0)
    };

    loop {
        // extend the basis to m vectors
        let mut beta = 0.0;
        let mut next: Option<Vec<f64>> = None;
        while basis.len() <= m {
            let j = basis.len() - 1;
            h.apply_into(&basis[j], &mut w, opts.exec);
            matvecs += 1;
            project_out(&mut w, locked);
            for _ in 0..2 {
                for (i, vi) in basis.iter().enumerate() {
                    let c = dot(vi, &w);
                    proj[(i, j)] += c;
                    axpy(-c, vi, &mut w);
                }
            }
            beta = norm(&w);
            proj[(j + 1, j)] = beta;
            if beta <= 1e-13 * norm_est {
                beta = 0.0;
                break;
            }
            let f: Vec<f64> = w.iter().map(|x| x / beta).collect();
            if basis.len() == m {
                next = Some(f);
                break;
            }
            basis.push(f);
        }

        let k = basis.len();
        let t = symmetric_part(&proj, k);
        let eig = SymmetricEigen::new(t);
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let s0 = eig.eigenvectors.column(order[0]);
        let estimate = beta * s0[k - 1].abs();

        if estimate <= 0.5 * opts.tol || next.is_none() {
            let mut y = combine(&basis, s0.iter().copied());
            project_out(&mut y, locked);
            normalize(&mut y);
            let value = rayleigh(h, &y, opts.exec);
            let res = residual_norm_locked(h, &y, value, locked, opts.exec);
            matvecs += 2;
            if res <= opts.tol || next.is_none() {
                return Ok(Eigenpair { value, vector: y, matvecs });
            }
        }
        if matvecs >= opts.max_iter {
            return Err(Error::NotConverged { residual: estimate, iterations: matvecs });
        }

        // thick restart: keep the lowest Ritz vectors plus the outgoing vector
        let kk = keep.min(k - 1);
        let mut new_basis: Vec<Vec<f64>> =
            (0..kk).map(|i| combine(&basis, eig.eigenvectors.column(order[i]).iter().copied())).collect();
        let mut new_proj = DMatrix::<f64>::zeros(m + 1, m);
        for i in 0..kk {
            new_proj[(i, i)] = eig.eigenvalues[order[i]];
            new_proj[(kk, i)] = beta * eig.eigenvectors[(k - 1, order[i])];
        }
        new_basis.push(next.expect("restart only with a full basis"));
        basis = new_basis;
        proj = new_proj;
    }
}

/// Upper-left `k x k` block, symmetrized.
fn symmetric_part(proj: &DMatrix<f64>, k: usize) -> DMatrix<f64> {
    DMatrix::from_fn(k, k, |i, j| 0.5 * (proj[(i, j)] + proj[(j, i)]))
}

fn combine(basis: &[Vec<f64>], coeffs: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut y = vec![0.0; basis[0].len()];
    for (vi, c) in basis.iter().zip(coeffs) {
        axpy(c, vi, &mut y);
    }
    y
}

fn rayleigh(h: &SparseOperator, y: &[f64], exec: Execution) -> f64 {
    dot(y, &h.apply(y, exec))
}

pub(crate) fn residual_norm(h: &SparseOperator, y: &[f64], value: f64, exec: Execution) -> f64 {
    residual_norm_locked(h, y, value, &[], exec)
}

fn residual_norm_locked(h: &SparseOperator, y: &[f64], value: f64, locked: &[Vec<f64>], exec: Execution) -> f64 {
    let mut r = h.apply(y, exec);
    project_out(&mut r, locked);
    axpy(-value, y, &mut r);
    norm(&r)
}

/// Fixed pseudo-random vector (splitmix64 of the index); has no reason to
/// share a symmetry of the operator, unlike a structured start.
fn scrambled_start(n: usize) -> Vec<f64> {
    (0..n as u64)
        .map(|i| {
            let mut z = i.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^= z >> 31;
            (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        })
        .collect()
}

fn project_out(x: &mut [f64], locked: &[Vec<f64>]) {
    for _ in 0..2 {
        for u in locked {
            let c = dot(u, x);
            axpy(-c, u, x);
        }
    }
}

fn fix_sign(v: &mut [f64]) {
    let pivot = v.iter().copied().fold(0.0f64, |best, x| if x.abs() > best.abs() { x } else { best });
    if pivot < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let nrm = norm(v);
    if nrm > 0.0 {
        v.iter_mut().for_each(|x| *x /= nrm);
    }
    nrm
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += alpha * xi);
}
