//! Brute-force check of the Gaussian formulas in a truncated Fock basis.
//!
//! A single-mode state vector is sent through the beam splitter by expanding
//! every `|n, 0>` binomially, and the output covariance matrix is measured
//! directly from the quadrature operators. Nothing here reuses the closed-form
//! covariance blocks.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::moments::SingleModeMoments;
use crate::{BeamSplitterParams, CovarianceBlocks, Error, Result, SqueezedCoherentParams};

/// Weight allowed in the highest retained Fock level.
pub const TRUNCATION_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// `a |n> = sqrt(n) |n-1>` as a dense `dim x dim` matrix.
pub fn annihilation_matrix(dim: usize) -> DMatrix<f64> {
    DMatrix::from_fn(dim, dim, |i, j| if j == i + 1 { (j as f64).sqrt() } else { 0.0 })
}

/// Normalized single-mode state in `span{|0>, ..., |dim-1>}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    coefficients: Vec<Complex64>,
}

impl FockVector {
    /// Normalizes `coefficients`; fails on fewer than two levels or a zero vector.
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::InvalidArgument("Fock dimension must be at least 2".into()));
        }
        let norm = l2(&coefficients);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidArgument("cannot normalize a zero state".into()));
        }
        Ok(Self { coefficients: coefficients.into_iter().map(|c| c / norm).collect() })
    }

    pub fn number_state(n: usize, dim: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::InvalidArgument(format!("|{n}> does not fit in dimension {dim}")));
        }
        let mut c = vec![ZERO; dim];
        c[n] = Complex64::new(1.0, 0.0);
        Self::new(c)
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn norm(&self) -> f64 {
        l2(&self.coefficients)
    }

    /// Probability in the highest retained level.
    pub fn tail_mass(&self) -> f64 {
        self.coefficients[self.dim() - 1].norm_sqr()
    }

    /// False when the truncation visibly cuts the state off.
    pub fn truncation_ok(&self) -> bool {
        self.tail_mass() < TRUNCATION_TOL
    }

    /// `<a>`, `<a^2>` and `<a^dagger a>` using lowering operations only, so the
    /// result is exact for the truncated vector.
    pub fn moments(&self) -> SingleModeMoments {
        let a1 = lower(&self.coefficients);
        let a2 = lower(&a1);
        SingleModeMoments::new(inner(&self.coefficients, &a1), inner(&self.coefficients, &a2), inner(&a1, &a1).re)
    }
}

/// Two-mode state, coefficient of `|n1, n2>` stored at `n1 * d2 + n2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeVector {
    d1: usize,
    d2: usize,
    coefficients: Vec<Complex64>,
}

impl TwoModeVector {
    pub fn dims(&self) -> (usize, usize) {
        (self.d1, self.d2)
    }

    pub fn get(&self, n1: usize, n2: usize) -> Complex64 {
        self.coefficients[n1 * self.d2 + n2]
    }

    pub fn norm(&self) -> f64 {
        l2(&self.coefficients)
    }

    /// `<a1 a2>`.
    pub fn expect_a1a2(&self) -> Complex64 {
        let mut acc = ZERO;
        for n1 in 1..self.d1 {
            for n2 in 1..self.d2 {
                let s = ((n1 * n2) as f64).sqrt();
                acc += self.get(n1 - 1, n2 - 1).conj() * self.get(n1, n2) * s;
            }
        }
        acc
    }

    /// `<a1^dagger a1>`.
    pub fn photon_number_1(&self) -> f64 {
        (0..self.d1)
            .flat_map(|n1| (0..self.d2).map(move |n2| (n1, n2)))
            .map(|(n1, n2)| n1 as f64 * self.get(n1, n2).norm_sqr())
            .sum()
    }

    fn padded(&self) -> Self {
        let (d1, d2) = (self.d1 + 1, self.d2 + 1);
        let mut c = vec![ZERO; d1 * d2];
        for n1 in 0..self.d1 {
            for n2 in 0..self.d2 {
                c[n1 * d2 + n2] = self.get(n1, n2);
            }
        }
        Self { d1, d2, coefficients: c }
    }
}

/// How the input creation operator is carried through the splitter.
///
/// The splitter acts on annihilators as `a1 -> t e^{i phi} a1 + r a2`,
/// `a2 -> -r a1 + t e^{-i phi} a2`. Inverting that unitary and taking the
/// adjoint gives the Schrodinger-picture image of the input creation operator,
/// `a^dagger -> mu1 a1^dagger + mu2 a2^dagger` with `(mu1, mu2) = (t e^{i phi}, -r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseConvention {
    #[default]
    Standard,
    /// Conjugated splitter phase; wrong on purpose, used as a negative control.
    Corrupted,
}

impl PhaseConvention {
    pub fn creation_image(self, bs: &BeamSplitterParams) -> (Complex64, Complex64) {
        let phase = match self {
            PhaseConvention::Standard => bs.phi,
            PhaseConvention::Corrupted => -bs.phi,
        };
        (Complex64::from_polar(bs.t, phase), Complex64::new(-bs.r, 0.0))
    }
}

/// Sends `input` into port 1 with vacuum in port 2.
///
/// `|n, 0> -> sum_k sqrt(C(n, k)) mu1^k mu2^{n-k} |k, n-k>`. Photon number is
/// conserved, so output dimensions equal the input dimension and nothing is
/// lost.
pub fn apply_beam_splitter(input: &FockVector, bs: &BeamSplitterParams) -> TwoModeVector {
    apply_beam_splitter_with(input, bs, PhaseConvention::Standard)
}

pub fn apply_beam_splitter_with(
    input: &FockVector,
    bs: &BeamSplitterParams,
    convention: PhaseConvention,
) -> TwoModeVector {
    let d = input.dim();
    let (mu1, mu2) = convention.creation_image(bs);
    let ln_fact = ln_factorials(d);
    let mut out = vec![ZERO; d * d];
    for (n, &cn) in input.coefficients().iter().enumerate() {
        if cn == ZERO {
            continue;
        }
        for k in 0..=n {
            let binom = (0.5 * (ln_fact[n] - ln_fact[k] - ln_fact[n - k])).exp();
            out[k * d + (n - k)] += cn * mu1.powu(k as u32) * mu2.powu((n - k) as u32) * binom;
        }
    }
    TwoModeVector { d1: d, d2: d, coefficients: out }
}

/// Symmetrized, centered quadrature covariance measured on `state`.
///
/// Each quadrature is applied once in a space padded by one level per mode, so
/// `<Y_i Y_j> = <Y_i psi | Y_j psi>` holds exactly for the stored vector.
pub fn two_mode_covariance(state: &TwoModeVector) -> CovarianceBlocks {
    let psi = state.padded();
    let ys: Vec<Vec<Complex64>> = (0..4).map(|k| apply_quadrature(&psi, k)).collect();
    let means: Vec<f64> = ys.iter().map(|y| inner(&psi.coefficients, y).re).collect();
    let mut v = nalgebra::Matrix4::zeros();
    for i in 0..4 {
        for j in i..4 {
            let val = inner(&ys[i], &ys[j]).re - means[i] * means[j];
            v[(i, j)] = val;
            v[(j, i)] = val;
        }
    }
    CovarianceBlocks::from_matrix(&v)
}

/// Index order `(x1, p1, x2, p2)`, with `x = (a + a^dagger)/sqrt2`,
/// `p = i(a^dagger - a)/sqrt2`.
fn apply_quadrature(psi: &TwoModeVector, which: usize) -> Vec<Complex64> {
    let (d1, d2) = (psi.d1, psi.d2);
    let mode1 = which < 2;
    let is_p = which % 2 == 1;
    let mut out = vec![ZERO; d1 * d2];
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for n1 in 0..d1 {
        for n2 in 0..d2 {
            let n = if mode1 { n1 } else { n2 };
            let idx = |m: usize| if mode1 { m * d2 + n2 } else { n1 * d2 + m };
            // (a psi)[n] = sqrt(n+1) psi[n+1], (a^dagger psi)[n] = sqrt(n) psi[n-1]
            let lowered = if n + 1 < if mode1 { d1 } else { d2 } {
                psi.coefficients[idx(n + 1)] * ((n + 1) as f64).sqrt()
            } else {
                ZERO
            };
            let raised = if n > 0 { psi.coefficients[idx(n - 1)] * (n as f64).sqrt() } else { ZERO };
            out[n1 * d2 + n2] = if is_p { I * (raised - lowered) * s } else { (lowered + raised) * s };
        }
    }
    out
}

/// `S(beta) D(alpha) |0>` by exponentiating the truncated generators.
///
/// `D = exp(alpha a^dagger - alpha* a)`, `S = exp[(beta* a^2 - beta a^dagger^2)/2]`
/// with `beta = strength e^{i angle}`; the factor one half matches the moment
/// formulas in [`crate::moments`]. Check [`FockVector::truncation_ok`] on the
/// result: a heavy top level means `dim` is too small.
pub fn squeezed_coherent_vector(params: &SqueezedCoherentParams, dim: usize) -> Result<FockVector> {
    if dim < 2 {
        return Err(Error::InvalidArgument("Fock dimension must be at least 2".into()));
    }
    let mut state = vec![ZERO; dim];
    state[0] = Complex64::new(1.0, 0.0);

    let alpha = params.alpha;
    let displacement = Banded::from_fn(dim, |i, j| {
        if i == j + 1 {
            alpha * (i as f64).sqrt()
        } else if j == i + 1 {
            -alpha.conj() * (j as f64).sqrt()
        } else {
            ZERO
        }
    });
    state = displacement.expm_apply(&state);

    let beta = Complex64::from_polar(params.strength, params.angle);
    let squeeze = Banded::from_fn(dim, |i, j| {
        if j == i + 2 {
            // <i| a^2 |i+2> = sqrt((i+1)(i+2))
            beta.conj() * 0.5 * (((i + 1) * (i + 2)) as f64).sqrt()
        } else if i == j + 2 {
            -beta * 0.5 * (((j + 1) * (j + 2)) as f64).sqrt()
        } else {
            ZERO
        }
    });
    state = squeeze.expm_apply(&state);

    FockVector::new(state)
}

/// Sparse matrix with at most a handful of nonzeros per row.
struct Banded {
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl Banded {
    const BAND: usize = 2;

    fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let rows = (0..dim)
            .map(|i| {
                let lo = i.saturating_sub(Self::BAND);
                let hi = (i + Self::BAND + 1).min(dim);
                (lo..hi).map(|j| (j, f(i, j))).filter(|(_, x)| *x != ZERO).collect()
            })
            .collect();
        Self { rows }
    }

    fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.rows.iter().map(|row| row.iter().map(|&(j, a)| a * x[j]).sum()).collect()
    }

    fn inf_norm(&self) -> f64 {
        self.rows.iter().map(|row| row.iter().map(|(_, a)| a.norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// `exp(G) x` by `s` scaled Taylor steps, `s` chosen so `||G/s|| <= 1`.
    fn expm_apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let steps = self.inf_norm().ceil().max(1.0) as usize;
        let scale = 1.0 / steps as f64;
        let mut v = x.to_vec();
        for _ in 0..steps {
            let mut term = v.clone();
            let mut acc = v;
            for k in 1..=80 {
                term = self.apply(&term);
                let f = scale / k as f64;
                term.iter_mut().for_each(|z| *z *= f);
                acc.iter_mut().zip(&term).for_each(|(a, t)| *a += t);
                if l2(&term) <= 1e-18 * l2(&acc) {
                    break;
                }
            }
            v = acc;
        }
        v
    }
}

/// Covariance blocks predicted by the Gaussian formulas for this input, using
/// the moments of the (truncated) vector itself.
pub fn predicted_covariance(input: &FockVector, bs: &BeamSplitterParams) -> Result<CovarianceBlocks> {
    let c = crate::moments::center(&input.moments())?;
    crate::covariance_from_input(&c, bs)
}

/// Largest elementwise gap between measured and predicted covariance.
pub fn covariance_discrepancy(input: &FockVector, bs: &BeamSplitterParams, convention: PhaseConvention) -> Result<f64> {
    let measured = two_mode_covariance(&apply_beam_splitter_with(input, bs, convention));
    Ok(measured.max_abs_diff(&predicted_covariance(input, bs)?))
}

fn lower(x: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ZERO; x.len()];
    for n in 1..x.len() {
        out[n - 1] = x[n] * (n as f64).sqrt();
    }
    out
}

fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn l2(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}
