//! Two-mode Gaussian description of a beam splitter fed with one nonvacuum
//! mode, and the entanglement criteria evaluated on it.
//!
//! Quadratures are `x = (a^dagger + a)/sqrt2`, `p = i(a^dagger - a)/sqrt2`, so the
//! vacuum covariance is `I/2`. The splitter maps (Heisenberg picture)
//! `a1 -> t e^{i phi} a1 + r a2` and `a2 -> -r a1 + t e^{-i phi} a2`, with the
//! input in port 1 and vacuum in port 2.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::moments::{center, validate_physical, wrap_angle, CenteredMoments, SingleModeMoments};
use crate::{Error, Result};

const UNITARITY_TOL: f64 = 1e-12;
/// Clamp window for the symplectic discriminant and `det V`, relative to the
/// squared scale of the matrix.
const CLAMP_TOL: f64 = 1e-10;

/// Transmission `t`, reflection `r` and phase `phi` of a lossless splitter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamSplitterParams {
    pub t: f64,
    pub r: f64,
    pub phi: f64,
}

impl BeamSplitterParams {
    /// From transmission alone; `r = sqrt(1 - t^2)`.
    pub fn new(t: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) || !phi.is_finite() {
            return Err(Error::InvalidBeamSplitter { t, r: f64::NAN });
        }
        Ok(Self { t, r: (1.0 - t * t).max(0.0).sqrt(), phi: wrap_angle(phi) })
    }

    pub fn with_reflection(t: f64, r: f64, phi: f64) -> Result<Self> {
        let ok = t >= 0.0 && r >= 0.0 && (t * t + r * r - 1.0).abs() <= UNITARITY_TOL && phi.is_finite();
        if !ok {
            return Err(Error::InvalidBeamSplitter { t, r });
        }
        Ok(Self { t, r, phi: wrap_angle(phi) })
    }

    /// 50:50 splitter, `t = r = 1/sqrt2`.
    pub fn balanced(phi: f64) -> Self {
        Self { t: FRAC_1_SQRT_2, r: FRAC_1_SQRT_2, phi: wrap_angle(phi) }
    }
}

/// Blocks of the output covariance `V = [[A, C], [C^T, B]]`; `A` belongs to
/// output mode 1, `B` to mode 2, `C` holds the cross correlations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceBlocks {
    pub a: Matrix2<f64>,
    pub b: Matrix2<f64>,
    pub c: Matrix2<f64>,
}

impl CovarianceBlocks {
    pub fn vacuum() -> Self {
        Self { a: Matrix2::identity() * 0.5, b: Matrix2::identity() * 0.5, c: Matrix2::zeros() }
    }

    /// The full 4x4 matrix in the ordering `(x1, p1, x2, p2)`.
    pub fn assemble(&self) -> Matrix4<f64> {
        let mut v = Matrix4::zeros();
        v.fixed_view_mut::<2, 2>(0, 0).copy_from(&self.a);
        v.fixed_view_mut::<2, 2>(0, 2).copy_from(&self.c);
        v.fixed_view_mut::<2, 2>(2, 0).copy_from(&self.c.transpose());
        v.fixed_view_mut::<2, 2>(2, 2).copy_from(&self.b);
        v
    }

    /// Splits a 4x4 matrix back into blocks (the lower-left block is ignored).
    pub fn from_matrix(v: &Matrix4<f64>) -> Self {
        Self {
            a: v.fixed_view::<2, 2>(0, 0).into_owned(),
            b: v.fixed_view::<2, 2>(2, 2).into_owned(),
            c: v.fixed_view::<2, 2>(0, 2).into_owned(),
        }
    }

    pub fn det_v(&self) -> f64 {
        self.assemble().determinant()
    }

    /// Symplectic eigenvalues of `V` itself (no partial transpose). Both are at
    /// least 1/2 for a physical state.
    pub fn symplectic_spectrum(&self) -> Result<SymplecticEta> {
        let sigma = self.a.determinant() + self.b.determinant() + 2.0 * self.c.determinant();
        eta_from_invariants(sigma, self.det_v())
    }

    /// Largest elementwise difference, comparing the full assembled matrices.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.assemble() - other.assemble()).amax()
    }
}

/// Builds the output covariance from the centered input moments.
///
/// ```text
/// A = t^2 [[ v cos(th+2ph) + n,  v sin(th+2ph)     ],
///          [ v sin(th+2ph),     -v cos(th+2ph) + n ]] + I/2
/// B = r^2 [[ v cos th + n,       v sin th          ],
///          [ v sin th,          -v cos th + n      ]] + I/2
/// C = t r [[ -(v cos(th+ph) + n cos ph),  -v sin(th+ph) + n sin ph ],
///          [ -(v sin(th+ph) + n sin ph),   v cos(th+ph) - n cos ph ]]
/// ```
pub fn covariance_from_input(c: &CenteredMoments, bs: &BeamSplitterParams) -> Result<CovarianceBlocks> {
    if !validate_physical(c) || c.v < 0.0 {
        return Err(Error::Unphysical { v: c.v, n: c.n });
    }
    let (v, n, th, ph) = (c.v, c.n, c.theta, bs.phi);
    let (t2, r2, tr) = (bs.t * bs.t, bs.r * bs.r, bs.t * bs.r);

    let single = |scale: f64, angle: f64| {
        let (s, co) = angle.sin_cos();
        Matrix2::new(scale * (co * v + n) + 0.5, scale * v * s, scale * v * s, scale * (-co * v + n) + 0.5)
    };
    let a = single(t2, th + 2.0 * ph);
    let b = single(r2, th);

    let (s1, c1) = (th + ph).sin_cos();
    let (sp, cp) = ph.sin_cos();
    let cross = Matrix2::new(-(c1 * v + cp * n), -s1 * v + sp * n, -(s1 * v + sp * n), c1 * v - cp * n) * tr;

    Ok(CovarianceBlocks { a, b, c: cross })
}

/// Symplectic eigenvalues of the partially transposed output state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymplecticEta {
    pub minus: f64,
    pub plus: f64,
}

/// `eta_pm = (1/sqrt2) (sigma +- sqrt(sigma^2 - 4 det V))^{1/2}` with
/// `sigma = det A + det B - 2 det C`.
pub fn symplectic_eta(blocks: &CovarianceBlocks) -> Result<SymplecticEta> {
    let sigma = blocks.a.determinant() + blocks.b.determinant() - 2.0 * blocks.c.determinant();
    eta_from_invariants(sigma, blocks.det_v())
}

fn eta_from_invariants(sigma: f64, det_v: f64) -> Result<SymplecticEta> {
    let scale = sigma.abs().max(1.0);
    let tol = CLAMP_TOL * scale * scale;
    if det_v < -tol {
        return Err(Error::NegativeDeterminant(det_v));
    }
    let det_v = det_v.max(0.0);
    let mut disc = sigma * sigma - 4.0 * det_v;
    if disc < 0.0 {
        if disc < -tol {
            return Err(Error::NegativeDiscriminant(disc));
        }
        disc = 0.0;
    }
    let root = disc.sqrt();
    let plus = ((sigma + root) / 2.0).max(0.0).sqrt();
    // sigma - root loses everything to cancellation when det V << sigma^2;
    // eta- eta+ = sqrt(det V) is exact.
    let minus = if plus > 0.0 { det_v.sqrt() / plus } else { 0.0 };
    Ok(SymplecticEta { minus: minus.min(plus), plus })
}

/// `max(0, -ln(2 eta_minus))`.
pub fn log_negativity(eta_minus: f64) -> f64 {
    (-(2.0 * eta_minus).ln()).max(0.0)
}

const J: Matrix2<f64> = Matrix2::new(0.0, 1.0, -1.0, 0.0);

/// Simon's invariant; negative values certify entanglement of the outputs.
///
/// `det A det B + (1/4 - |det C|)^2 - tr(A J C J B J C^T J) - (det A + det B)/4`
pub fn simon_lambda(blocks: &CovarianceBlocks) -> f64 {
    let (da, db, dc) = (blocks.a.determinant(), blocks.b.determinant(), blocks.c.determinant());
    let chain = blocks.a * J * blocks.c * J * blocks.b * J * blocks.c.transpose() * J;
    da * db + (0.25 - dc.abs()).powi(2) - chain.trace() - 0.25 * (da + db)
}

/// Duan-Giedke-Cirac-Zoller variance sum at the optimal `c`.
///
/// The output moments are `<a1^dagger a1> = t^2 n`, `<a2^dagger a2> = r^2 n` and
/// `<a1 a2> = <a2 a1> = -t r e^{i phi} v e^{i theta}`. With
/// `|c|^2 = sqrt(<a2^dagger a2> / <a1^dagger a1>)` and the sign of `c` opposite to
/// `Re{<a1 a2> + <a2 a1>}`:
///
/// ```text
/// lambda = 2|c|^2 <a1^dagger a1> + (2/|c|^2) <a2^dagger a2> + 2 sign(c) Re{<a1 a2> + <a2 a1>}
/// ```
///
/// The second term uses mode 2's occupation; only that choice makes the stated
/// `|c|` the minimizer. An empty output port (`t = 0`, `r = 0` or `n = 0`)
/// yields 0.
pub fn dgcz_lambda(c: &CenteredMoments, bs: &BeamSplitterParams) -> f64 {
    let n1 = bs.t * bs.t * c.n;
    let n2 = bs.r * bs.r * c.n;
    if n1 <= 0.0 || n2 <= 0.0 {
        return 0.0;
    }
    let cross = -bs.t * bs.r * c.v * (c.theta + bs.phi).cos();
    let re_sum = 2.0 * cross;
    let c2 = (n2 / n1).sqrt();
    let sign = if re_sum > 0.0 { -1.0 } else { 1.0 };
    2.0 * c2 * n1 + 2.0 / c2 * n2 + 2.0 * sign * re_sum
}

/// `|<da^2>| > <da^dagger da>` on centered moments.
pub fn dgcz_simple(c: &CenteredMoments) -> bool {
    c.v > c.n
}

/// `|<a>|^2 > <a^dagger a>` on the raw moments.
pub fn hz_condition(m: &SingleModeMoments) -> bool {
    m.mean_a.norm_sqr() > m.photon_number
}

/// Every quantity the crate reports for one input at one splitter setting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonclassicalityReport {
    pub eta_minus: f64,
    pub eta_plus: f64,
    #[serde(rename = "E_N")]
    pub e_n: f64,
    pub lambda_simon: f64,
    pub lambda_dgcz: f64,
    pub dgcz_simple: bool,
    pub hz: bool,
    pub best_t: f64,
    pub best_phi: f64,
}

impl NonclassicalityReport {
    /// Evaluates all criteria at a fixed splitter.
    pub fn at_fixed(m: &SingleModeMoments, bs: &BeamSplitterParams) -> Result<Self> {
        let c = center(m)?;
        let mut report = Self::from_centered(&c, bs)?;
        report.hz = hz_condition(m);
        Ok(report)
    }

    /// Same as [`at_fixed`](Self::at_fixed) for already-centered moments;
    /// `hz` is evaluated with zero displacement.
    pub fn from_centered(c: &CenteredMoments, bs: &BeamSplitterParams) -> Result<Self> {
        let blocks = covariance_from_input(c, bs)?;
        let eta = symplectic_eta(&blocks)?;
        Ok(Self {
            eta_minus: eta.minus,
            eta_plus: eta.plus,
            e_n: log_negativity(eta.minus),
            lambda_simon: simon_lambda(&blocks),
            lambda_dgcz: dgcz_lambda(c, bs),
            dgcz_simple: dgcz_simple(c),
            hz: hz_condition(&SingleModeMoments::from_polar(c.v, c.theta, c.n)),
            best_t: bs.t,
            best_phi: bs.phi,
        })
    }
}
