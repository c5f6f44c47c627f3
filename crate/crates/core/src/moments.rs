//! Single-mode moment data and the centered reduction every criterion uses.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Slack allowed in the physicality checks.
pub const PHYSICALITY_TOL: f64 = 1e-9;

/// Below this magnitude the phase of the centered `<a^2>` is reported as zero.
const ZERO_PHASE_CUTOFF: f64 = 1e-14;

/// Raw moments `<a>`, `<a^2>` and `<a^dagger a>` of one bosonic mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleModeMoments {
    pub mean_a: Complex64,
    pub a_squared: Complex64,
    pub photon_number: f64,
}

impl SingleModeMoments {
    pub fn new(mean_a: Complex64, a_squared: Complex64, photon_number: f64) -> Self {
        Self { mean_a, a_squared, photon_number }
    }

    /// Zero displacement; `<a^2> = v e^{i theta}`, `<a^dagger a> = n`.
    pub fn from_polar(v: f64, theta: f64, n: f64) -> Self {
        Self::new(Complex64::new(0.0, 0.0), Complex64::from_polar(v, theta), n)
    }

    pub fn vacuum() -> Self {
        Self::from_polar(0.0, 0.0, 0.0)
    }
}

/// Second moments after subtracting the displacement, in polar form:
/// `<da^2> = v e^{i theta}` and `<da^dagger da> = n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CenteredMoments {
    pub v: f64,
    pub theta: f64,
    pub n: f64,
}

impl CenteredMoments {
    /// Checked constructor. `theta` is wrapped into `[0, 2pi)`.
    pub fn new(v: f64, theta: f64, n: f64) -> Result<Self> {
        if !(v.is_finite() && theta.is_finite() && n.is_finite()) || v < 0.0 {
            return Err(Error::Unphysical { v, n });
        }
        let c = Self { v, theta: wrap_angle(theta), n };
        if validate_physical(&c) {
            Ok(c)
        } else {
            Err(Error::Unphysical { v, n })
        }
    }

    /// Builds from a complex `<da^2>` and real `<da^dagger da>`.
    pub fn from_complex(a_squared: Complex64, n: f64) -> Result<Self> {
        let v = a_squared.norm();
        let theta = if v < ZERO_PHASE_CUTOFF { 0.0 } else { wrap_angle(a_squared.arg()) };
        Self::new(v, theta, n)
    }

    /// `v e^{i theta}`.
    pub fn a_squared(&self) -> Complex64 {
        Complex64::from_polar(self.v, self.theta)
    }

    /// Smallest quadrature variance of the mode (vacuum level 1/2).
    pub fn min_quadrature_variance(&self) -> f64 {
        self.n + 0.5 - self.v
    }
}

/// Coherent displacement `alpha` followed by squeezing with `beta = strength e^{i angle}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezedCoherentParams {
    pub alpha: Complex64,
    pub strength: f64,
    pub angle: f64,
}

impl SqueezedCoherentParams {
    pub fn new(alpha: Complex64, strength: f64, angle: f64) -> Result<Self> {
        if !(strength.is_finite() && strength >= 0.0) {
            return Err(Error::InvalidArgument(format!("squeezing strength must be finite and >= 0, got {strength}")));
        }
        if !(alpha.re.is_finite() && alpha.im.is_finite() && angle.is_finite()) {
            return Err(Error::InvalidArgument("non-finite squeezed-state parameter".into()));
        }
        Ok(Self { alpha, strength, angle })
    }

    pub fn squeezed_vacuum(strength: f64, angle: f64) -> Result<Self> {
        Self::new(Complex64::new(0.0, 0.0), strength, angle)
    }
}

/// Closed-form moments of `S(beta) D(alpha) |0>`.
///
/// The squeeze operator is `exp[(beta* a^2 - beta a^dagger^2) / 2]`, so with
/// `C = cosh r`, `S = sinh r`:
///
/// ```text
/// <a>            = C alpha - S e^{i theta} alpha*
/// <a^2>          = C^2 alpha^2 + S^2 e^{2 i theta} alpha*^2 - C S e^{i theta} (2|alpha|^2 + 1)
/// <a^dagger a>   = C^2 |alpha|^2 + S^2 (1 + |alpha|^2) - C S (e^{i theta} alpha*^2 + e^{-i theta} alpha^2)
/// ```
///
/// The first two terms of `<a^2>` are summed; that is the only reading
/// consistent with the `alpha = 0` limit.
pub fn squeezed_coherent_moments(params: &SqueezedCoherentParams) -> SingleModeMoments {
    let (c, s) = (params.strength.cosh(), params.strength.sinh());
    let alpha = params.alpha;
    let alpha_c = alpha.conj();
    let phase = Complex64::from_polar(1.0, params.angle);
    let abs2 = alpha.norm_sqr();

    let mean_a = alpha * c - phase * alpha_c * s;
    let a_squared =
        alpha * alpha * (c * c) + phase * phase * alpha_c * alpha_c * (s * s) - phase * (c * s * (2.0 * abs2 + 1.0));
    let cross = phase * alpha_c * alpha_c + phase.conj() * alpha * alpha;
    let photon_number = c * c * abs2 + s * s * (1.0 + abs2) - c * s * cross.re;

    SingleModeMoments { mean_a, a_squared, photon_number }
}

/// Removes the displacement: `<da^2> = <a^2> - <a>^2`, `<da^dagger da> = <a^dagger a> - |<a>|^2`.
pub fn center(m: &SingleModeMoments) -> Result<CenteredMoments> {
    let d2 = m.a_squared - m.mean_a * m.mean_a;
    let n = m.photon_number - m.mean_a.norm_sqr();
    CenteredMoments::from_complex(d2, n)
}

/// `n >= -eps` and `v^2 <= n(n+1) + eps`.
///
/// The second slack is relative once `n(n+1)` exceeds one: for strongly
/// squeezed pure states both sides are ~`e^{4r}/16` and agree only to
/// rounding.
pub fn validate_physical(c: &CenteredMoments) -> bool {
    let bound = c.n * (c.n + 1.0);
    c.n >= -PHYSICALITY_TOL && c.v * c.v <= bound + PHYSICALITY_TOL * bound.max(1.0)
}

pub(crate) fn wrap_angle(x: f64) -> f64 {
    let w = x.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}
