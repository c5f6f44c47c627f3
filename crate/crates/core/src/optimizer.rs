//! Maximization of the logarithmic negativity over the splitter settings.
//!
//! A uniform `(t, phi)` grid (which always contains the balanced splitter) is
//! followed by a compass search around the best cell. Ties are broken toward
//! lower `t`, then lower `phi`, so the result does not depend on scheduling.
//! When nothing beats zero the balanced splitter at `phi = 0` is reported, which
//! keeps the criteria evaluated there meaningful for classical inputs.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use serde::{Deserialize, Serialize};

use crate::gaussian::{covariance_from_input, dgcz_lambda, hz_condition, log_negativity, symplectic_eta};
use crate::moments::{center, squeezed_coherent_moments, validate_physical, wrap_angle};
use crate::{
    BeamSplitterParams, CenteredMoments, Error, Execution, NonclassicalityReport, Result, SingleModeMoments,
    SqueezedCoherentParams,
};

/// Improvements smaller than this are treated as ties.
const TIE_TOL: f64 = 1e-12;
/// Refinement stops once both steps fall below this.
const STEP_TOL: f64 = 1e-6;
const MIN_GRID: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub t_points: usize,
    pub phi_points: usize,
    pub theta_points: usize,
    pub refine_iters: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { t_points: 33, phi_points: 64, theta_points: 64, refine_iters: 40 }
    }
}

impl GridSpec {
    fn check(&self) -> Result<()> {
        if self.t_points < MIN_GRID || self.phi_points < MIN_GRID {
            return Err(Error::InvalidArgument(format!(
                "grids need at least {MIN_GRID} points, got t = {}, phi = {}",
                self.t_points, self.phi_points
            )));
        }
        Ok(())
    }

    /// Uniform on `[0, 1]` with both endpoints, plus `1/sqrt2` exactly.
    pub fn t_values(&self) -> Vec<f64> {
        let last = (self.t_points - 1) as f64;
        let mut ts: Vec<f64> = (0..self.t_points).map(|i| i as f64 / last).collect();
        if !ts.contains(&FRAC_1_SQRT_2) {
            ts.push(FRAC_1_SQRT_2);
            ts.sort_by(f64::total_cmp);
        }
        ts
    }

    /// Uniform on `[0, 2pi)`.
    pub fn phi_values(&self) -> Vec<f64> {
        (0..self.phi_points).map(|k| k as f64 * TAU / self.phi_points as f64).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub best_value: f64,
    pub best_t: f64,
    pub best_phi: f64,
    pub evaluations: usize,
}

/// Best result of an additional search over the squeezing angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaOptimum {
    pub theta: f64,
    pub result: OptimizationResult,
}

/// `E_N` at one splitter setting.
pub fn en_at(c: &CenteredMoments, t: f64, phi: f64) -> Result<f64> {
    let bs = BeamSplitterParams::new(t, phi)?;
    let eta = symplectic_eta(&covariance_from_input(c, &bs)?)?;
    Ok(log_negativity(eta.minus))
}

/// Maximizes `E_N(t, phi)` for fixed input moments.
pub fn maximize_en(c: &CenteredMoments, grid: &GridSpec, exec: Execution) -> Result<OptimizationResult> {
    grid.check()?;
    if !validate_physical(c) {
        return Err(Error::Unphysical { v: c.v, n: c.n });
    }

    let points: Vec<(f64, f64)> =
        grid.t_values().into_iter().flat_map(|t| grid.phi_values().into_iter().map(move |phi| (t, phi))).collect();
    let values = exec.map(&points, |&(t, phi)| en_at(c, t, phi));

    let mut best = OptimizationResult { best_value: f64::NEG_INFINITY, best_t: 0.0, best_phi: 0.0, evaluations: 0 };
    for (&(t, phi), value) in points.iter().zip(values) {
        let value = value?;
        best.evaluations += 1;
        if value > best.best_value + TIE_TOL {
            best.best_value = value;
            best.best_t = t;
            best.best_phi = phi;
        }
    }

    if best.best_value > 0.0 {
        refine(c, grid, &mut best)?;
    } else {
        best.best_t = FRAC_1_SQRT_2;
        best.best_phi = 0.0;
    }
    Ok(best)
}

fn refine(c: &CenteredMoments, grid: &GridSpec, best: &mut OptimizationResult) -> Result<()> {
    let mut step_t = 1.0 / (grid.t_points - 1) as f64;
    let mut step_phi = TAU / grid.phi_points as f64;

    for _ in 0..grid.refine_iters {
        if step_t < STEP_TOL && step_phi < STEP_TOL {
            break;
        }

        if step_t >= STEP_TOL {
            let mut moved = false;
            for t in [best.best_t - step_t, best.best_t + step_t] {
                let t = t.clamp(0.0, 1.0);
                if t == best.best_t {
                    continue;
                }
                let value = en_at(c, t, best.best_phi)?;
                best.evaluations += 1;
                if value > best.best_value + TIE_TOL {
                    best.best_value = value;
                    best.best_t = t;
                    moved = true;
                }
            }
            if !moved {
                step_t /= 2.0;
            }
        }

        if step_phi >= STEP_TOL {
            let mut moved = false;
            for phi in [best.best_phi - step_phi, best.best_phi + step_phi] {
                let phi = wrap_angle(phi);
                let value = en_at(c, best.best_t, phi)?;
                best.evaluations += 1;
                if value > best.best_value + TIE_TOL {
                    best.best_value = value;
                    best.best_phi = phi;
                    moved = true;
                }
            }
            if !moved {
                step_phi /= 2.0;
            }
        }
    }
    Ok(())
}

/// Outer search over the squeezing angle on `theta_points` uniform values in
/// `[0, 2pi)`; the `angle` field of `params` is ignored.
pub fn maximize_en_over_theta(
    params: &SqueezedCoherentParams,
    grid: &GridSpec,
    exec: Execution,
) -> Result<ThetaOptimum> {
    grid.check()?;
    if grid.theta_points < MIN_GRID {
        return Err(Error::InvalidArgument(format!(
            "theta grid needs at least {MIN_GRID} points, got {}",
            grid.theta_points
        )));
    }
    let thetas: Vec<f64> = (0..grid.theta_points).map(|k| k as f64 * TAU / grid.theta_points as f64).collect();
    let results = exec.map(&thetas, |&theta| {
        let p = SqueezedCoherentParams { angle: theta, ..*params };
        let c = center(&squeezed_coherent_moments(&p))?;
        maximize_en(&c, grid, Execution::Sequential)
    });

    let mut best: Option<ThetaOptimum> = None;
    for (&theta, result) in thetas.iter().zip(results) {
        let result = result?;
        match best {
            Some(b) if result.best_value <= b.result.best_value + TIE_TOL => {}
            _ => best = Some(ThetaOptimum { theta, result }),
        }
    }
    Ok(best.expect("theta grid is non-empty"))
}

/// Full report at the `E_N`-maximizing splitter.
///
/// `lambda_dgcz` is minimized over the splitter phase at the optimal `t`
/// (the DGCZ condition leaves `e^{i phi}` free); all other fields are taken at
/// `(best_t, best_phi)`.
pub fn report_maximized(m: &SingleModeMoments, grid: &GridSpec, exec: Execution) -> Result<NonclassicalityReport> {
    let c = center(m)?;
    let opt = maximize_en(&c, grid, exec)?;
    let bs = BeamSplitterParams::new(opt.best_t, opt.best_phi)?;
    let mut report = NonclassicalityReport::from_centered(&c, &bs)?;
    let dgcz_bs = BeamSplitterParams::new(opt.best_t, -c.theta)?;
    report.lambda_dgcz = dgcz_lambda(&c, &dgcz_bs);
    report.hz = hz_condition(m);
    Ok(report)
}
