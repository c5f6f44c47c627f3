use std::f64::consts::TAU;

use nonclass_core::dicke::{self, DickeConfig, Method, SolverOptions};
use nonclass_core::fock::{self, PhaseConvention};
use nonclass_core::{
    center, covariance_from_input, maximize_en, maximize_en_over_theta, report_maximized, squeezed_coherent_moments,
    BeamSplitterParams, Error, Execution, GridSpec, NonclassicalityReport, SingleModeMoments, SqueezedCoherentParams,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{
    DickeSweepArgs, GridArgs, MeasureArgs, Mode, OracleCheckArgs, SolverMethod, SqueezedSweepArgs, ThetaMode,
};
use crate::table::{format_float, Table};
use crate::{exit, Outcome};

/// Oracle-check pass threshold on the largest covariance entry gap.
pub const ORACLE_TOL: f64 = 1e-6;

pub const SQUEEZED_COLUMNS: [&str; 5] = ["r", "E_N_fixed_theta", "E_N_optimized_theta", "best_t", "best_phi"];
pub const DICKE_COLUMNS: [&str; 7] =
    ["g", "g_over_gc", "ground_energy", "mean_photon", "E_N", "lambda_simon", "degenerate_flag"];

/// Exit code for a library error.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Unphysical { .. } | Error::NegativeDiscriminant(_) | Error::NegativeDeterminant(_) => exit::UNPHYSICAL,
        Error::NotConverged { .. } => exit::NOT_CONVERGED,
        Error::InvalidBeamSplitter { .. } | Error::InvalidArgument(_) => exit::USAGE,
    }
}

fn from_error(e: &Error) -> Outcome {
    Outcome::fail(error_code(e), e.to_string())
}

fn grid(g: &GridArgs) -> GridSpec {
    GridSpec {
        t_points: g.t_points,
        phi_points: g.phi_points,
        theta_points: g.theta_points,
        refine_iters: g.refine_iters,
    }
}

/// `steps` evenly spaced values from `lo` to `hi` inclusive.
fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let last = (steps - 1) as f64;
    (0..steps).map(|i| if i + 1 == steps { hi } else { lo + (hi - lo) * i as f64 / last }).collect()
}

fn check_range(name: &str, lo: f64, hi: f64, steps: usize) -> Result<(), Outcome> {
    if !(lo.is_finite() && hi.is_finite()) || hi < lo || steps < 2 {
        return Err(Outcome::fail(
            exit::USAGE,
            format!("malformed {name} range: [{lo}, {hi}] with {steps} steps (need finite lo <= hi, steps >= 2)"),
        ));
    }
    Ok(())
}

pub fn measure(args: &MeasureArgs, exec: Execution) -> Outcome {
    let m = SingleModeMoments::new(
        Complex64::new(args.mean_re, args.mean_im),
        Complex64::from_polar(args.v, args.theta),
        args.n,
    );
    if args.v.is_nan() || args.v < 0.0 {
        return Outcome::fail(exit::UNPHYSICAL, format!("unphysical moments: |<a^2>| = {} is negative", args.v));
    }
    let report = match args.mode {
        Mode::Fixed => {
            BeamSplitterParams::new(args.t, args.phi).and_then(|bs| NonclassicalityReport::at_fixed(&m, &bs))
        }
        Mode::Maximize => report_maximized(&m, &grid(&args.grid), exec),
    };
    match report {
        Ok(r) => {
            let mut json = serde_json::to_string_pretty(&r).expect("report serializes");
            json.push('\n');
            Outcome::ok(json)
        }
        Err(e) => from_error(&e),
    }
}

pub fn squeezed_sweep(args: &SqueezedSweepArgs, exec: Execution) -> Outcome {
    if let Err(o) = check_range("r", args.r_min, args.r_max, args.steps) {
        return o;
    }
    if args.r_min < 0.0 {
        return Outcome::fail(exit::USAGE, format!("r_min must be >= 0, got {}", args.r_min));
    }
    let alpha = Complex64::new(args.alpha_re, args.alpha_im);
    let spec = grid(&args.grid);
    let rs = linspace(args.r_min, args.r_max, args.steps);

    // Rows in parallel; each row's inner searches stay sequential.
    let rows = exec.map(&rs, |&r| -> Result<[f64; 5], Error> {
        let params = SqueezedCoherentParams::new(alpha, r, args.theta)?;
        let fixed = maximize_en(&center(&squeezed_coherent_moments(&params))?, &spec, Execution::Sequential)?;
        let scanned = maximize_en_over_theta(&params, &spec, Execution::Sequential)?.result;
        // The fixed angle is itself a candidate of the angle search.
        let optimized = if scanned.best_value > fixed.best_value { scanned } else { fixed };
        let chosen = match args.theta_mode {
            ThetaMode::Fixed => fixed,
            ThetaMode::Optimize => optimized,
        };
        Ok([r, fixed.best_value, optimized.best_value, chosen.best_t, chosen.best_phi])
    });

    let mut table = Table::new(&SQUEEZED_COLUMNS);
    for row in rows {
        match row {
            Ok(values) => table.push_floats(&values),
            Err(e) => return from_error(&e),
        }
    }
    Outcome::ok(table.finish())
}

struct DickeRow {
    values: [f64; 7],
    failure: Option<Error>,
}

fn dicke_point(cfg: &DickeConfig, opts: &SolverOptions, spec: &GridSpec) -> DickeRow {
    let g_over_gc = cfg.g / cfg.g_c();
    let failed = |e: Error| DickeRow {
        values: [cfg.g, g_over_gc, f64::NAN, f64::NAN, f64::NAN, f64::NAN, -1.0],
        failure: Some(e),
    };
    let h = match dicke::build_hamiltonian(cfg) {
        Ok(h) => h,
        Err(e) => return failed(e),
    };
    let gs = match dicke::ground_state(&h, opts) {
        Ok(gs) => gs,
        Err(e) => return failed(e),
    };
    let m = dicke::field_moments(&gs, cfg);
    match report_maximized(&m, spec, Execution::Sequential) {
        Ok(report) => DickeRow {
            values: [
                cfg.g,
                g_over_gc,
                gs.energy,
                m.photon_number,
                report.e_n,
                report.lambda_simon,
                if gs.degenerate { 1.0 } else { 0.0 },
            ],
            failure: None,
        },
        Err(e) => failed(e),
    }
}

pub fn dicke_sweep(args: &DickeSweepArgs, exec: Execution) -> Outcome {
    let base = DickeConfig {
        n_atoms: args.n_atoms,
        fock_dim: args.fock_dim,
        omega: args.omega,
        omega_eg: args.omega_eg,
        g: args.g_min,
        counter_rotating: args.counter_rotating,
    };
    if let Err(e) = base.validate() {
        return from_error(&e);
    }
    let g_max = args.g_max.unwrap_or(2.0 * base.g_c());
    if let Err(o) = check_range("g", args.g_min, g_max, args.steps) {
        return o;
    }
    if args.tol.is_nan() || args.tol <= 0.0 || args.max_iter == 0 {
        return Outcome::fail(exit::USAGE, "tol must be > 0 and max-iter >= 1");
    }
    let opts = SolverOptions {
        method: match args.method {
            SolverMethod::Auto => Method::Auto,
            SolverMethod::Lanczos => Method::Lanczos,
            SolverMethod::Dense => Method::Dense,
        },
        tol: args.tol,
        max_iter: args.max_iter,
        mix_degenerate: args.mix_degenerate,
        ..SolverOptions::default()
    };
    let spec = grid(&args.grid);
    let gs = linspace(args.g_min, g_max, args.steps);
    let rows = exec.map(&gs, |&g| dicke_point(&base.with_g(g), &opts, &spec));

    let mut table = Table::new(&DICKE_COLUMNS);
    let mut first_failure: Option<Error> = None;
    for row in rows {
        table.push_floats(&row.values);
        if first_failure.is_none() {
            first_failure = row.failure;
        }
    }
    let output = table.finish();
    match first_failure {
        None => Outcome::ok(output),
        Some(e) => Outcome { output, code: error_code(&e), message: Some(e.to_string()) },
    }
}

#[derive(Debug, Clone, Copy)]
struct Trial {
    params: SqueezedCoherentParams,
    bs: BeamSplitterParams,
}

#[derive(Debug, Clone, Copy, Default)]
struct TrialResult {
    discrepancy: f64,
    closed_form_gap: f64,
    tail: f64,
}

fn draw_trials(args: &OracleCheckArgs) -> Result<Vec<Trial>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut trials = Vec::with_capacity(args.trials);
    for _ in 0..args.trials {
        let r = args.r_max * rng.random::<f64>();
        let theta = TAU * rng.random::<f64>();
        let alpha = Complex64::from_polar(args.alpha_max * rng.random::<f64>(), TAU * rng.random::<f64>());
        let t = rng.random::<f64>();
        let phi = TAU * rng.random::<f64>();
        trials.push(Trial {
            params: SqueezedCoherentParams::new(alpha, r, theta)?,
            bs: BeamSplitterParams::new(t, phi)?,
        });
    }
    Ok(trials)
}

fn run_trial(trial: &Trial, dim: usize, convention: PhaseConvention) -> Result<TrialResult, Error> {
    let psi = fock::squeezed_coherent_vector(&trial.params, dim)?;
    let discrepancy = fock::covariance_discrepancy(&psi, &trial.bs, convention)?;
    let measured = fock::two_mode_covariance(&fock::apply_beam_splitter_with(&psi, &trial.bs, convention));
    let closed = covariance_from_input(&center(&squeezed_coherent_moments(&trial.params))?, &trial.bs)?;
    Ok(TrialResult { discrepancy, closed_form_gap: measured.max_abs_diff(&closed), tail: psi.tail_mass() })
}

pub fn oracle_check(args: &OracleCheckArgs, exec: Execution) -> Outcome {
    if args.trials == 0 || args.dim < 3 {
        return Outcome::fail(exit::USAGE, "need trials >= 1 and dim >= 3");
    }
    if !(args.r_max >= 0.0 && args.r_max.is_finite() && args.alpha_max >= 0.0 && args.alpha_max.is_finite()) {
        return Outcome::fail(exit::USAGE, "r-max and alpha-max must be finite and >= 0");
    }
    let trials = match draw_trials(args) {
        Ok(t) => t,
        Err(e) => return from_error(&e),
    };
    let convention = if args.corrupt_phase { PhaseConvention::Corrupted } else { PhaseConvention::Standard };
    let results = exec.map(&trials, |trial| run_trial(trial, args.dim, convention));

    let mut worst = TrialResult::default();
    let mut worst_trial = 0;
    for (i, result) in results.into_iter().enumerate() {
        let r = match result {
            Ok(r) => r,
            Err(e) => return from_error(&e),
        };
        // A NaN sticks and fails the threshold below.
        if r.discrepancy.is_nan() || r.discrepancy > worst.discrepancy {
            worst.discrepancy = r.discrepancy;
            worst_trial = i;
        }
        worst.closed_form_gap = worst.closed_form_gap.max(r.closed_form_gap);
        worst.tail = worst.tail.max(r.tail);
    }
    let pass = worst.discrepancy < ORACLE_TOL;
    let report = format!(
        "trials = {}\ndim = {}\nseed = {}\nprng = ChaCha8 (rand_chacha, seed_from_u64)\n\
         max_discrepancy = {}\nworst_trial = {}\nmax_closed_form_gap = {}\nmax_tail_mass = {}\nthreshold = {}\nresult = {}\n",
        args.trials,
        args.dim,
        args.seed,
        format_float(worst.discrepancy),
        worst_trial,
        format_float(worst.closed_form_gap),
        format_float(worst.tail),
        format_float(ORACLE_TOL),
        if pass { "PASS" } else { "FAIL" },
    );
    if pass {
        Outcome::ok(report)
    } else {
        Outcome {
            output: report,
            code: exit::ORACLE_MISMATCH,
            message: Some(format!("oracle mismatch: max discrepancy {:e} >= {ORACLE_TOL:e}", worst.discrepancy)),
        }
    }
}
