//! Derivative-free minimization: Powell's conjugate direction method with a
//! bracketing + golden-section line search.
//!
//! The line search never uses derivatives and the whole minimizer only ever
//! accepts points that do not increase the objective, which makes it usable
//! on the piecewise-constant mismatch counts the robot policy minimizes:
//! golden-section refinement works on plateaus where any gradient is zero,
//! and seeded multi-start perturbations provide the escape mechanism.

use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INITIAL_STEP: f64 = 1.0;
/// Probe cap while scanning for a descent step (alternating signs, doubling).
const MAX_SCAN_PROBES: usize = 64;
const GOLDEN_RATIO_SECTION: f64 = 0.381_966_011_250_105_1;

#[derive(Debug, Clone)]
pub struct MinimizeOptions {
    pub max_iterations: usize,
    /// Total objective-evaluation budget, shared across restarts.
    pub max_evaluations: usize,
    /// Golden-section refinement width, in line-search step units.
    pub x_tolerance: f64,
    /// Terminate an iteration loop once a full sweep improves f by less
    /// than this (absolute).
    pub f_tolerance: f64,
    /// Extra runs from perturbed copies of the best point so far.
    pub restarts: usize,
    /// Magnitude of the uniform restart perturbation per coordinate.
    pub restart_scale: f64,
    pub seed: u64,
}

impl Default for MinimizeOptions {
    /// The f_tolerance/max_evaluations pair is sized so that on smooth
    /// problems the tolerance, not the budget, ends each run: with a tighter
    /// budget the restarts steal evaluations from the initial run and
    /// sub-1e-6 accuracy on conditioned quadratics is lost.
    fn default() -> Self {
        Self {
            max_iterations: 100,
            max_evaluations: 40_000,
            x_tolerance: 1e-8,
            f_tolerance: 1e-14,
            restarts: 4,
            restart_scale: 1.0,
            seed: 0,
        }
    }
}

impl MinimizeOptions {
    fn validate(&self) -> Result<()> {
        if !(self.x_tolerance > 0.0) || !(self.f_tolerance > 0.0) {
            return Err(Error::Validation(format!(
                "tolerances must be positive, got x_tolerance={} f_tolerance={}",
                self.x_tolerance, self.f_tolerance
            )));
        }
        if self.max_iterations == 0 || self.max_evaluations == 0 {
            return Err(Error::Validation(
                "iteration and evaluation caps must be >= 1".to_string(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct MinimizeResult {
    pub x_best: Vec<f64>,
    /// Objective at `x_best`, as last evaluated.
    pub f_best: f64,
    /// Objective evaluations spent, summed over restarts.
    pub evaluations: usize,
    /// True when the run that produced `x_best` terminated on the
    /// f-improvement test rather than an iteration or evaluation cap.
    pub converged: bool,
    /// f after every accepted line minimization of the winning run;
    /// nonincreasing by construction.
    pub accepted_f: Vec<f64>,
}

/// Objective wrapper enforcing the shared evaluation budget. Non-finite
/// objective values are mapped to +inf so they are never accepted.
struct Counted<'a> {
    f: &'a mut dyn FnMut(&[f64]) -> f64,
    used: usize,
    cap: usize,
}

impl<'a> Counted<'a> {
    fn eval(&mut self, x: &[f64]) -> Option<f64> {
        if self.used >= self.cap {
            return None;
        }
        self.used += 1;
        let v = (self.f)(x);
        Some(if v.is_finite() { v } else { f64::INFINITY })
    }
}

/// Minimizes along `origin + s * direction`: scans for a descent step by
/// alternating-sign geometric probing, expands a bracket around it, then
/// refines with golden section down to `opts.x_tolerance`. Returns the best
/// `(step, f)` seen, so `f <= f(origin)` always; a flat or everywhere-worse
/// line yields step 0 with `f(origin)`.
pub fn line_minimize(
    objective: &mut dyn FnMut(&[f64]) -> f64,
    origin: &[f64],
    direction: &[f64],
    opts: &MinimizeOptions,
) -> Result<(f64, f64)> {
    opts.validate()?;
    if direction.iter().all(|d| *d == 0.0) {
        return Err(Error::Validation("line search direction is zero".to_string()));
    }
    let mut counted = Counted {
        f: objective,
        used: 0,
        cap: opts.max_evaluations,
    };
    let f_origin = counted
        .eval(origin)
        .expect("evaluation budget allows at least one evaluation");
    let mut scratch = vec![0.0; origin.len()];
    Ok(line_minimize_from(
        &mut counted,
        origin,
        direction,
        f_origin,
        opts.x_tolerance,
        &mut scratch,
    ))
}

/// Core line search; `f_origin` is the already-known objective at step 0.
fn line_minimize_from(
    counted: &mut Counted,
    origin: &[f64],
    direction: &[f64],
    f_origin: f64,
    x_tolerance: f64,
    scratch: &mut [f64],
) -> (f64, f64) {
    let mut best = (0.0, f_origin);
    let mut g = |s: f64, counted: &mut Counted, best: &mut (f64, f64)| -> Option<f64> {
        for (slot, (o, d)) in scratch.iter_mut().zip(origin.iter().zip(direction)) {
            *slot = o + s * d;
        }
        let fs = counted.eval(scratch)?;
        if fs < best.1 {
            *best = (s, fs);
        }
        Some(fs)
    };

    // Scan +h, -h, +2h, -2h, ... for a strictly improving step.
    let mut descent: Option<(f64, f64)> = None;
    let mut h = INITIAL_STEP;
    for probe in 0..MAX_SCAN_PROBES {
        let s = if probe % 2 == 0 { h } else { -h };
        let Some(fs) = g(s, counted, &mut best) else {
            return best;
        };
        if fs < f_origin {
            descent = Some((s, fs));
            break;
        }
        if probe % 2 == 1 {
            h *= 2.0;
        }
    }

    let (lo, hi) = if let Some((s1, f1)) = descent {
        // Expand geometrically past the descent step until f turns upward.
        let (mut a, mut b, mut fb) = (0.0, s1, f1);
        let mut c = s1 * 2.0;
        loop {
            let Some(fc) = g(c, counted, &mut best) else {
                return best;
            };
            if fc > fb {
                break;
            }
            a = b;
            b = c;
            fb = fc;
            c *= 2.0;
            if c.abs() > 1e15 || (c - a).abs() > 1e15 {
                return best;
            }
        }
        if a < c { (a, c) } else { (c, a) }
    } else {
        // No probe beat the origin, so step 0 is an interior low point of
        // the first probe pair's interval: a bracket in its own right. The
        // minimum may still sit strictly inside at sub-probe scale.
        (-INITIAL_STEP, INITIAL_STEP)
    };
    if hi - lo <= x_tolerance {
        return best;
    }

    // Golden-section refinement on the bracket.
    let (mut lo, mut hi) = (lo, hi);
    let mut x1 = lo + GOLDEN_RATIO_SECTION * (hi - lo);
    let mut x2 = hi - GOLDEN_RATIO_SECTION * (hi - lo);
    let Some(mut fx1) = g(x1, counted, &mut best) else {
        return best;
    };
    let Some(mut fx2) = g(x2, counted, &mut best) else {
        return best;
    };
    while hi - lo > x_tolerance {
        if fx1 < fx2 {
            hi = x2;
            x2 = x1;
            fx2 = fx1;
            x1 = lo + GOLDEN_RATIO_SECTION * (hi - lo);
            match g(x1, counted, &mut best) {
                Some(v) => fx1 = v,
                None => return best,
            }
        } else {
            lo = x1;
            x1 = x2;
            fx1 = fx2;
            x2 = hi - GOLDEN_RATIO_SECTION * (hi - lo);
            match g(x2, counted, &mut best) {
                Some(v) => fx2 = v,
                None => return best,
            }
        }
    }
    best
}

/// Powell's conjugate direction method with seeded multi-start.
///
/// Each run sweeps line minimizations over a maintained direction set
/// (initialized to the coordinate axes and reset to them every `dim`
/// iterations), then replaces the direction of largest decrease with the
/// sweep's overall displacement. Restarts rerun from the best point so far
/// perturbed by uniform noise of magnitude `restart_scale`; the best point
/// across runs wins. `f_best <= f(x0)` always.
pub fn powell_minimize(
    objective: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    opts: &MinimizeOptions,
) -> Result<MinimizeResult> {
    opts.validate()?;
    if x0.is_empty() {
        return Err(Error::Validation("x0 must have dimension >= 1".to_string()));
    }
    let mut counted = Counted {
        f: objective,
        used: 0,
        cap: opts.max_evaluations,
    };
    let f0 = counted
        .eval(x0)
        .expect("evaluation budget allows at least one evaluation");
    if !f0.is_finite() {
        return Err(Error::Validation(
            "objective is not finite at the start point".to_string(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best_x = x0.to_vec();
    let mut best_f = f0;
    let mut best_converged = false;
    let mut best_accepted = vec![f0];

    for run in 0..=opts.restarts {
        if counted.used >= counted.cap {
            break;
        }
        let start: Vec<f64> = if run == 0 {
            x0.to_vec()
        } else {
            best_x
                .iter()
                .map(|v| v + rng.random_range(-opts.restart_scale..=opts.restart_scale))
                .collect()
        };
        let outcome = powell_run(&mut counted, &start, opts);
        if outcome.f < best_f || (run == 0 && outcome.f <= best_f) {
            best_f = outcome.f;
            best_x = outcome.x;
            best_converged = outcome.converged;
            best_accepted = outcome.accepted;
        }
    }

    Ok(MinimizeResult {
        x_best: best_x,
        f_best: best_f,
        evaluations: counted.used,
        converged: best_converged,
        accepted_f: best_accepted,
    })
}

struct RunOutcome {
    x: Vec<f64>,
    f: f64,
    converged: bool,
    accepted: Vec<f64>,
}

fn powell_run(counted: &mut Counted, start: &[f64], opts: &MinimizeOptions) -> RunOutcome {
    let n = start.len();
    let identity = || -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect())
            .collect()
    };
    let mut directions = identity();
    let mut x = start.to_vec();
    let Some(mut fx) = counted.eval(&x) else {
        return RunOutcome {
            x,
            f: f64::INFINITY,
            converged: false,
            accepted: Vec::new(),
        };
    };
    let mut accepted = vec![fx];
    let mut converged = false;
    let mut scratch = vec![0.0; n];

    'outer: for iter in 0..opts.max_iterations {
        if iter > 0 && iter % n == 0 {
            directions = identity();
        }
        let f_iter_start = fx;
        let x_iter_start = x.clone();
        let mut largest_drop = 0.0;
        let mut largest_idx = 0;

        for i in 0..n {
            let (step, fs) = line_minimize_from(
                counted,
                &x,
                &directions[i],
                fx,
                opts.x_tolerance,
                &mut scratch,
            );
            if fx - fs > largest_drop {
                largest_drop = fx - fs;
                largest_idx = i;
            }
            if step != 0.0 {
                for (xi, di) in x.iter_mut().zip(&directions[i]) {
                    *xi += step * di;
                }
            }
            fx = fs;
            accepted.push(fx);
            if counted.used >= counted.cap {
                break 'outer;
            }
        }

        let displacement: Vec<f64> = x
            .iter()
            .zip(&x_iter_start)
            .map(|(new, old)| new - old)
            .collect();
        let disp_norm = displacement.iter().map(|d| d * d).sum::<f64>().sqrt();
        let x_norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if disp_norm > 1e-12 * (1.0 + x_norm) {
            let (step, fs) = line_minimize_from(
                counted,
                &x,
                &displacement,
                fx,
                opts.x_tolerance,
                &mut scratch,
            );
            if step != 0.0 {
                for (xi, di) in x.iter_mut().zip(&displacement) {
                    *xi += step * di;
                }
            }
            fx = fs;
            accepted.push(fx);
            directions[largest_idx] = displacement;
        }

        if f_iter_start - fx < opts.f_tolerance {
            converged = true;
            break;
        }
        if counted.used >= counted.cap {
            break;
        }
    }

    RunOutcome {
        x,
        f: fx,
        converged,
        accepted,
    }
}
