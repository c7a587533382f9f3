//! Built-in check battery behind the `selftest` subcommand: a fast,
//! dependency-free way for users to confirm a build behaves correctly on
//! this machine (analytic examples, optimizer sanity, statistics oracle
//! values, and end-to-end determinism).

use crate::bandit::{make_reference_instances, BanditInstance};
use crate::cpt::{cpt_value, probability_weight, value_inverse, value_transform, CptParams, Prospect};
use crate::harness::{render_transcripts, simulate_experiment, ExperimentConfig};
use crate::optim::{powell_minimize, MinimizeOptions};
use crate::stats::{one_way_anova, studentized_range_sf_mc};
use crate::Result;

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Runs every check; completes in a few seconds.
pub fn run_all() -> Vec<CheckOutcome> {
    let checks: [(&'static str, fn() -> Result<String>); 8] = [
        ("cpt_analytic_examples", check_cpt_examples),
        ("cpt_value_round_trip", check_round_trip),
        ("powell_quadratics", check_powell_quadratics),
        ("powell_rosenbrock", check_rosenbrock),
        ("anova_reference_value", check_anova_oracle),
        ("studentized_range_table", check_tukey_table),
        ("degenerate_instance_return", check_degenerate_return),
        ("experiment_determinism", check_determinism),
    ];
    checks
        .into_iter()
        .map(|(name, f)| match f() {
            Ok(detail) => CheckOutcome { name, passed: true, detail },
            Err(e) => CheckOutcome {
                name,
                passed: false,
                detail: e.to_string(),
            },
        })
        .collect()
}

fn fail(msg: String) -> crate::Error {
    crate::Error::Validation(msg)
}

fn check_cpt_examples() -> Result<String> {
    let p = CptParams::default();
    let w = probability_weight(0.5, 0.5)?;
    if (w - 0.35355).abs() > 1e-5 {
        return Err(fail(format!("w(0.5) = {w}, expected 0.35355")));
    }
    let w01 = probability_weight(0.01, 0.5)?;
    if (w01 - 0.08340).abs() > 1e-5 {
        return Err(fail(format!("w(0.01) = {w01}, expected 0.08340")));
    }
    let v = value_transform(0.5, &p);
    if (v - 0.70711).abs() > 1e-5 {
        return Err(fail(format!("v(0.5) = {v}, expected 0.70711")));
    }
    let prospect = Prospect::new(vec![(-1.0, 0.3), (2.0, 0.7)])?;
    let cv = cpt_value(&prospect, &p);
    if (cv - 0.04578).abs() > 1e-3 {
        return Err(fail(format!("cpt value = {cv}, expected 0.04578")));
    }
    Ok(format!("w(0.5)={w:.5}, v(0.5)={v:.5}, mixed prospect={cv:.5}"))
}

fn check_round_trip() -> Result<String> {
    let params = [
        CptParams::default(),
        CptParams::new(0.88, 0.88, 2.25, 0.61, 0.69, 1.0)?,
    ];
    let mut worst = 0.0f64;
    for p in &params {
        let mut x = -100.0;
        while x <= 100.0 {
            let back = value_inverse(value_transform(x, p), p);
            worst = worst.max((back - x).abs() / x.abs().max(1.0));
            x += 0.25;
        }
    }
    if worst > 1e-9 {
        return Err(fail(format!("round-trip error {worst:e} exceeds 1e-9")));
    }
    Ok(format!("worst relative round-trip error {worst:.2e}"))
}

fn check_powell_quadratics() -> Result<String> {
    // Fixed SPD quadratics: f(x) = (x-c)' A (x-c) with diagonally dominant A.
    let cases: [(Vec<Vec<f64>>, Vec<f64>); 3] = [
        (vec![vec![2.0, 0.4], vec![0.4, 1.0]], vec![1.0, -2.0]),
        (
            vec![vec![3.0, 0.5, 0.2], vec![0.5, 2.0, 0.1], vec![0.2, 0.1, 1.5]],
            vec![0.3, 0.7, -1.1],
        ),
        (vec![vec![1.0, 0.0], vec![0.0, 5.0]], vec![-4.0, 0.25]),
    ];
    for (a, c) in &cases {
        let mut f = |x: &[f64]| {
            let d: Vec<f64> = x.iter().zip(c).map(|(xi, ci)| xi - ci).collect();
            let mut acc = 0.0;
            for (i, di) in d.iter().enumerate() {
                for (j, dj) in d.iter().enumerate() {
                    acc += di * a[i][j] * dj;
                }
            }
            acc
        };
        let x0 = vec![0.0; c.len()];
        let r = powell_minimize(&mut f, &x0, &MinimizeOptions::default())?;
        for (xi, ci) in r.x_best.iter().zip(c) {
            if (xi - ci).abs() > 1e-6 {
                return Err(fail(format!("quadratic minimizer {:?} != {c:?}", r.x_best)));
            }
        }
    }
    Ok(format!("{} quadratics solved to 1e-6", cases.len()))
}

fn check_rosenbrock() -> Result<String> {
    let mut f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
    let r = powell_minimize(&mut f, &[-1.2, 1.0], &MinimizeOptions::default())?;
    if (r.x_best[0] - 1.0).abs() > 1e-5 || (r.x_best[1] - 1.0).abs() > 1e-5 {
        return Err(fail(format!("Rosenbrock ended at {:?}", r.x_best)));
    }
    Ok(format!("reached (1,1) in {} evaluations", r.evaluations))
}

fn check_anova_oracle() -> Result<String> {
    let groups = vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]];
    let r = one_way_anova(&groups)?;
    if (r.f_statistic - 13.5).abs() > 1e-9 {
        return Err(fail(format!("F = {}, expected 13.5", r.f_statistic)));
    }
    // Frozen reference value from an independent statistics oracle.
    if (r.p_value - 0.021_311_641_128_756_72).abs() > 1e-6 {
        return Err(fail(format!("p = {}, expected 0.0213116", r.p_value)));
    }
    Ok(format!("F={}, p={:.7}", r.f_statistic, r.p_value))
}

fn check_tukey_table() -> Result<String> {
    // Tabulated studentized-range survival value for (q=3.4, k=3, df=87).
    let p = studentized_range_sf_mc(3.4, 3, 87, 100_000, 11)?;
    if (p - 0.0477).abs() > 0.01 {
        return Err(fail(format!("sf(3.4; 3, 87) = {p}, expected ~0.0477")));
    }
    Ok(format!("sf(3.4; 3, 87) = {p:.4}"))
}

fn check_degenerate_return() -> Result<String> {
    let instance = BanditInstance::new(
        vec![("zero".to_string(), 0.0), ("half".to_string(), 0.5)],
        vec![vec![0.0, 1.0], vec![0.0, 1.0]],
    )?;
    let mut cfg = ExperimentConfig::new("degenerate", instance);
    cfg.horizon = 30;
    cfg.trials = 1;
    let sim = simulate_experiment(&cfg)?;
    for r in &sim.trial_results {
        if (r.total_return - 15.0).abs() > 1e-9 {
            return Err(fail(format!(
                "{} returned {}, expected 15",
                r.agent.name(),
                r.total_return
            )));
        }
    }
    Ok("every agent returned 0.5 per step".to_string())
}

fn check_determinism() -> Result<String> {
    let (d1, _) = make_reference_instances();
    let mut cfg = ExperimentConfig::new("risky-better", d1);
    cfg.horizon = 25;
    cfg.trials = 3;
    cfg.robot.refit_period = 5;
    let a = simulate_experiment(&cfg)?;
    let b = simulate_experiment(&cfg)?;
    let (ta, tb) = (render_transcripts(&a.rows), render_transcripts(&b.rows));
    if ta != tb {
        return Err(fail("two identical runs produced different transcripts".to_string()));
    }
    Ok(format!("{} transcript bytes identical across runs", ta.len()))
}
