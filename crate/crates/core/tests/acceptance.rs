//! Shipping gate: one test per advertised guarantee. Each test prints a
//! single `criterion N: PASS/FAIL` line (visible with `--nocapture`, and in
//! the failure output otherwise) together with the measured quantities and
//! its runtime, then asserts. The large experiments share one simulation via
//! `OnceLock` so the determinism check replays the exact same configuration.

#[path = "acceptance/frozen.rs"]
mod frozen;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use assistive_mab::bandit::make_reference_instances;
use assistive_mab::cpt::{cpt_value, probability_weight, value_inverse, value_transform, CptParams, Prospect};
use assistive_mab::harness::{
    render_summary_csv, render_transcripts, simulate_experiment, AgentKind, ExperimentConfig,
    SimulationOutput,
};
use assistive_mab::optim::{powell_minimize, MinimizeOptions};
use assistive_mab::stats::{one_way_anova, studentized_range_sf_mc, DEFAULT_TUKEY_MC_DRAWS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(criterion: u32, passed: bool, detail: &str, elapsed: Duration) {
    println!(
        "criterion {criterion}: {} — {detail} ({:.2}s)",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_1_cpt_analytic_suite() {
    let start = Instant::now();
    let params = [
        CptParams::default(),
        CptParams::new(0.88, 0.88, 2.25, 0.61, 0.69, 1.0).unwrap(),
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
    let w_half = probability_weight(0.5, 0.5).unwrap();
    let w_rare = probability_weight(0.01, 0.5).unwrap();
    let mixed = cpt_value(
        &Prospect::new(vec![(-1.0, 0.3), (2.0, 0.7)]).unwrap(),
        &CptParams::default(),
    );
    let elapsed = start.elapsed();

    let passed = worst <= 1e-9
        && (w_half - 0.35355).abs() <= 1e-5
        && (w_rare - 0.08340).abs() <= 1e-5
        && (mixed - 0.04578).abs() <= 1e-3
        && elapsed < Duration::from_secs(1);
    report(
        1,
        passed,
        &format!(
            "round-trip {worst:.2e}, w(0.5)={w_half:.5}, w(0.01)={w_rare:.5}, mixed cpt={mixed:.5}"
        ),
        elapsed,
    );
    assert!(worst <= 1e-9, "round-trip error {worst:e}");
    assert!((w_half - 0.35355).abs() <= 1e-5, "w(0.5) = {w_half}");
    assert!((w_rare - 0.08340).abs() <= 1e-5, "w(0.01) = {w_rare}");
    assert!((mixed - 0.04578).abs() <= 1e-3, "mixed prospect cpt = {mixed}");
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
}

#[test]
fn criterion_2_optimizer_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst = 0.0f64;
    for case in 0..20 {
        let dim = 1 + case % 4;
        // SPD by construction: A = B'B + 0.3 I.
        let b: Vec<Vec<f64>> = (0..dim)
            .map(|_| (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect())
            .collect();
        let mut a = vec![vec![0.0; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                for row in &b {
                    a[i][j] += row[i] * row[j];
                }
                if i == j {
                    a[i][j] += 0.3;
                }
            }
        }
        let c: Vec<f64> = (0..dim).map(|_| rng.random_range(-3.0..=3.0)).collect();
        let mut f = |x: &[f64]| {
            let d: Vec<f64> = x.iter().zip(&c).map(|(xi, ci)| xi - ci).collect();
            let mut acc = 0.0;
            for i in 0..dim {
                for j in 0..dim {
                    acc += d[i] * a[i][j] * d[j];
                }
            }
            acc
        };
        let r = powell_minimize(&mut f, &vec![0.0; dim], &MinimizeOptions::default()).unwrap();
        assert!(
            r.accepted_f.windows(2).all(|w| w[1] <= w[0]),
            "case {case}: accepted f not monotone"
        );
        let err = r
            .x_best
            .iter()
            .zip(&c)
            .map(|(xi, ci)| (xi - ci).abs())
            .fold(0.0f64, f64::max);
        worst = worst.max(err);
        assert!(err <= 1e-6, "case {case} (dim {dim}): off by {err:e} at {:?}", r.x_best);
    }

    let mut rosen = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
    let r = powell_minimize(&mut rosen, &[-1.2, 1.0], &MinimizeOptions::default()).unwrap();
    assert!(
        r.accepted_f.windows(2).all(|w| w[1] <= w[0]),
        "Rosenbrock: accepted f not monotone"
    );
    let rosen_err = (r.x_best[0] - 1.0).abs().max((r.x_best[1] - 1.0).abs());
    let elapsed = start.elapsed();
    let passed = rosen_err <= 1e-5 && elapsed < Duration::from_secs(10);
    report(
        2,
        passed,
        &format!("20 SPD quadratics worst {worst:.2e}, Rosenbrock {rosen_err:.2e}"),
        elapsed,
    );
    assert!(rosen_err <= 1e-5, "Rosenbrock off by {rosen_err:e}");
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
}

#[test]
fn criterion_3_statistics_oracle() {
    let start = Instant::now();
    let mut worst_f = 0.0f64;
    let mut worst_p = 0.0f64;
    for (i, groups) in frozen::DATASETS.iter().enumerate() {
        let data: Vec<Vec<f64>> = groups.iter().map(|g| g.to_vec()).collect();
        let r = one_way_anova(&data).unwrap();
        worst_f = worst_f.max((r.f_statistic - frozen::EXPECTED_F[i]).abs());
        worst_p = worst_p.max((r.p_value - frozen::EXPECTED_P[i]).abs());
        assert!(
            (r.f_statistic - frozen::EXPECTED_F[i]).abs() <= 1e-6,
            "dataset {i}: F = {} want {}",
            r.f_statistic,
            frozen::EXPECTED_F[i]
        );
        assert!(
            (r.p_value - frozen::EXPECTED_P[i]).abs() <= 1e-4,
            "dataset {i}: p = {} want {}",
            r.p_value,
            frozen::EXPECTED_P[i]
        );
    }
    let mut worst_sf = 0.0f64;
    for &(q, k, df, want) in &frozen::SF_CASES {
        let got = studentized_range_sf_mc(q, k, df, DEFAULT_TUKEY_MC_DRAWS, 11).unwrap();
        worst_sf = worst_sf.max((got - want).abs());
        assert!(
            (got - want).abs() <= 0.01,
            "sf({q}; {k}, {df}) = {got} want {want}"
        );
    }
    let elapsed = start.elapsed();
    let passed = elapsed < Duration::from_secs(30);
    report(
        3,
        passed,
        &format!("worst |dF| {worst_f:.2e}, |dp| {worst_p:.2e}, |dsf| {worst_sf:.4}"),
        elapsed,
    );
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
}

/// The risky-better experiment shared by criteria 4 and 7.
fn risky_better_run() -> &'static (ExperimentConfig, SimulationOutput) {
    static RUN: OnceLock<(ExperimentConfig, SimulationOutput)> = OnceLock::new();
    RUN.get_or_init(|| {
        let (d1, _) = make_reference_instances();
        let mut cfg = ExperimentConfig::new("risky-better", d1);
        cfg.robot.refit_period = 5;
        let out = simulate_experiment(&cfg).unwrap();
        (cfg, out)
    })
}

fn group_mean(out: &SimulationOutput, agent: AgentKind) -> f64 {
    let idx = out.summary.agents.iter().position(|a| *a == agent).unwrap();
    out.summary.groups[idx].mean
}

fn tukey_rejects(out: &SimulationOutput, a: AgentKind, b: AgentKind) -> bool {
    let ia = out.summary.agents.iter().position(|x| *x == a).unwrap();
    let ib = out.summary.agents.iter().position(|x| *x == b).unwrap();
    let (lo, hi) = (ia.min(ib), ia.max(ib));
    out.summary
        .tukey
        .as_ref()
        .unwrap()
        .pairs
        .iter()
        .find(|p| p.group_i == lo && p.group_j == hi)
        .unwrap()
        .reject_at_05
}

#[test]
fn criterion_4_risky_better_pattern() {
    let start = Instant::now();
    let (_, out) = risky_better_run();
    let ucb = group_mean(out, AgentKind::Ucb);
    let rab = group_mean(out, AgentKind::RabUcb);
    let hrt = group_mean(out, AgentKind::HrTeam);
    let p = out.summary.anova.as_ref().unwrap().p_value;
    let rejects = tukey_rejects(out, AgentKind::Ucb, AgentKind::RabUcb);
    let elapsed = start.elapsed();

    let passed = ucb > hrt
        && hrt > rab
        && p < 1e-3
        && rejects
        && elapsed < Duration::from_secs(600);
    report(
        4,
        passed,
        &format!(
            "means ucb {ucb:.2} / hr_team {hrt:.2} / rab_ucb {rab:.2}, anova p {p:.3e}, \
             ucb-vs-rab {}",
            if rejects { "rejected" } else { "not rejected" }
        ),
        elapsed,
    );
    assert!(ucb > hrt && hrt > rab, "ordering: ucb {ucb} hr_team {hrt} rab_ucb {rab}");
    assert!(p < 1e-3, "anova p = {p}");
    assert!(rejects, "tukey must reject ucb vs rab_ucb");
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
}

#[test]
fn criterion_5_safe_better_pattern() {
    let start = Instant::now();
    let (_, d2) = make_reference_instances();
    let mut cfg = ExperimentConfig::new("safe-better", d2);
    cfg.robot.refit_period = 5;
    let out = simulate_experiment(&cfg).unwrap();
    let ucb = group_mean(&out, AgentKind::Ucb);
    let rab = group_mean(&out, AgentKind::RabUcb);
    let hrt = group_mean(&out, AgentKind::HrTeam);
    let rejects_hrt = tukey_rejects(&out, AgentKind::Ucb, AgentKind::HrTeam);
    let elapsed = start.elapsed();

    let passed = rab >= ucb && !rejects_hrt && elapsed < Duration::from_secs(600);
    report(
        5,
        passed,
        &format!(
            "means ucb {ucb:.2} / hr_team {hrt:.2} / rab_ucb {rab:.2}, hr_team-vs-ucb {}",
            if rejects_hrt { "rejected" } else { "not rejected" }
        ),
        elapsed,
    );
    assert!(
        rab >= ucb,
        "rab_ucb mean {rab} must be >= ucb mean {ucb} on the safe-better instance"
    );
    assert!(
        !rejects_hrt,
        "tukey must not reject hr_team ({hrt}) vs ucb ({ucb}) on the safe-better instance"
    );
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
}

#[test]
fn criterion_6_debiasing_property() {
    let start = Instant::now();
    let (d1, _) = make_reference_instances();
    let best = d1.best_arm();
    let mut cfg = ExperimentConfig::new("risky-better", d1);
    cfg.trials = 100;
    cfg.robot.refit_period = 5;
    cfg.agents = vec![AgentKind::HrTeam];
    let warmup = cfg.robot.warmup_steps;
    let out = simulate_experiment(&cfg).unwrap();

    let mut robot_hits = 0usize;
    let mut human_hits = 0usize;
    let mut steps = 0usize;
    for row in out.rows.iter().filter(|r| r.t > warmup) {
        robot_hits += usize::from(row.robot_action == best);
        human_hits += usize::from(row.human_action == best);
        steps += 1;
    }
    let robot_frac = robot_hits as f64 / steps as f64;
    let human_frac = human_hits as f64 / steps as f64;
    let diff = robot_frac - human_frac;
    let elapsed = start.elapsed();

    report(
        6,
        diff >= 0.05,
        &format!("robot best-arm fraction {robot_frac:.4}, human {human_frac:.4}, diff {diff:.4}"),
        elapsed,
    );
    assert!(
        diff >= 0.05,
        "robot {robot_frac} must beat human {human_frac} by at least 0.05"
    );
}

#[test]
fn criterion_7_determinism() {
    let start = Instant::now();
    let (cfg, first) = risky_better_run();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let second = pool.install(|| simulate_experiment(cfg)).unwrap();

    let t_equal = render_transcripts(&first.rows) == render_transcripts(&second.rows);
    let s_equal = render_summary_csv(&first.summary) == render_summary_csv(&second.summary);
    let elapsed = start.elapsed();
    report(
        7,
        t_equal && s_equal,
        &format!(
            "transcripts {} and summary {} across 1-thread and 4-thread runs",
            if t_equal { "identical" } else { "DIFFER" },
            if s_equal { "identical" } else { "DIFFER" }
        ),
        elapsed,
    );
    assert!(t_equal, "transcripts.csv bytes differ across thread counts");
    assert!(s_equal, "summary.csv bytes differ across thread counts");
}
