//! The three agents: rational UCB, the risk-averse biased human (RAB UCB),
//! and the human-robot team in which the robot infers the reward values
//! behind the human's choices and substitutes its own de-biased action.
//!
//! All agents share the [`ArmStatistic`] substrate; the team additionally
//! maintains the [`InteractionHistory`] the robot fits against. Ties break
//! toward the lowest arm index everywhere, for reproducibility.

use crate::cpt::{
    bias_probability_row, cpt_value, value_inverse, BiasMode, CptParams, Prospect,
};
use crate::bandit::RewardStream;
use crate::optim::{powell_minimize, MinimizeOptions};
use crate::seed::derive_seed;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Per-arm pull counts, per-class observation counts, and running value
/// sums — everything a UCB-family policy needs.
#[derive(Debug, Clone)]
pub struct ArmStatistic {
    pulls: Vec<usize>,
    class_counts: Vec<Vec<usize>>,
    value_sums: Vec<f64>,
    class_values: Vec<f64>,
}

impl ArmStatistic {
    pub fn new(num_arms: usize, class_values: Vec<f64>) -> Result<Self> {
        if num_arms == 0 || class_values.is_empty() {
            return Err(Error::Validation(
                "statistic needs at least one arm and one class".to_string(),
            ));
        }
        if class_values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation("class values must be finite".to_string()));
        }
        Ok(Self {
            pulls: vec![0; num_arms],
            class_counts: vec![vec![0; class_values.len()]; num_arms],
            value_sums: vec![0.0; num_arms],
            class_values,
        })
    }

    pub fn num_arms(&self) -> usize {
        self.pulls.len()
    }

    pub fn num_classes(&self) -> usize {
        self.class_values.len()
    }

    pub fn pulls(&self, arm: usize) -> usize {
        self.pulls[arm]
    }

    pub fn total_pulls(&self) -> usize {
        self.pulls.iter().sum()
    }

    pub fn class_values(&self) -> &[f64] {
        &self.class_values
    }

    /// Empirical mean of observed numeric rewards; None when unpulled.
    pub fn mean(&self, arm: usize) -> Option<f64> {
        (self.pulls[arm] > 0).then(|| self.value_sums[arm] / self.pulls[arm] as f64)
    }

    /// Raw class frequencies for an arm; None when unpulled.
    pub fn empirical_probs(&self, arm: usize) -> Option<Vec<f64>> {
        (self.pulls[arm] > 0).then(|| {
            let n = self.pulls[arm] as f64;
            self.class_counts[arm].iter().map(|c| *c as f64 / n).collect()
        })
    }

    /// The arm's observed outcome distribution as a prospect; None when
    /// unpulled.
    pub fn empirical_prospect(&self, arm: usize) -> Option<Result<Prospect>> {
        self.empirical_probs(arm)
            .map(|probs| Prospect::from_class_probs(&self.class_values, &probs))
    }

    fn lowest_unpulled(&self) -> Option<usize> {
        self.pulls.iter().position(|&n| n == 0)
    }
}

/// Records one observation for an arm. `value` is the numeric reward of the
/// observed class.
pub fn rab_ucb_update(stat: &mut ArmStatistic, arm: usize, class: usize, value: f64) -> Result<()> {
    if arm >= stat.num_arms() || class >= stat.num_classes() {
        return Err(Error::Validation(format!(
            "update out of range: arm {arm} class {class} for {}x{} statistic",
            stat.num_arms(),
            stat.num_classes()
        )));
    }
    stat.pulls[arm] += 1;
    stat.class_counts[arm][class] += 1;
    stat.value_sums[arm] += value;
    Ok(())
}

/// UCB1 index: empirical mean plus `sqrt(2 ln t / n)`. None signals an
/// unpulled arm, which callers treat as an infinite index (forced
/// exploration).
pub fn ucb_index(stat: &ArmStatistic, arm: usize, t: usize) -> Option<f64> {
    debug_assert!(t >= 1);
    let n = stat.pulls(arm);
    if n == 0 {
        return None;
    }
    let bonus = (2.0 * (t as f64).ln() / n as f64).sqrt();
    Some(stat.mean(arm).expect("pulled arm has a mean") + bonus)
}

/// Unpulled arms first (lowest index), then argmax of the UCB index.
pub fn ucb_choose(stat: &ArmStatistic, t: usize) -> usize {
    if let Some(arm) = stat.lowest_unpulled() {
        return arm;
    }
    let indices: Vec<f64> = (0..stat.num_arms())
        .map(|a| ucb_index(stat, a, t).expect("all arms pulled"))
        .collect();
    argmax_lowest(&indices)
}

/// Samples arm `a` with probability proportional to `exp(theta * value_a)`,
/// computed with max-subtraction for numerical stability. `theta = 0` is
/// uniform; large `theta` concentrates on the argmax (uniform over ties).
pub fn noisy_rational_choice<R: Rng>(values: &[f64], theta: f64, rng: &mut R) -> usize {
    debug_assert!(!values.is_empty());
    let peak = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = values.iter().map(|v| (theta * (v - peak)).exp()).collect();
    let total: f64 = weights.iter().sum();
    let mut u = rng.random::<f64>() * total;
    for (i, w) in weights.iter().enumerate() {
        u -= w;
        if u <= 0.0 {
            return i;
        }
    }
    values.len() - 1
}

/// One RAB UCB decision: CPT-transformed per-arm values plus the UCB
/// exploration bonus, then a noisy-rational draw at the statistic's
/// parameters. Unpulled arms are forced first (lowest index) without
/// consuming randomness.
pub fn rab_ucb_choose<R: Rng>(
    stat: &ArmStatistic,
    p: &CptParams,
    t: usize,
    rng: &mut R,
) -> Result<usize> {
    if let Some(arm) = stat.lowest_unpulled() {
        return Ok(arm);
    }
    let mut q = Vec::with_capacity(stat.num_arms());
    for arm in 0..stat.num_arms() {
        let prospect = stat.empirical_prospect(arm).expect("all arms pulled")?;
        let bonus = (2.0 * (t as f64).ln() / stat.pulls(arm) as f64).sqrt();
        q.push(cpt_value(&prospect, p) + bonus);
    }
    Ok(noisy_rational_choice(&q, p.theta, rng))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HistoryRecord {
    pub step: usize,
    pub human_action: usize,
    pub robot_action: usize,
    pub class: usize,
}

/// The robot's record of the interaction: one entry per step, strictly
/// increasing steps starting at 1.
#[derive(Debug, Clone)]
pub struct InteractionHistory {
    records: Vec<HistoryRecord>,
    num_arms: usize,
    num_classes: usize,
}

impl InteractionHistory {
    pub fn new(num_arms: usize, num_classes: usize) -> Self {
        Self {
            records: Vec::new(),
            num_arms,
            num_classes,
        }
    }

    pub fn push(
        &mut self,
        step: usize,
        human_action: usize,
        robot_action: usize,
        class: usize,
    ) -> Result<()> {
        let min_step = self.records.last().map_or(1, |r| r.step + 1);
        if step < min_step {
            return Err(Error::Validation(format!(
                "steps must be strictly increasing from 1; got {step} after {}",
                min_step - 1
            )));
        }
        if human_action >= self.num_arms || robot_action >= self.num_arms {
            return Err(Error::Validation(format!(
                "action out of range at step {step}: human {human_action}, robot {robot_action}, arms {}",
                self.num_arms
            )));
        }
        if class >= self.num_classes {
            return Err(Error::Validation(format!(
                "class {class} out of range at step {step}, classes {}",
                self.num_classes
            )));
        }
        self.records.push(HistoryRecord {
            step,
            human_action,
            robot_action,
            class,
        });
        Ok(())
    }

    pub fn records(&self) -> &[HistoryRecord] {
        &self.records
    }

    pub fn num_arms(&self) -> usize {
        self.num_arms
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn last_step(&self) -> usize {
        self.records.last().map_or(0, |r| r.step)
    }
}

#[derive(Debug, Clone)]
pub struct RobotConfig {
    /// The robot's model of the human's biases (and rationality theta).
    pub human_params: CptParams,
    /// Initial reward estimate: the fit starts from the all-r0 vector.
    pub r0: f64,
    /// Round-robin steps before inference starts; must cover every arm.
    pub warmup_steps: usize,
    /// Fit every this many steps, reusing the cached estimate in between.
    pub refit_period: usize,
    /// Laplace smoothing added to every class count.
    pub smoothing_pseudocount: f64,
    /// How the human model distorts probability rows in the fit.
    pub bias_mode: BiasMode,
    /// Minimizer settings for the mismatch fit.
    pub minimizer: MinimizeOptions,
}

impl RobotConfig {
    pub fn new(human_params: CptParams, num_arms: usize) -> Self {
        Self {
            human_params,
            r0: 1.0,
            warmup_steps: num_arms,
            refit_period: 1,
            smoothing_pseudocount: 1.0,
            bias_mode: BiasMode::Cumulative,
            // Mismatch counts are integers: any sweep that fails to remove
            // a whole mismatch has converged.
            minimizer: MinimizeOptions {
                f_tolerance: 0.5,
                ..MinimizeOptions::default()
            },
        }
    }

    pub fn validate(&self, num_arms: usize) -> Result<()> {
        self.human_params.validate()?;
        if self.warmup_steps < num_arms {
            return Err(Error::Validation(format!(
                "warmup_steps {} must cover all {num_arms} arms",
                self.warmup_steps
            )));
        }
        if self.refit_period < 1 {
            return Err(Error::Validation("refit_period must be >= 1".to_string()));
        }
        if !(self.smoothing_pseudocount > 0.0) || !self.smoothing_pseudocount.is_finite() {
            return Err(Error::Validation(format!(
                "smoothing_pseudocount must be positive and finite, got {}",
                self.smoothing_pseudocount
            )));
        }
        if !self.r0.is_finite() {
            return Err(Error::Validation(format!("r0 must be finite, got {}", self.r0)));
        }
        Ok(())
    }
}

/// Laplace-smoothed class-frequency matrices P_1..P_upto. P_i uses only
/// records with step < i — the information available to the human before
/// choosing at step i — counting the EXECUTED arm of each record. Arms with
/// no observations get the uniform row. `upto` may reach one past the last
/// recorded step: that final matrix is the current-step view over the full
/// history.
pub fn build_probability_statistics(
    history: &InteractionHistory,
    upto: usize,
    pseudocount: f64,
) -> Result<Vec<Vec<Vec<f64>>>> {
    if !(pseudocount > 0.0) || !pseudocount.is_finite() {
        return Err(Error::Validation(format!(
            "pseudocount must be positive and finite, got {pseudocount}"
        )));
    }
    if upto > history.last_step() + 1 {
        return Err(Error::Validation(format!(
            "upto {upto} exceeds one past the last recorded step {}",
            history.last_step()
        )));
    }
    let (n, m) = (history.num_arms(), history.num_classes());
    let mut counts = vec![vec![0usize; m]; n];
    let mut pulls = vec![0usize; n];
    let mut records = history.records().iter().peekable();
    let mut out = Vec::with_capacity(upto);
    for i in 1..=upto {
        while let Some(r) = records.peek() {
            if r.step >= i {
                break;
            }
            counts[r.robot_action][r.class] += 1;
            pulls[r.robot_action] += 1;
            records.next();
        }
        let matrix: Vec<Vec<f64>> = (0..n)
            .map(|a| {
                let denom = pulls[a] as f64 + m as f64 * pseudocount;
                counts[a].iter().map(|c| (*c as f64 + pseudocount) / denom).collect()
            })
            .collect();
        out.push(matrix);
    }
    Ok(out)
}

/// Number of steps where the human model `argmax_a (P_i . rhat)` disagrees
/// with the recorded human action. Invariant under positive rescaling of
/// `rhat` (only per-step argmaxes matter).
pub fn mismatch_count(
    biased_p: &[Vec<Vec<f64>>],
    human_actions: &[usize],
    rhat: &[f64],
) -> Result<usize> {
    if biased_p.len() != human_actions.len() {
        return Err(Error::Validation(format!(
            "got {} matrices for {} human actions",
            biased_p.len(),
            human_actions.len()
        )));
    }
    let mut mismatches = 0;
    let mut scores = Vec::new();
    for (matrix, &action) in biased_p.iter().zip(human_actions) {
        scores.clear();
        scores.extend(
            matrix
                .iter()
                .map(|row| row.iter().zip(rhat).map(|(p, r)| p * r).sum::<f64>()),
        );
        if argmax_lowest(&scores) != action {
            mismatches += 1;
        }
    }
    Ok(mismatches)
}

/// Fits the length-M reward vector minimizing the mismatch count, starting
/// from `start` if given and from the all-r0 vector otherwise. The returned
/// point never scores worse than the start. An empty history returns the
/// all-r0 vector without invoking the minimizer.
pub fn fit_reward_values(
    biased_p: &[Vec<Vec<f64>>],
    human_actions: &[usize],
    r0: f64,
    start: Option<&[f64]>,
    opts: &MinimizeOptions,
) -> Result<Vec<f64>> {
    if biased_p.len() != human_actions.len() {
        return Err(Error::Validation(format!(
            "got {} matrices for {} human actions",
            biased_p.len(),
            human_actions.len()
        )));
    }
    let Some(first) = biased_p.first() else {
        let m = start.map_or(0, <[f64]>::len);
        return Ok(vec![r0; m.max(1)]);
    };
    let m = first[0].len();
    let x0: Vec<f64> = match start {
        Some(s) if s.len() == m => s.to_vec(),
        _ => vec![r0; m],
    };
    let mut objective =
        |rhat: &[f64]| mismatch_count(biased_p, human_actions, rhat).expect("validated shapes") as f64;
    let result = powell_minimize(&mut objective, &x0, opts)?;
    Ok(result.x_best)
}

/// The robot of the team: infers reward values from the interaction
/// history, de-biases them through the inverse value transform, and picks
/// the arm maximizing expected de-biased value under the raw (unbiased)
/// class frequencies.
#[derive(Debug, Clone)]
pub struct RobotPolicy {
    cfg: RobotConfig,
    class_values: Vec<f64>,
    seed: u64,
    /// Last fit result in the human's transformed value space, reused as
    /// the current estimate between refits and as the next fit's start.
    rhat_pre_inverse: Option<Vec<f64>>,
    last_fit_step: Option<usize>,
}

impl RobotPolicy {
    pub fn new(cfg: RobotConfig, class_values: Vec<f64>, seed: u64) -> Result<Self> {
        if class_values.is_empty() || class_values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation(
                "robot needs a nonempty, finite class value vector".to_string(),
            ));
        }
        Ok(Self {
            cfg,
            class_values,
            seed,
            rhat_pre_inverse: None,
            last_fit_step: None,
        })
    }

    pub fn last_fit_step(&self) -> Option<usize> {
        self.last_fit_step
    }

    /// De-biased current reward estimate, if a fit has happened.
    pub fn estimated_values(&self) -> Option<Vec<f64>> {
        self.rhat_pre_inverse.as_ref().map(|rhat| {
            rhat.iter().map(|y| value_inverse(*y, &self.cfg.human_params)).collect()
        })
    }

    /// One robot decision at step t given the history of steps 1..t-1.
    /// Warm-up is round-robin; afterwards: build P, bias it, fit rewards to
    /// the human's choices (every refit_period steps), de-bias, and argmax
    /// expected value under the current unbiased P.
    pub fn choose(&mut self, history: &InteractionHistory, t: usize) -> Result<usize> {
        let n = history.num_arms();
        self.cfg.validate(n)?;
        if t < 1 {
            return Err(Error::Validation("steps start at 1".to_string()));
        }
        if t <= self.cfg.warmup_steps {
            return Ok((t - 1) % n);
        }
        if history.last_step() < t - 1 {
            return Err(Error::Validation(format!(
                "robot at step {t} needs history through step {}, have {}",
                t - 1,
                history.last_step()
            )));
        }

        let needs_fit = match self.last_fit_step {
            None => true,
            Some(s) => t - s >= self.cfg.refit_period,
        };
        if needs_fit {
            let p_matrices =
                build_probability_statistics(history, t - 1, self.cfg.smoothing_pseudocount)?;
            let biased: Vec<Vec<Vec<f64>>> = p_matrices
                .iter()
                .map(|matrix| {
                    matrix
                        .iter()
                        .map(|row| {
                            bias_probability_row(
                                row,
                                &self.class_values,
                                &self.cfg.human_params,
                                self.cfg.bias_mode,
                            )
                        })
                        .collect()
                })
                .collect();
            let human_actions: Vec<usize> = history.records()[..t - 1]
                .iter()
                .map(|r| r.human_action)
                .collect();
            let opts = MinimizeOptions {
                seed: derive_seed(self.seed, &[t as u64]),
                ..self.cfg.minimizer.clone()
            };
            let rhat = fit_reward_values(
                &biased,
                &human_actions,
                self.cfg.r0,
                self.rhat_pre_inverse.as_deref(),
                &opts,
            )?;
            self.rhat_pre_inverse = Some(rhat);
            self.last_fit_step = Some(t);
        }

        let debiased = self.estimated_values().expect("fit must have happened");
        let current_p = build_probability_statistics(history, t, self.cfg.smoothing_pseudocount)?
            .pop()
            .expect("t >= 1 yields at least one matrix");
        let scores: Vec<f64> = current_p
            .iter()
            .map(|row| row.iter().zip(&debiased).map(|(p, r)| p * r).sum())
            .collect();
        Ok(argmax_lowest(&scores))
    }
}

/// Stateless form of the robot decision (no warm-started refit caching).
pub fn robot_choose(
    history: &InteractionHistory,
    cfg: &RobotConfig,
    class_values: &[f64],
    t: usize,
    seed: u64,
) -> Result<usize> {
    RobotPolicy::new(cfg.clone(), class_values.to_vec(), seed)?.choose(history, t)
}

/// Human-robot team state for one trial.
#[derive(Debug, Clone)]
pub struct TeamState {
    pub human_stat: ArmStatistic,
    human_params: CptParams,
    human_rng: ChaCha8Rng,
    pub robot: RobotPolicy,
    pub history: InteractionHistory,
}

impl TeamState {
    pub fn new(
        num_arms: usize,
        class_values: Vec<f64>,
        human_params: CptParams,
        robot_cfg: RobotConfig,
        human_seed: u64,
        robot_seed: u64,
    ) -> Result<Self> {
        robot_cfg.validate(num_arms)?;
        human_params.validate()?;
        let num_classes = class_values.len();
        Ok(Self {
            human_stat: ArmStatistic::new(num_arms, class_values.clone())?,
            human_params,
            human_rng: ChaCha8Rng::seed_from_u64(human_seed),
            robot: RobotPolicy::new(robot_cfg, class_values, robot_seed)?,
            history: InteractionHistory::new(num_arms, num_classes),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutcome {
    pub human_action: usize,
    pub robot_action: usize,
    pub class: usize,
    pub value: f64,
}

/// One team round: the robot commits first, then the human's (possibly
/// overridden) choice is computed and recorded; the robot's arm executes.
/// The human's statistic tracks the EXECUTED arm; the human's intended
/// action lives only in the robot's history. The human's noisy-rational
/// draw always runs, so the history stays complete and the RNG stream is
/// consumed identically whether or not the choice is overridden.
pub fn team_step(team: &mut TeamState, stream: &RewardStream, t: usize) -> Result<StepOutcome> {
    let robot_action = team.robot.choose(&team.history, t)?;
    let human_action = rab_ucb_choose(&team.human_stat, &team.human_params, t, &mut team.human_rng)?;
    let pull_index = team.human_stat.pulls(robot_action);
    let (class, value) = stream.pull(robot_action, pull_index)?;
    rab_ucb_update(&mut team.human_stat, robot_action, class, value)?;
    team.history.push(t, human_action, robot_action, class)?;
    Ok(StepOutcome {
        human_action,
        robot_action,
        class,
        value,
    })
}

/// Argmax with ties broken toward the lowest index.
fn argmax_lowest(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}
