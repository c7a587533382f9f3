//! Experiment runner: config loading, seeded parallel trials, and the
//! CSV/report output contract.
//!
//! Every random decision draws from a stream keyed by
//! `(master_seed, trial, agent)`, never from shared state, so trials may run
//! concurrently with byte-identical output regardless of thread count.
//! Within a trial all agents replay the same pre-sampled reward stream:
//! differences in return reflect policy, not luck.

use crate::bandit::{sample_stream, BanditInstance};
use crate::cpt::CptParams;
use crate::ini::{parse_f64, parse_u64, IniDocument, IniSection};
use crate::policies::{
    rab_ucb_choose, rab_ucb_update, team_step, ucb_choose, ArmStatistic, RobotConfig, TeamState,
};
use crate::seed::{derive_seed, name_tag};
use crate::stats::{
    one_way_anova, summarize, tukey_hsd, AnovaResult, GroupSummary, TukeyResult,
    DEFAULT_TUKEY_MC_DRAWS,
};
use crate::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const TRANSCRIPTS_FILE: &str = "transcripts.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const REPORT_FILE: &str = "report.txt";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AgentKind {
    Ucb,
    RabUcb,
    HrTeam,
}

impl AgentKind {
    pub const ALL: [AgentKind; 3] = [AgentKind::Ucb, AgentKind::RabUcb, AgentKind::HrTeam];

    /// Machine name: CSV `agent` column, config `agents` list, seed tag.
    pub fn name(self) -> &'static str {
        match self {
            Self::Ucb => "ucb",
            Self::RabUcb => "rab_ucb",
            Self::HrTeam => "hr_team",
        }
    }

    /// Human-readable name for the report table.
    pub fn display_name(self) -> &'static str {
        match self {
            Self::Ucb => "UCB",
            Self::RabUcb => "RAB UCB",
            Self::HrTeam => "HR Team",
        }
    }
}

impl std::str::FromStr for AgentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ucb" => Ok(Self::Ucb),
            "rab_ucb" => Ok(Self::RabUcb),
            "hr_team" => Ok(Self::HrTeam),
            other => Err(Error::Validation(format!(
                "unknown agent `{other}` (expected ucb, rab_ucb, hr_team)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// MAB name for the `mab` column and report table.
    pub name: String,
    pub instance: BanditInstance,
    pub horizon: usize,
    pub trials: usize,
    pub master_seed: u64,
    pub human: CptParams,
    pub robot: RobotConfig,
    pub agents: Vec<AgentKind>,
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    /// Stock configuration: full agent roster and the simulator's default
    /// human parameterization.
    pub fn new(name: impl Into<String>, instance: BanditInstance) -> Self {
        let human = CptParams::default();
        let robot = RobotConfig::new(human.clone(), instance.num_arms());
        Self {
            name: name.into(),
            instance,
            horizon: 300,
            trials: 300,
            master_seed: 1,
            human,
            robot,
            agents: AgentKind::ALL.to_vec(),
            output_dir: PathBuf::from("out"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Validation("trials must be >= 1".to_string()));
        }
        if self.horizon < 1 {
            return Err(Error::Validation("horizon must be >= 1".to_string()));
        }
        if self.agents.is_empty() {
            return Err(Error::Validation("agents must be nonempty".to_string()));
        }
        for (i, a) in self.agents.iter().enumerate() {
            if self.agents[..i].contains(a) {
                return Err(Error::Validation(format!("duplicate agent `{}`", a.name())));
            }
        }
        if self.name.is_empty() || self.name.contains(',') || self.name.contains('\n') {
            return Err(Error::Validation(
                "name must be nonempty and contain no commas or newlines".to_string(),
            ));
        }
        self.human.validate()?;
        self.robot.validate(self.instance.num_arms())
    }

    pub fn from_ini_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::from_ini_str(&text, &path.display().to_string(), base)
    }

    /// Parses a config document. The instance is either inline
    /// (`[classes]` + `[arm.i]` sections) or an `instance = <path>` key
    /// resolved relative to `base_dir`.
    pub fn from_ini_str(text: &str, file: &str, base_dir: &Path) -> Result<Self> {
        let doc = IniDocument::parse(text, file)?;
        for section in &doc.sections {
            let known = matches!(section.name.as_str(), "experiment" | "human" | "robot" | "classes")
                || section.name.starts_with("arm.");
            if !known {
                return Err(Error::Parse {
                    file: file.to_string(),
                    line: section.line,
                    message: format!("unknown section [{}]", section.name),
                });
            }
        }

        let experiment = doc.section("experiment");
        let instance_entry = experiment.and_then(|s| s.get("instance"));
        let has_inline = doc.section("classes").is_some();
        let instance = match (instance_entry, has_inline) {
            (Some((path, line)), false) => BanditInstance::from_ini_file(&base_dir.join(path))
                .map_err(|e| match e {
                    Error::Io(io) => Error::Parse {
                        file: file.to_string(),
                        line,
                        message: format!("cannot read instance `{path}`: {io}"),
                    },
                    other => other,
                })?,
            (None, true) => BanditInstance::from_ini_str(text, file)?,
            (Some((_, line)), true) => {
                return Err(Error::Parse {
                    file: file.to_string(),
                    line,
                    message: "config has both an `instance` path and inline [classes] sections"
                        .to_string(),
                })
            }
            (None, false) => {
                return Err(Error::Parse {
                    file: file.to_string(),
                    line: 0,
                    message: "no instance: add `instance = <path>` under [experiment] or inline [classes]/[arm.i] sections".to_string(),
                })
            }
        };

        let mut cfg = Self::new("mab", instance);
        if let Some(section) = experiment {
            for (key, value, line) in &section.entries {
                let line = *line;
                match key.as_str() {
                    "name" => cfg.name = value.clone(),
                    "horizon" => cfg.horizon = parse_u64(value, file, line)? as usize,
                    "trials" => cfg.trials = parse_u64(value, file, line)? as usize,
                    "master_seed" => cfg.master_seed = parse_u64(value, file, line)?,
                    "output_dir" => cfg.output_dir = PathBuf::from(value),
                    "instance" => {}
                    "agents" => {
                        let mut agents = Vec::new();
                        for part in value.split(',') {
                            let part = part.trim();
                            if part.is_empty() {
                                continue;
                            }
                            agents.push(part.parse().map_err(|e| Error::Parse {
                                file: file.to_string(),
                                line,
                                message: format!("{e}"),
                            })?);
                        }
                        cfg.agents = agents;
                    }
                    other => {
                        return Err(Error::Parse {
                            file: file.to_string(),
                            line,
                            message: format!("unknown [experiment] key `{other}`"),
                        })
                    }
                }
            }
        }

        if let Some(section) = doc.section("human") {
            cfg.human = parse_human(section, &cfg.human, file)?;
        }
        cfg.robot = RobotConfig::new(cfg.human.clone(), cfg.instance.num_arms());
        if let Some(section) = doc.section("robot") {
            parse_robot(section, &mut cfg.robot, file)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Renders the config in the format [`from_ini_str`] reads. With
    /// `instance_ref` the instance becomes a file reference; otherwise the
    /// instance sections are embedded inline.
    ///
    /// [`from_ini_str`]: Self::from_ini_str
    pub fn to_ini(&self, instance_ref: Option<&str>) -> String {
        let mut out = String::from("[experiment]\n");
        let _ = writeln!(out, "name = {}", self.name);
        if let Some(path) = instance_ref {
            let _ = writeln!(out, "instance = {path}");
        }
        let _ = writeln!(out, "horizon = {}", self.horizon);
        let _ = writeln!(out, "trials = {}", self.trials);
        let _ = writeln!(out, "master_seed = {}", self.master_seed);
        let agents: Vec<&str> = self.agents.iter().map(|a| a.name()).collect();
        let _ = writeln!(out, "agents = {}", agents.join(", "));
        let _ = writeln!(out, "output_dir = {}", self.output_dir.display());
        out.push_str("\n[human]\n");
        let h = &self.human;
        for (key, value) in [
            ("alpha", h.alpha),
            ("beta", h.beta),
            ("lambda", h.lambda),
            ("gamma", h.gamma),
            ("delta", h.delta),
            ("theta", h.theta),
        ] {
            let _ = writeln!(out, "{key} = {}", format_g6(value));
        }
        out.push_str("\n[robot]\n");
        let r = &self.robot;
        let _ = writeln!(out, "r0 = {}", format_g6(r.r0));
        let _ = writeln!(out, "warmup_steps = {}", r.warmup_steps);
        let _ = writeln!(out, "refit_period = {}", r.refit_period);
        let _ = writeln!(out, "smoothing_pseudocount = {}", format_g6(r.smoothing_pseudocount));
        let _ = writeln!(out, "bias_mode = {}", r.bias_mode.as_str());
        if instance_ref.is_none() {
            out.push('\n');
            out.push_str(&self.instance.to_ini());
        }
        out
    }
}

fn parse_human(section: &IniSection, defaults: &CptParams, file: &str) -> Result<CptParams> {
    let mut vals = [
        defaults.alpha,
        defaults.beta,
        defaults.lambda,
        defaults.gamma,
        defaults.delta,
        defaults.theta,
    ];
    for (key, value, line) in &section.entries {
        let slot = match key.as_str() {
            "alpha" => 0,
            "beta" => 1,
            "lambda" => 2,
            "gamma" => 3,
            "delta" => 4,
            "theta" => 5,
            other => {
                return Err(Error::Parse {
                    file: file.to_string(),
                    line: *line,
                    message: format!("unknown [human] key `{other}`"),
                })
            }
        };
        vals[slot] = parse_f64(value, file, *line)?;
    }
    CptParams::new(vals[0], vals[1], vals[2], vals[3], vals[4], vals[5])
}

fn parse_robot(section: &IniSection, robot: &mut RobotConfig, file: &str) -> Result<()> {
    for (key, value, line) in &section.entries {
        let line = *line;
        match key.as_str() {
            "r0" => robot.r0 = parse_f64(value, file, line)?,
            "warmup_steps" => robot.warmup_steps = parse_u64(value, file, line)? as usize,
            "refit_period" => robot.refit_period = parse_u64(value, file, line)? as usize,
            "smoothing_pseudocount" => {
                robot.smoothing_pseudocount = parse_f64(value, file, line)?
            }
            "bias_mode" => {
                robot.bias_mode = value.parse().map_err(|e| Error::Parse {
                    file: file.to_string(),
                    line,
                    message: format!("{e}"),
                })?
            }
            other => {
                return Err(Error::Parse {
                    file: file.to_string(),
                    line,
                    message: format!("unknown [robot] key `{other}`"),
                })
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TranscriptRow {
    pub trial: usize,
    pub t: usize,
    pub agent: AgentKind,
    pub human_action: usize,
    pub robot_action: usize,
    pub class: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub trial: usize,
    pub agent: AgentKind,
    /// Sum of reward values over the horizon.
    pub total_return: f64,
    pub arm_pull_counts: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ExperimentSummary {
    pub mab_name: String,
    pub agents: Vec<AgentKind>,
    /// One per agent, in `agents` order; n equals the trial count.
    pub groups: Vec<GroupSummary>,
    /// Present when there are >= 2 agents and >= 2 trials.
    pub anova: Option<AnovaResult>,
    pub tukey: Option<TukeyResult>,
}

#[derive(Debug, Clone)]
pub struct SimulationOutput {
    pub rows: Vec<TranscriptRow>,
    pub trial_results: Vec<TrialResult>,
    pub summary: ExperimentSummary,
}

/// Runs all trials (in parallel) and the statistical analysis, without
/// touching the filesystem. Deterministic in `cfg`.
pub fn simulate_experiment(cfg: &ExperimentConfig) -> Result<SimulationOutput> {
    cfg.validate()?;
    let per_trial: Vec<(Vec<TranscriptRow>, Vec<TrialResult>)> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| run_trial(cfg, trial))
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut trial_results = Vec::new();
    for (r, t) in per_trial {
        rows.extend(r);
        trial_results.extend(t);
    }

    let returns_by_agent: Vec<Vec<f64>> = cfg
        .agents
        .iter()
        .map(|agent| {
            trial_results
                .iter()
                .filter(|r| r.agent == *agent)
                .map(|r| r.total_return)
                .collect()
        })
        .collect();

    let groups: Vec<GroupSummary> = cfg
        .agents
        .iter()
        .zip(&returns_by_agent)
        .map(|(agent, returns)| {
            if returns.len() >= 2 {
                summarize(agent.name(), returns)
            } else {
                // Single-trial runs: mean is the lone return, std 0.
                Ok(GroupSummary {
                    name: agent.name().to_string(),
                    n: 1,
                    mean: returns[0],
                    std: 0.0,
                })
            }
        })
        .collect::<Result<_>>()?;

    let (anova, tukey) = if cfg.agents.len() >= 2 && cfg.trials >= 2 {
        let analysis_seed = derive_seed(cfg.master_seed, &[name_tag("analysis")]);
        (
            Some(one_way_anova(&returns_by_agent)?),
            Some(tukey_hsd(&returns_by_agent, 0.05, DEFAULT_TUKEY_MC_DRAWS, analysis_seed)?),
        )
    } else {
        (None, None)
    };

    Ok(SimulationOutput {
        rows,
        trial_results,
        summary: ExperimentSummary {
            mab_name: cfg.name.clone(),
            agents: cfg.agents.clone(),
            groups,
            anova,
            tukey,
        },
    })
}

/// Runs the simulation and writes `transcripts.csv`, `summary.csv`, and
/// `report.txt` into the output directory.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentSummary> {
    let sim = simulate_experiment(cfg)?;
    std::fs::create_dir_all(&cfg.output_dir)?;
    std::fs::write(cfg.output_dir.join(TRANSCRIPTS_FILE), render_transcripts(&sim.rows))?;
    std::fs::write(cfg.output_dir.join(SUMMARY_FILE), render_summary_csv(&sim.summary))?;
    std::fs::write(cfg.output_dir.join(REPORT_FILE), render_report(&sim.summary))?;
    Ok(sim.summary)
}

fn run_trial(cfg: &ExperimentConfig, trial: usize) -> Result<(Vec<TranscriptRow>, Vec<TrialResult>)> {
    let stream_seed = derive_seed(cfg.master_seed, &[trial as u64]);
    let stream = sample_stream(&cfg.instance, cfg.horizon, stream_seed)?;
    let class_values = cfg.instance.class_values();
    let num_arms = cfg.instance.num_arms();

    let mut rows = Vec::with_capacity(cfg.agents.len() * cfg.horizon);
    let mut results = Vec::with_capacity(cfg.agents.len());
    for &agent in &cfg.agents {
        let agent_seed = derive_seed(cfg.master_seed, &[trial as u64, name_tag(agent.name())]);
        let mut total_return = 0.0;
        let mut pull_counts = vec![0usize; num_arms];
        match agent {
            AgentKind::Ucb => {
                let mut stat = ArmStatistic::new(num_arms, class_values.clone())?;
                for t in 1..=cfg.horizon {
                    let arm = ucb_choose(&stat, t);
                    let (class, value) = stream.pull(arm, stat.pulls(arm))?;
                    rab_ucb_update(&mut stat, arm, class, value)?;
                    total_return += value;
                    pull_counts[arm] += 1;
                    rows.push(TranscriptRow {
                        trial,
                        t,
                        agent,
                        human_action: arm,
                        robot_action: arm,
                        class,
                        value,
                    });
                }
            }
            AgentKind::RabUcb => {
                let mut stat = ArmStatistic::new(num_arms, class_values.clone())?;
                let mut rng = ChaCha8Rng::seed_from_u64(agent_seed);
                for t in 1..=cfg.horizon {
                    let arm = rab_ucb_choose(&stat, &cfg.human, t, &mut rng)?;
                    let (class, value) = stream.pull(arm, stat.pulls(arm))?;
                    rab_ucb_update(&mut stat, arm, class, value)?;
                    total_return += value;
                    pull_counts[arm] += 1;
                    rows.push(TranscriptRow {
                        trial,
                        t,
                        agent,
                        human_action: arm,
                        robot_action: arm,
                        class,
                        value,
                    });
                }
            }
            AgentKind::HrTeam => {
                let mut team = TeamState::new(
                    num_arms,
                    class_values.clone(),
                    cfg.human.clone(),
                    cfg.robot.clone(),
                    derive_seed(agent_seed, &[0]),
                    derive_seed(agent_seed, &[1]),
                )?;
                for t in 1..=cfg.horizon {
                    let out = team_step(&mut team, &stream, t)?;
                    total_return += out.value;
                    pull_counts[out.robot_action] += 1;
                    rows.push(TranscriptRow {
                        trial,
                        t,
                        agent,
                        human_action: out.human_action,
                        robot_action: out.robot_action,
                        class: out.class,
                        value: out.value,
                    });
                }
            }
        }
        results.push(TrialResult {
            trial,
            agent,
            total_return,
            arm_pull_counts: pull_counts,
        });
    }
    Ok((rows, results))
}

/// `%.6g`-style rendering: 6 significant digits, fixed-point in
/// [1e-4, 1e6), scientific (`1.23457e8`) outside, trailing zeros trimmed.
pub fn format_g6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let mut exp = x.abs().log10().floor() as i32;
    // Rounding to 6 significant digits can carry into the next decade
    // (e.g. 999999.5 -> 1e6); recheck after rounding.
    let scale = 10f64.powi(5 - exp);
    let rounded = (x * scale).round() / scale;
    if rounded != 0.0 {
        exp = rounded.abs().log10().floor() as i32;
    }
    if exp < -4 || exp >= 6 {
        let mantissa = rounded / 10f64.powi(exp);
        let s = trim_zeros(&format!("{mantissa:.5}"));
        format!("{s}e{exp}")
    } else {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{rounded:.decimals$}"))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn render_transcripts(rows: &[TranscriptRow]) -> String {
    let mut out = String::with_capacity(32 * rows.len() + 64);
    out.push_str("trial,t,agent,human_action,robot_action,class,value\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.trial,
            r.t,
            r.agent.name(),
            r.human_action,
            r.robot_action,
            r.class,
            format_g6(r.value)
        );
    }
    out
}

pub fn render_summary_csv(summary: &ExperimentSummary) -> String {
    let mut out = String::from("mab,agent,mean,std,n\n");
    for g in &summary.groups {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            summary.mab_name,
            g.name,
            format_g6(g.mean),
            format_g6(g.std),
            g.n
        );
    }
    out
}

pub fn render_report(summary: &ExperimentSummary) -> String {
    let mut out = String::new();
    let display: Vec<&str> = summary.agents.iter().map(|a| a.display_name()).collect();
    let mab_width = summary.mab_name.len().max("MAB".len()) + 2;
    let agent_width = display.iter().map(|s| s.len()).max().unwrap_or(0).max("Agent".len()) + 2;
    let _ = writeln!(
        out,
        "{:<mab_width$}{:<agent_width$}{:<14}{}",
        "MAB", "Agent", "avg. return", "std."
    );
    for (i, g) in summary.groups.iter().enumerate() {
        let mab = if i == 0 { summary.mab_name.as_str() } else { "" };
        let _ = writeln!(
            out,
            "{:<mab_width$}{:<agent_width$}{:<14}{}",
            mab,
            display[i],
            format_g6(g.mean),
            format_g6(g.std)
        );
    }
    out.push('\n');
    match (&summary.anova, &summary.tukey) {
        (Some(anova), Some(tukey)) => {
            let _ = writeln!(
                out,
                "One-way ANOVA: F = {}, df = ({}, {}), p = {}",
                format_g6(anova.f_statistic),
                anova.df_between,
                anova.df_within,
                format_g6(anova.p_value)
            );
            out.push_str("Tukey HSD (alpha = 0.05):\n");
            for pair in &tukey.pairs {
                let _ = writeln!(
                    out,
                    "  {} vs {}: mean diff = {}, q = {}, p = {}, {}",
                    summary.agents[pair.group_i].display_name(),
                    summary.agents[pair.group_j].display_name(),
                    format_g6(pair.mean_diff),
                    format_g6(pair.q_statistic),
                    format_g6(pair.p_value),
                    if pair.reject_at_05 { "reject" } else { "no rejection" }
                );
            }
        }
        _ => {
            out.push_str("Statistical analysis requires at least 2 agents and 2 trials.\n");
        }
    }
    out
}

/// Writes the two reference instances and a ready-to-run config into `dir`.
/// Returns the created file paths.
pub fn write_reference_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let (d1, d2) = crate::bandit::make_reference_instances();
    std::fs::create_dir_all(dir)?;
    let d1_path = dir.join("d1.ini");
    let d2_path = dir.join("d2.ini");
    let cfg_path = dir.join("config.ini");
    std::fs::write(&d1_path, d1.to_ini())?;
    std::fs::write(&d2_path, d2.to_ini())?;
    let cfg = ExperimentConfig::new("risky-better", d1);
    std::fs::write(&cfg_path, cfg.to_ini(Some("d1.ini")))?;
    Ok(vec![d1_path, d2_path, cfg_path])
}
