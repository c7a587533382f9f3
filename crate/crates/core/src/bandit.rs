//! Bandit instances with discrete reward classes and replayable reward
//! streams.
//!
//! Streams are pre-sampled per `(arm, pull_count)`: an agent pulling arm `a`
//! for its k-th time always sees `draws[a][k-1]`, so any two agents that pull
//! an arm the same number of times observe identical class sequences. This is
//! what makes cross-agent comparisons paired.

use crate::ini::{parse_f64, IniDocument};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Probability-row normalization tolerance for programmatic construction.
pub const ROW_SUM_TOLERANCE: f64 = 1e-12;
/// Looser tolerance applied when reading instance files; accepted rows are
/// renormalized exactly before construction.
pub const FILE_ROW_SUM_TOLERANCE: f64 = 1e-9;

/// One discrete reward outcome: observers see the label, agents collecting
/// the reward receive the numeric value.
#[derive(Debug, Clone, PartialEq)]
pub struct RewardClass {
    /// Position in the ascending-value class order, 0..M.
    pub index: usize,
    pub label: String,
    /// Utility delivered when this class is drawn.
    pub value: f64,
}

/// N arms sharing M reward classes, each arm with its own categorical
/// distribution over the classes.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditInstance {
    classes: Vec<RewardClass>,
    /// Row `a` is arm a's distribution over classes, N x M.
    arm_probs: Vec<Vec<f64>>,
}

impl BanditInstance {
    /// Builds an instance from `(label, value)` class definitions and per-arm
    /// probability rows. Classes are stored sorted ascending by value (the
    /// ordinal order all rank-dependent math uses); probability columns are
    /// permuted to match, and class indices refer to the sorted order.
    pub fn new(classes: Vec<(String, f64)>, arm_probs: Vec<Vec<f64>>) -> Result<Self> {
        if classes.len() < 2 {
            return Err(Error::Validation(format!(
                "need at least 2 reward classes, got {}",
                classes.len()
            )));
        }
        if arm_probs.len() < 2 {
            return Err(Error::Validation(format!(
                "need at least 2 arms, got {}",
                arm_probs.len()
            )));
        }
        for (label, value) in &classes {
            if !value.is_finite() {
                return Err(Error::Validation(format!(
                    "class `{label}` has non-finite value {value}"
                )));
            }
        }
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by(|&i, &j| classes[i].1.partial_cmp(&classes[j].1).unwrap());

        let sorted: Vec<RewardClass> = order
            .iter()
            .enumerate()
            .map(|(index, &src)| RewardClass {
                index,
                label: classes[src].0.clone(),
                value: classes[src].1,
            })
            .collect();
        for i in 1..sorted.len() {
            if sorted.iter().filter(|c| c.label == sorted[i].label).count() > 1 {
                return Err(Error::Validation(format!(
                    "duplicate class label `{}`",
                    sorted[i].label
                )));
            }
        }

        let m = sorted.len();
        let mut permuted_rows = Vec::with_capacity(arm_probs.len());
        for (arm, row) in arm_probs.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Validation(format!(
                    "arm {arm} has {} probabilities, expected {m}",
                    row.len()
                )));
            }
            let permuted: Vec<f64> = order.iter().map(|&src| row[src]).collect();
            validate_row(&permuted, arm, ROW_SUM_TOLERANCE)?;
            permuted_rows.push(permuted);
        }

        Ok(Self {
            classes: sorted,
            arm_probs: permuted_rows,
        })
    }

    pub fn num_arms(&self) -> usize {
        self.arm_probs.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[RewardClass] {
        &self.classes
    }

    /// Class values in ascending (ordinal) order.
    pub fn class_values(&self) -> Vec<f64> {
        self.classes.iter().map(|c| c.value).collect()
    }

    pub fn arm_probs(&self) -> &[Vec<f64>] {
        &self.arm_probs
    }

    /// True expected reward of one pull of `arm`.
    pub fn true_mean(&self, arm: usize) -> f64 {
        self.arm_probs[arm]
            .iter()
            .zip(&self.classes)
            .map(|(p, c)| p * c.value)
            .sum()
    }

    /// Arm with the highest true expected reward (lowest index on ties).
    pub fn best_arm(&self) -> usize {
        let mut best = 0;
        for a in 1..self.num_arms() {
            if self.true_mean(a) > self.true_mean(best) {
                best = a;
            }
        }
        best
    }

    /// Parses the INI instance format: a `[classes]` section of
    /// `label = value` lines and one `[arm.<i>]` section per arm with
    /// `p<k> = prob` lines. Rows further than [`FILE_ROW_SUM_TOLERANCE`] from
    /// summing to 1 are rejected; accepted rows are renormalized exactly.
    pub fn from_ini_str(text: &str, file: &str) -> Result<Self> {
        let doc = IniDocument::parse(text, file)?;
        let class_section = doc.section("classes").ok_or_else(|| Error::Parse {
            file: file.to_string(),
            line: 0,
            message: "missing [classes] section".to_string(),
        })?;
        let mut classes = Vec::new();
        for (label, value, line) in &class_section.entries {
            classes.push((label.clone(), parse_f64(value, file, *line)?));
        }
        let m = classes.len();

        let mut arms: Vec<(usize, Vec<f64>)> = Vec::new();
        for section in &doc.sections {
            let Some(suffix) = section.name.strip_prefix("arm.") else {
                continue;
            };
            let arm: usize = suffix.parse().map_err(|_| Error::Parse {
                file: file.to_string(),
                line: section.line,
                message: format!("bad arm index `{suffix}`"),
            })?;
            let mut row = vec![0.0; m];
            let mut seen = vec![false; m];
            for (key, value, line) in &section.entries {
                let k: usize = key
                    .strip_prefix('p')
                    .and_then(|s| s.parse().ok())
                    .filter(|&k| k < m)
                    .ok_or_else(|| Error::Parse {
                        file: file.to_string(),
                        line: *line,
                        message: format!("expected p0..p{}, got `{key}`", m.saturating_sub(1)),
                    })?;
                row[k] = parse_f64(value, file, *line)?;
                seen[k] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::Parse {
                    file: file.to_string(),
                    line: section.line,
                    message: format!("arm {arm} is missing probability entries"),
                });
            }
            validate_row(&row, arm, FILE_ROW_SUM_TOLERANCE).map_err(|e| Error::Parse {
                file: file.to_string(),
                line: section.line,
                message: e.to_string(),
            })?;
            let sum: f64 = row.iter().sum();
            for p in &mut row {
                *p /= sum;
            }
            arms.push((arm, row));
        }
        arms.sort_by_key(|(idx, _)| *idx);
        for (expected, (idx, _)) in arms.iter().enumerate() {
            if *idx != expected {
                return Err(Error::Parse {
                    file: file.to_string(),
                    line: 0,
                    message: format!("arm sections must be arm.0..arm.{}, found arm.{idx}", arms.len() - 1),
                });
            }
        }
        Self::new(classes, arms.into_iter().map(|(_, row)| row).collect())
    }

    /// Reads an instance file from disk.
    pub fn from_ini_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_ini_str(&text, &path.display().to_string())
    }

    /// Renders the instance in the same INI format [`from_ini_str`] reads.
    ///
    /// [`from_ini_str`]: Self::from_ini_str
    pub fn to_ini(&self) -> String {
        let mut out = String::from("[classes]\n");
        for class in &self.classes {
            out.push_str(&format!("{} = {}\n", class.label, fmt_full(class.value)));
        }
        for (a, row) in self.arm_probs.iter().enumerate() {
            out.push_str(&format!("\n[arm.{a}]\n"));
            for (k, p) in row.iter().enumerate() {
                out.push_str(&format!("p{k} = {}\n", fmt_full(*p)));
            }
        }
        out
    }
}

/// Shortest decimal that round-trips the f64 exactly.
fn fmt_full(x: f64) -> String {
    let mut s = format!("{x}");
    if !s.contains('.') && !s.contains('e') && !s.contains("inf") && !s.contains("NaN") {
        s.push_str(".0");
    }
    s
}

fn validate_row(row: &[f64], arm: usize, tolerance: f64) -> Result<()> {
    for (k, p) in row.iter().enumerate() {
        if !p.is_finite() || *p < 0.0 {
            return Err(Error::Validation(format!(
                "arm {arm} class {k}: probability {p} is negative or non-finite"
            )));
        }
    }
    let sum: f64 = row.iter().sum();
    if (sum - 1.0).abs() > tolerance {
        return Err(Error::Validation(format!(
            "arm {arm}: probabilities sum to {sum}, not 1 (tolerance {tolerance:e})"
        )));
    }
    Ok(())
}

/// Pre-sampled reward classes per `(arm, pull_count)`.
///
/// Regenerating with the same `(instance, horizon, seed)` yields identical
/// draws; generation is a pure function of its inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct RewardStream {
    /// N x T class indices; `draws[a][j]` is the class delivered by the
    /// (j+1)-th pull of arm `a`.
    draws: Vec<Vec<usize>>,
    class_values: Vec<f64>,
    seed: u64,
    horizon: usize,
}

impl RewardStream {
    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn draws(&self) -> &[Vec<usize>] {
        &self.draws
    }

    /// Class index and value for the `pull_index`-th pull of `arm`.
    /// Does not mutate; callers track their own per-arm pull counts.
    pub fn pull(&self, arm: usize, pull_index: usize) -> Result<(usize, f64)> {
        if arm >= self.draws.len() {
            return Err(Error::Validation(format!(
                "arm {arm} out of range (N = {})",
                self.draws.len()
            )));
        }
        if pull_index >= self.horizon {
            return Err(Error::ExhaustedStream {
                arm,
                pull_index,
                horizon: self.horizon,
            });
        }
        let class = self.draws[arm][pull_index];
        Ok((class, self.class_values[class]))
    }
}

/// Pre-samples `horizon` i.i.d. class draws per arm, ChaCha8-seeded.
pub fn sample_stream(instance: &BanditInstance, horizon: usize, seed: u64) -> Result<RewardStream> {
    if horizon == 0 {
        return Err(Error::Validation("horizon must be >= 1".to_string()));
    }
    for (arm, row) in instance.arm_probs().iter().enumerate() {
        validate_row(row, arm, ROW_SUM_TOLERANCE)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws = instance
        .arm_probs()
        .iter()
        .map(|row| {
            (0..horizon)
                .map(|_| draw_class(row, rng.random::<f64>()))
                .collect()
        })
        .collect();
    Ok(RewardStream {
        draws,
        class_values: instance.class_values(),
        seed,
        horizon,
    })
}

/// Inverse-CDF draw from a probability row given u in [0, 1).
fn draw_class(row: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (k, p) in row.iter().enumerate() {
        acc += p;
        if u < acc {
            return k;
        }
    }
    row.len() - 1
}

/// The two reference instances used by the comparative experiment, both over
/// class values (-1.0, 0.5, 2.0).
///
/// D1 "risky-better": the risky arm has the higher true mean (1.1 vs 0.5)
/// but a lower CPT-perceived value, so the biased human prefers the worse
/// arm. D2 "safe-better": the safe arm is truly better (0.5 vs 0.35) and the
/// bias helps.
pub fn make_reference_instances() -> (BanditInstance, BanditInstance) {
    let classes = || {
        vec![
            ("loss".to_string(), -1.0),
            ("small_gain".to_string(), 0.5),
            ("big_gain".to_string(), 2.0),
        ]
    };
    let d1 = BanditInstance::new(
        classes(),
        vec![vec![0.0, 1.0, 0.0], vec![0.3, 0.0, 0.7]],
    )
    .expect("reference instance D1 is valid");
    let d2 = BanditInstance::new(
        classes(),
        vec![vec![0.0, 1.0, 0.0], vec![0.55, 0.0, 0.45]],
    )
    .expect("reference instance D2 is valid");
    (d1, d2)
}
