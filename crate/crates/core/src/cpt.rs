//! Cumulative prospect theory: value transform, probability weighting,
//! rank-dependent decision weights, and the inverse value transform.
//!
//! Functional forms follow Tversky & Kahneman's cumulative model:
//! `v(x) = x^alpha` for gains, `v(x) = -lambda * (-x)^beta` for losses, and
//! `w(p) = p^g / (p^g + (1-p)^g)^(1/g)`. Decision weights are differences of
//! `w` applied to cumulative probabilities, taken from the extremes inward:
//! the best gain and the worst loss are weighted first.

use crate::{Error, Result};

/// Behavioral parameters of the biased agent.
///
/// `alpha`/`beta` curve gains/losses, `lambda` scales losses, `gamma`/`delta`
/// bend gain/loss probabilities, and `theta` is the rationality coefficient
/// of the final softmax choice (used by policies, not by the transforms
/// here). Note the weighting function is only monotone for exponents above
/// roughly 0.28; the usual behavioral fits (0.5-0.69) are safely inside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CptParams {
    pub alpha: f64,
    pub beta: f64,
    pub lambda: f64,
    pub gamma: f64,
    pub delta: f64,
    pub theta: f64,
}

impl CptParams {
    pub fn new(
        alpha: f64,
        beta: f64,
        lambda: f64,
        gamma: f64,
        delta: f64,
        theta: f64,
    ) -> Result<Self> {
        let params = Self {
            alpha,
            beta,
            lambda,
            gamma,
            delta,
            theta,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let in_unit = |v: f64| v > 0.0 && v <= 1.0;
        if !in_unit(self.alpha) || !in_unit(self.beta) {
            return Err(Error::Validation(format!(
                "alpha and beta must be in (0, 1], got alpha={} beta={}",
                self.alpha, self.beta
            )));
        }
        if !(self.lambda >= 1.0) {
            return Err(Error::Validation(format!(
                "lambda must be >= 1, got {}",
                self.lambda
            )));
        }
        if !in_unit(self.gamma) || !in_unit(self.delta) {
            return Err(Error::Validation(format!(
                "gamma and delta must be in (0, 1], got gamma={} delta={}",
                self.gamma, self.delta
            )));
        }
        if !(self.theta >= 0.0) {
            return Err(Error::Validation(format!(
                "theta must be >= 0, got {}",
                self.theta
            )));
        }
        Ok(())
    }

    /// Identity parameterization: every transform becomes the identity and
    /// downstream choices coincide with the rational ones.
    pub fn rational() -> Self {
        Self {
            alpha: 1.0,
            beta: 1.0,
            lambda: 1.0,
            gamma: 1.0,
            delta: 1.0,
            theta: 1.0,
        }
    }
}

/// The simulator's stock human parameterization.
impl Default for CptParams {
    fn default() -> Self {
        Self {
            alpha: 0.5,
            beta: 0.5,
            lambda: 2.0,
            gamma: 0.5,
            delta: 0.5,
            theta: 1.0,
        }
    }
}

/// A finite lottery in canonical form: outcomes sorted ascending by value,
/// exact duplicates merged, probabilities summing to 1 (tolerance 1e-9).
/// Zero-probability outcomes are kept; they receive zero decision weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Prospect {
    outcomes: Vec<(f64, f64)>,
}

impl Prospect {
    pub fn new(mut outcomes: Vec<(f64, f64)>) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::Validation("prospect has no outcomes".to_string()));
        }
        for (value, prob) in &outcomes {
            if !value.is_finite() {
                return Err(Error::Validation(format!("non-finite outcome value {value}")));
            }
            if !prob.is_finite() || *prob < 0.0 {
                return Err(Error::Validation(format!(
                    "outcome probability {prob} is negative or non-finite"
                )));
            }
        }
        let total: f64 = outcomes.iter().map(|(_, p)| p).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Validation(format!(
                "outcome probabilities sum to {total}, not 1"
            )));
        }
        outcomes.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(outcomes.len());
        for (value, prob) in outcomes {
            match merged.last_mut() {
                Some((v, p)) if *v == value => *p += prob,
                _ => merged.push((value, prob)),
            }
        }
        Ok(Self { outcomes: merged })
    }

    /// A sure thing.
    pub fn sure(value: f64) -> Self {
        Self {
            outcomes: vec![(value, 1.0)],
        }
    }

    /// Builds a prospect from ascending class values and a probability row.
    pub fn from_class_probs(class_values: &[f64], probs: &[f64]) -> Result<Self> {
        if class_values.len() != probs.len() {
            return Err(Error::Validation(format!(
                "{} class values but {} probabilities",
                class_values.len(),
                probs.len()
            )));
        }
        Self::new(class_values.iter().copied().zip(probs.iter().copied()).collect())
    }

    /// Outcomes as `(value, probability)`, ascending by value.
    pub fn outcomes(&self) -> &[(f64, f64)] {
        &self.outcomes
    }
}

/// `v(x)`: concave power curve on gains, convex and `lambda`-amplified on
/// losses; `v(0) = 0`.
pub fn value_transform(x: f64, p: &CptParams) -> f64 {
    if x >= 0.0 {
        x.powf(p.alpha)
    } else {
        -p.lambda * (-x).powf(p.beta)
    }
}

/// Inverse of [`value_transform`]: `value_inverse(value_transform(x)) = x`.
pub fn value_inverse(y: f64, p: &CptParams) -> f64 {
    if y >= 0.0 {
        y.powf(1.0 / p.alpha)
    } else {
        -((-y) / p.lambda).powf(1.0 / p.beta)
    }
}

/// `w(p)`: overweights small probabilities, underweights large ones.
/// `exponent` is `gamma` on the gain side and `delta` on the loss side.
pub fn probability_weight(prob: f64, exponent: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&prob) {
        return Err(Error::Domain(format!("probability {prob} outside [0, 1]")));
    }
    if prob == 0.0 {
        return Ok(0.0);
    }
    if prob == 1.0 {
        return Ok(1.0);
    }
    let pg = prob.powf(exponent);
    Ok(pg / (pg + (1.0 - prob).powf(exponent)).powf(1.0 / exponent))
}

/// How [`bias_probability_row`] distorts a probability row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BiasMode {
    /// Rank-dependent cumulative weighting (the prospect-theory definition).
    #[default]
    Cumulative,
    /// `w` applied to each entry independently; kept as a sensitivity switch.
    PerEntry,
}

impl BiasMode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Cumulative => "cumulative",
            Self::PerEntry => "per_entry",
        }
    }
}

impl std::str::FromStr for BiasMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cumulative" => Ok(Self::Cumulative),
            "per_entry" => Ok(Self::PerEntry),
            other => Err(Error::Validation(format!(
                "unknown bias mode `{other}` (expected `cumulative` or `per_entry`)"
            ))),
        }
    }
}

/// Rank-dependent decision weights over ascending `values` with matching
/// `probs`. A value of exactly 0 sits on the gain side (its `v` contribution
/// is 0 either way). Weights are not renormalized; they need not sum to 1.
fn rank_dependent_weights(values: &[f64], probs: &[f64], p: &CptParams) -> Vec<f64> {
    let n = values.len();
    let mut weights = vec![0.0; n];
    // Gains, best outcome first: pi_i = w(p_i + ... + p_top) - w(p_{i+1} + ... + p_top).
    let mut cum = 0.0f64;
    for i in (0..n).rev() {
        if values[i] < 0.0 {
            break;
        }
        let w_hi = probability_weight(cum.min(1.0), p.gamma).unwrap();
        cum += probs[i];
        let w_lo = probability_weight(cum.min(1.0), p.gamma).unwrap();
        weights[i] = w_lo - w_hi;
    }
    // Losses, worst outcome first, mirrored with the delta exponent.
    let mut cum = 0.0f64;
    for i in 0..n {
        if values[i] >= 0.0 {
            break;
        }
        let w_lo = probability_weight(cum.min(1.0), p.delta).unwrap();
        cum += probs[i];
        let w_hi = probability_weight(cum.min(1.0), p.delta).unwrap();
        weights[i] = w_hi - w_lo;
    }
    weights
}

/// Decision weight per outcome of a canonical prospect, in outcome order.
pub fn decision_weights(pr: &Prospect, p: &CptParams) -> Vec<f64> {
    let values: Vec<f64> = pr.outcomes.iter().map(|(v, _)| *v).collect();
    let probs: Vec<f64> = pr.outcomes.iter().map(|(_, q)| *q).collect();
    rank_dependent_weights(&values, &probs, p)
}

/// The CPT value of a prospect: `sum_i pi_i * v(x_i)`. Reduces to `v(x)` for
/// a sure outcome `x`.
pub fn cpt_value(pr: &Prospect, p: &CptParams) -> f64 {
    decision_weights(pr, p)
        .iter()
        .zip(&pr.outcomes)
        .map(|(pi, (value, _))| pi * value_transform(*value, p))
        .sum()
}

/// Applies the probability bias to one arm's class-probability row.
///
/// `class_values` must be in ascending (ordinal) class order and `probs` must
/// sum to 1. The output keeps each class in place and is not renormalized.
pub fn bias_probability_row(
    probs: &[f64],
    class_values: &[f64],
    p: &CptParams,
    mode: BiasMode,
) -> Vec<f64> {
    debug_assert_eq!(probs.len(), class_values.len());
    match mode {
        BiasMode::Cumulative => rank_dependent_weights(class_values, probs, p),
        BiasMode::PerEntry => probs
            .iter()
            .zip(class_values)
            .map(|(&prob, &value)| {
                let exponent = if value >= 0.0 { p.gamma } else { p.delta };
                probability_weight(prob.clamp(0.0, 1.0), exponent).unwrap()
            })
            .collect(),
    }
}
