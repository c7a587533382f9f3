//! Assistive multi-armed bandit simulator.
//!
//! The library models a repeated-choice game between a human whose arm
//! values are distorted by cumulative prospect theory (loss aversion plus
//! rank-dependent probability weighting) and a robot that observes the
//! human's choices, fits latent per-class reward values that explain them,
//! strips the distortion off, and substitutes its own arm choice each round.
//! A rational UCB agent serves as the baseline.
//!
//! Modules:
//! - [`bandit`]: bandit instances with discrete reward classes and seeded,
//!   replayable reward streams shared by all compared agents.
//! - [`cpt`]: the prospect-theory value function, probability weighting and
//!   rank-dependent decision weights, plus the inverse value transform.
//! - [`optim`]: Powell's conjugate direction method with a bracketing /
//!   golden-section line search, hardened for piecewise-constant objectives.
//! - [`policies`]: the UCB baseline, the biased human policy, and the
//!   human-robot team.
//! - [`stats`]: one-way ANOVA and Tukey HSD post-hoc comparisons.
//! - [`harness`]: config files, the multi-trial experiment runner, and the
//!   CSV/report writers behind the CLI.
//!
//! All randomness flows through ChaCha8 generators seeded by splitmix64
//! chains (see [`seed`]), so every run is reproducible from a single master
//! seed regardless of thread count.

pub mod bandit;
pub mod cpt;
pub mod harness;
mod ini;
pub mod optim;
pub mod policies;
pub mod seed;
pub mod selftest;
pub mod stats;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A bandit instance, prospect, or parameter set failed validation.
    #[error("validation error: {0}")]
    Validation(String),
    /// A reward stream was pulled past its horizon.
    #[error("stream exhausted: arm {arm} pull {pull_index} >= horizon {horizon}")]
    ExhaustedStream {
        arm: usize,
        pull_index: usize,
        horizon: usize,
    },
    /// An argument was outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A config or instance file could not be parsed.
    #[error("parse error in {file} (line {line}): {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
