//! Sequential Monte Carlo frame-error-rate estimation.
//!
//! A trial is identified by (master seed, epsilon grid index, trial index),
//! so its error realization is independent of execution order and of the
//! decoder configuration under test: every L0 column of a sweep decodes the
//! exact same error at the same trial index. Early stopping is resolved in
//! trial-index order, which makes the reported (trials, frame_errors) pair a
//! pure function of the seed schema; the multi-threaded runner in the
//! companion crate reproduces it bit-exactly by replaying the same scan over
//! out-of-order records.

use crate::bp::{
    decode_success, DecodeError, DecoderConfig, DecoderFamily, DecoderInstance, LlrDomainError,
    Scalarization,
};
use crate::channel::{DepolarizingChannel, InvalidProbability, TrialSeed, GENERATOR_ID};
use crate::code::StabilizerCode;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Per-point trial budget and early-stop rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StoppingPolicy {
    pub max_trials: u64,
    pub target_frame_errors: u64,
    pub min_trials: u64,
}

/// Invalid stopping-policy parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolicyError;

impl fmt::Display for PolicyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "stopping policy requires min_trials <= max_trials, max_trials >= 1 and target_frame_errors >= 1"
        )
    }
}

impl StoppingPolicy {
    pub fn new(
        max_trials: u64,
        target_frame_errors: u64,
        min_trials: u64,
    ) -> Result<Self, PolicyError> {
        if max_trials == 0 || target_frame_errors == 0 || min_trials > max_trials {
            return Err(PolicyError);
        }
        Ok(Self {
            max_trials,
            target_frame_errors,
            min_trials,
        })
    }

    /// Run exactly `n` trials, no early stopping.
    pub fn fixed(n: u64) -> Self {
        Self {
            max_trials: n,
            target_frame_errors: u64::MAX,
            min_trials: n,
        }
    }

    /// Stop after a completed trial count and error count, in index order.
    #[inline]
    pub fn should_stop(&self, trials_done: u64, frame_errors: u64) -> bool {
        trials_done >= self.max_trials
            || (frame_errors >= self.target_frame_errors && trials_done >= self.min_trials)
    }
}

impl Default for StoppingPolicy {
    /// 100 target frame errors, at least 10^4 and at most 10^6 trials.
    fn default() -> Self {
        Self {
            max_trials: 1_000_000,
            target_frame_errors: 100,
            min_trials: 10_000,
        }
    }
}

/// FER estimate at one (epsilon, L0) grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FerPoint {
    pub epsilon: f64,
    pub epsilon_index: u32,
    /// The initial LLR actually used at this point.
    pub l0: f64,
    /// The assumed depolarizing probability equivalent to `l0`.
    pub eps0: f64,
    /// Trials actually run (N(epsilon) after early stopping).
    pub trials: u64,
    pub frame_errors: u64,
}

impl FerPoint {
    #[inline]
    pub fn fer(&self) -> f64 {
        self.frame_errors as f64 / self.trials as f64
    }

    #[inline]
    pub fn zero_error(&self) -> bool {
        self.frame_errors == 0
    }
}

/// How a series initializes the decoder LLR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LlrInit {
    /// Fixed initial LLR.
    InitialLlr(f64),
    /// Fixed assumed depolarizing probability.
    AssumedEpsilon(f64),
    /// Matched operation: the assumed probability tracks the channel.
    Matched,
}

impl LlrInit {
    /// Concrete decoder config for one channel point.
    pub fn config(
        &self,
        family: DecoderFamily,
        max_iterations: usize,
        scalarization: Scalarization,
        channel_epsilon: f64,
    ) -> Result<DecoderConfig, LlrDomainError> {
        let config = match self {
            LlrInit::InitialLlr(l0) => {
                DecoderConfig::from_initial_llr(family, *l0, max_iterations)?
            }
            LlrInit::AssumedEpsilon(eps0) => {
                DecoderConfig::from_assumed_epsilon(family, *eps0, max_iterations)?
            }
            LlrInit::Matched => {
                DecoderConfig::from_assumed_epsilon(family, channel_epsilon, max_iterations)?
            }
        };
        Ok(config.with_scalarization(scalarization))
    }

    /// True when the series has one L0 for every channel point.
    pub fn fixed_l0(&self) -> bool {
        !matches!(self, LlrInit::Matched)
    }
}

impl fmt::Display for LlrInit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LlrInit::InitialLlr(l0) => write!(f, "l0={l0}"),
            LlrInit::AssumedEpsilon(e) => write!(f, "eps0={e}"),
            LlrInit::Matched => write!(f, "matched"),
        }
    }
}

/// One FER-versus-epsilon curve at a fixed initialization rule.
#[derive(Debug, Clone, PartialEq)]
pub struct FerSeries {
    pub init: LlrInit,
    pub points: Vec<FerPoint>,
}

impl FerSeries {
    /// The common L0 of the series, when it has one.
    pub fn l0(&self) -> Option<f64> {
        if !self.init.fixed_l0() {
            return None;
        }
        self.points.first().map(|p| p.l0)
    }

    pub fn point_at(&self, epsilon: f64) -> Option<&FerPoint> {
        self.points.iter().find(|p| p.epsilon == epsilon)
    }
}

/// Provenance of a FER surface; embedded in every results file.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMeta {
    pub code_label: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub family: DecoderFamily,
    pub max_iterations: usize,
    pub scalarization: Scalarization,
    pub master_seed: u64,
    pub policy: StoppingPolicy,
    pub generator: &'static str,
}

/// FER estimates over an epsilon grid and a set of initialization series,
/// all decoding the same per-trial error realizations.
#[derive(Debug, Clone, PartialEq)]
pub struct FerSurface {
    pub meta: SurfaceMeta,
    pub eps_grid: Vec<f64>,
    pub series: Vec<FerSeries>,
}

impl FerSurface {
    /// FER point at an exact (epsilon, l0) pair among the fixed-L0 series.
    pub fn point(&self, epsilon: f64, l0: f64) -> Option<&FerPoint> {
        self.series
            .iter()
            .filter(|s| s.l0() == Some(l0))
            .find_map(|s| s.point_at(epsilon))
    }

    /// The distinct L0 values of the fixed series, in series order.
    pub fn l0_values(&self) -> Vec<f64> {
        self.series.iter().filter_map(FerSeries::l0).collect()
    }
}

/// Sweep-level failure.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepError {
    EmptyEpsilonGrid,
    EmptySeries,
    InvalidEpsilon(InvalidProbability),
    Llr(LlrDomainError),
    Decode(DecodeError),
}

impl fmt::Display for SweepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepError::EmptyEpsilonGrid => write!(f, "epsilon grid is empty"),
            SweepError::EmptySeries => write!(f, "no initialization series given"),
            SweepError::InvalidEpsilon(e) => write!(f, "{e}"),
            SweepError::Llr(e) => write!(f, "{e}"),
            SweepError::Decode(e) => write!(f, "{e}"),
        }
    }
}

impl From<InvalidProbability> for SweepError {
    fn from(e: InvalidProbability) -> Self {
        SweepError::InvalidEpsilon(e)
    }
}

impl From<LlrDomainError> for SweepError {
    fn from(e: LlrDomainError) -> Self {
        SweepError::Llr(e)
    }
}

impl From<DecodeError> for SweepError {
    fn from(e: DecodeError) -> Self {
        SweepError::Decode(e)
    }
}

/// Sweep parameters shared by every grid point.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub family: DecoderFamily,
    pub max_iterations: usize,
    pub scalarization: Scalarization,
    pub inits: Vec<LlrInit>,
    pub policy: StoppingPolicy,
    pub master_seed: u64,
}

/// Run one trial: sample the error of `seed`, decode its syndrome, and
/// report whether the frame failed (coset-level, non-convergence counts as
/// failure).
pub fn run_trial(
    code: &StabilizerCode,
    channel: &DepolarizingChannel,
    decoder: &mut DecoderInstance<'_>,
    seed: TrialSeed,
) -> bool {
    let error = channel.sample_error(code.n(), seed);
    let syndrome = code.syndrome(&error).expect("sampled error has length n");
    let result = decoder
        .decode(&syndrome)
        .expect("syndrome length matches code");
    !decode_success(code, &error, &result)
}

/// Consume per-trial failure flags in index order, applying the early-stop
/// rule after each trial. Returns (trials examined, frame errors counted).
///
/// This scan is the single definition of the stopping semantics; both the
/// sequential estimator and the parallel runner report exactly its output.
pub fn scan_stop(policy: &StoppingPolicy, outcomes: impl Iterator<Item = bool>) -> (u64, u64) {
    let mut trials = 0u64;
    let mut frame_errors = 0u64;
    for failed in outcomes.take(policy.max_trials as usize) {
        trials += 1;
        if failed {
            frame_errors += 1;
        }
        if policy.should_stop(trials, frame_errors) {
            break;
        }
    }
    (trials, frame_errors)
}

/// Sequential FER estimate at one channel point. This is the reference
/// implementation the parallel runner must match bit-exactly.
pub fn estimate_fer(
    code: &StabilizerCode,
    channel: &DepolarizingChannel,
    config: &DecoderConfig,
    policy: &StoppingPolicy,
    master_seed: u64,
    epsilon_index: u32,
) -> Result<FerPoint, SweepError> {
    let mut decoder = DecoderInstance::new(code, config)?;
    let outcomes = (1..=policy.max_trials).map(|trial_index| {
        run_trial(
            code,
            channel,
            &mut decoder,
            TrialSeed::new(master_seed, epsilon_index, trial_index),
        )
    });
    let (trials, frame_errors) = scan_stop(policy, outcomes);
    Ok(FerPoint {
        epsilon: channel.epsilon(),
        epsilon_index,
        l0: config.initial_llr(),
        eps0: config.assumed_epsilon(),
        trials,
        frame_errors,
    })
}

/// Per-trial failure flags for the first `n_trials` trials of a grid point.
/// Useful for paired comparisons between configurations decoding the same
/// error realizations.
pub fn collect_failures(
    code: &StabilizerCode,
    channel: &DepolarizingChannel,
    config: &DecoderConfig,
    n_trials: u64,
    master_seed: u64,
    epsilon_index: u32,
) -> Result<Vec<bool>, SweepError> {
    let mut decoder = DecoderInstance::new(code, config)?;
    (1..=n_trials)
        .map(|trial_index| {
            Ok(run_trial(
                code,
                channel,
                &mut decoder,
                TrialSeed::new(master_seed, epsilon_index, trial_index),
            ))
        })
        .collect()
}

/// Sequential sweep over the epsilon grid and initialization series.
pub fn sweep(
    code: &StabilizerCode,
    code_label: &str,
    eps_grid: &[f64],
    cfg: &SweepConfig,
) -> Result<FerSurface, SweepError> {
    if eps_grid.is_empty() {
        return Err(SweepError::EmptyEpsilonGrid);
    }
    if cfg.inits.is_empty() {
        return Err(SweepError::EmptySeries);
    }
    let mut series = Vec::with_capacity(cfg.inits.len());
    for init in &cfg.inits {
        let mut points = Vec::with_capacity(eps_grid.len());
        for (t, &epsilon) in eps_grid.iter().enumerate() {
            let channel = DepolarizingChannel::new(epsilon)?;
            let config = init.config(cfg.family, cfg.max_iterations, cfg.scalarization, epsilon)?;
            points.push(estimate_fer(
                code,
                &channel,
                &config,
                &cfg.policy,
                cfg.master_seed,
                t as u32,
            )?);
        }
        series.push(FerSeries {
            init: *init,
            points,
        });
    }
    Ok(FerSurface {
        meta: SurfaceMeta {
            code_label: String::from(code_label),
            n: code.n(),
            m: code.m(),
            k: code.k(),
            family: cfg.family,
            max_iterations: cfg.max_iterations,
            scalarization: cfg.scalarization,
            master_seed: cfg.master_seed,
            policy: cfg.policy,
            generator: GENERATOR_ID,
        },
        eps_grid: eps_grid.to_vec(),
        series,
    })
}
