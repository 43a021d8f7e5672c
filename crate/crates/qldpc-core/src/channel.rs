//! Seeded i.i.d. depolarizing error sampling.
//!
//! Sampling is counter-based: the error pattern of a trial is a pure function
//! of (master seed, grid index, trial index, n, epsilon). There is no shared
//! generator state, so workers can draw trials in any order and still produce
//! the exact realizations a sequential run would, and every decoder
//! configuration sees the same error at the same (grid index, trial index) --
//! the common-random-numbers contract behind paired FER comparisons.
//!
//! The generator is a SplitMix64 stream (Weyl sequence plus Stafford mix13
//! finalizer) keyed by hashing the seed triple. The algorithm identifier
//! [`GENERATOR_ID`] is recorded in output metadata.

use crate::pauli::{Pauli, PauliVector};
use core::fmt;

/// Name of the counter-based generator, embedded in results metadata.
pub const GENERATOR_ID: &str = "splitmix64-keyed-v1";

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Stafford mix13 finalizer, the output function of SplitMix64.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Identifies one Monte Carlo trial; the sampled error is a pure function of
/// this triple (plus n and epsilon).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TrialSeed {
    pub master_seed: u64,
    pub epsilon_index: u32,
    pub trial_index: u64,
}

impl TrialSeed {
    pub fn new(master_seed: u64, epsilon_index: u32, trial_index: u64) -> Self {
        Self {
            master_seed,
            epsilon_index,
            trial_index,
        }
    }

    /// Derive the 64-bit stream key of this trial.
    fn stream_key(self) -> u64 {
        let mut k = mix64(self.master_seed ^ GOLDEN_GAMMA);
        k = mix64(k ^ (self.epsilon_index as u64).wrapping_mul(GOLDEN_GAMMA));
        mix64(k ^ self.trial_index)
    }
}

/// Counter-based uniform stream: output i is mix64(key + (i+1) * gamma).
#[derive(Debug, Clone)]
struct CounterStream {
    key: u64,
    counter: u64,
}

impl CounterStream {
    fn new(key: u64) -> Self {
        Self { key, counter: 0 }
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(
            self.key
                .wrapping_add(self.counter.wrapping_mul(GOLDEN_GAMMA)),
        )
    }

    /// Uniform draw in [0, 1) with 53 random bits.
    #[inline]
    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }
}

/// Domain error for a probability outside [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvalidProbability(pub f64);

impl fmt::Display for InvalidProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "probability {} is outside [0, 1]", self.0)
    }
}

/// The i.i.d. depolarizing channel: each qubit keeps I with probability
/// 1 - epsilon and takes X, Y, Z with probability epsilon/3 each.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepolarizingChannel {
    epsilon: f64,
}

impl DepolarizingChannel {
    pub fn new(epsilon: f64) -> Result<Self, InvalidProbability> {
        if (0.0..=1.0).contains(&epsilon) {
            Ok(Self { epsilon })
        } else {
            Err(InvalidProbability(epsilon))
        }
    }

    #[inline]
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Sample an n-qubit error pattern for the given trial.
    ///
    /// One uniform draw per qubit is mapped through the cumulative thresholds
    /// (1 - eps, 1 - 2*eps/3, 1 - eps/3); a draw exactly on a boundary
    /// resolves to the lower symbol.
    pub fn sample_error(&self, n: usize, seed: TrialSeed) -> PauliVector {
        let t_i = 1.0 - self.epsilon;
        let t_x = 1.0 - 2.0 * self.epsilon / 3.0;
        let t_y = 1.0 - self.epsilon / 3.0;
        let mut stream = CounterStream::new(seed.stream_key());
        let mut error = PauliVector::identity(n);
        for j in 0..n {
            let u = stream.next_f64();
            let symbol = if u <= t_i {
                Pauli::I
            } else if u <= t_x {
                Pauli::X
            } else if u <= t_y {
                Pauli::Y
            } else {
                Pauli::Z
            };
            if symbol != Pauli::I {
                error.set(j, symbol);
            }
        }
        error
    }
}
