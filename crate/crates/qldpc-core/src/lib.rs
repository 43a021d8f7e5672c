//! Stabilizer-code decoding over the depolarizing channel.
//!
//! The crate provides the pieces of a syndrome-decoding simulation pipeline:
//!
//! - [`pauli`]: Pauli-frame algebra on bit-packed vectors (addition, trace
//!   inner product, symplectic representation).
//! - [`gf2`]: bit-packed GF(2) vectors and matrices with rank / row-echelon
//!   reduction.
//! - [`code`]: stabilizer codes given by a quaternary check matrix, including
//!   generalized bicycle constructions and the coset membership oracle.
//! - [`channel`]: counter-seeded i.i.d. depolarizing error sampling.
//! - [`bp`]: BP2 and BP4 syndrome decoders with configurable LLR
//!   initialization.
//! - [`mc`]: sequential Monte Carlo frame-error-rate estimation with
//!   index-ordered early stopping.
//! - [`objective`]: the aggregated log-domain FER objective with
//!   Clopper-Pearson flooring and its split decomposition.
//!
//! Everything here is `no_std` (with `alloc`); file formats, the CLI, and the
//! multi-threaded runner live in the companion `qldpc-sim` crate. All float
//! math goes through `libm` so results are identical across platforms.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bp;
pub mod channel;
pub mod code;
pub mod gf2;
mod math;
pub mod mc;
pub mod objective;
pub mod pauli;
pub mod stats;

pub use bp::{DecodeResult, DecoderConfig, DecoderFamily, Scalarization};
pub use channel::{DepolarizingChannel, TrialSeed};
pub use code::{GbCodeSpec, StabilizerCode};
pub use mc::{FerPoint, FerSurface, StoppingPolicy};
pub use objective::ObjectiveSpec;
pub use pauli::{Pauli, PauliVector, Syndrome};
