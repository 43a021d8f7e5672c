//! File formats, deterministic parallel execution, and output writers for
//! the `qldpc-core` decoding simulations. The `qldpc-sim` binary in this
//! crate exposes the `validate`, `fer` and `objective` subcommands.

pub mod codefile;
pub mod config;
pub mod output;
pub mod runner;

pub use codefile::{load_code, parse_code, CodeFileError};
pub use config::RunConfig;
pub use output::{load_surface, write_fer_outputs, write_objective_outputs};
pub use runner::{estimate_fer_parallel, sweep_parallel};
