//! Run configuration: everything needed to reproduce a run, echoed as
//! comment headers into every output file.

use qldpc_core::bp::{DecoderFamily, Scalarization};
use qldpc_core::mc::{LlrInit, StoppingPolicy, SweepConfig};
use std::fmt;
use std::path::PathBuf;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: &'static str,
    pub code_path: Option<PathBuf>,
    pub family: DecoderFamily,
    pub max_iterations: usize,
    pub scalarization: Scalarization,
    pub eps_grid: Vec<f64>,
    pub inits: Vec<LlrInit>,
    pub policy: StoppingPolicy,
    pub master_seed: u64,
    pub workers: usize,
    pub out_dir: PathBuf,
}

impl RunConfig {
    pub fn sweep_config(&self) -> SweepConfig {
        SweepConfig {
            family: self.family,
            max_iterations: self.max_iterations,
            scalarization: self.scalarization,
            inits: self.inits.clone(),
            policy: self.policy,
            master_seed: self.master_seed,
        }
    }

    /// Comment-header echo of the full configuration.
    pub fn header_lines(&self) -> Vec<String> {
        let mut lines = vec![format!("# command: {}", self.command)];
        if let Some(p) = &self.code_path {
            lines.push(format!("# code_path: {}", p.display()));
        }
        lines.push(format!(
            "# eps_grid: {}",
            self.eps_grid
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ));
        lines.push(format!(
            "# series: {}",
            self.inits
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ));
        lines.push(format!("# workers: {}", self.workers));
        lines
    }
}

/// Bad grid or series arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgError(pub String);

impl fmt::Display for ArgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ArgError {}

/// Parse a log-spaced range "start:stop:count" (endpoints included).
pub fn parse_log_range(text: &str) -> Result<Vec<f64>, ArgError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(ArgError(format!(
            "expected 'start:stop:count', found '{text}'"
        )));
    };
    let start: f64 = start
        .parse()
        .map_err(|_| ArgError(format!("bad range start '{start}'")))?;
    let stop: f64 = stop
        .parse()
        .map_err(|_| ArgError(format!("bad range stop '{stop}'")))?;
    let count: usize = count
        .parse()
        .map_err(|_| ArgError(format!("bad range count '{count}'")))?;
    if count == 0 {
        return Err(ArgError("range count must be positive".into()));
    }
    if start <= 0.0 || stop <= 0.0 {
        return Err(ArgError("log-spaced range needs positive endpoints".into()));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let ln_start = start.ln();
    let step = (stop.ln() - ln_start) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            // Pin the endpoints; exp(ln x) is not exact.
            if i == 0 {
                start
            } else if i == count - 1 {
                stop
            } else {
                (ln_start + step * i as f64).exp()
            }
        })
        .collect())
}

/// Parse a comma-separated float list.
pub fn parse_float_list(text: &str) -> Result<Vec<f64>, ArgError> {
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<f64>()
                .map_err(|_| ArgError(format!("bad number '{tok}'")))
        })
        .collect()
}

/// Parse initialization tokens: floats plus the keyword `matched`.
pub fn parse_inits(text: &str, as_llr: bool) -> Result<Vec<LlrInit>, ArgError> {
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok.eq_ignore_ascii_case("matched") {
                return Ok(LlrInit::Matched);
            }
            let value: f64 = tok
                .parse()
                .map_err(|_| ArgError(format!("bad initialization '{tok}'")))?;
            Ok(if as_llr {
                LlrInit::InitialLlr(value)
            } else {
                LlrInit::AssumedEpsilon(value)
            })
        })
        .collect()
}
