//! Deterministic multi-threaded FER estimation.
//!
//! Trials are counter-seeded, so any worker can decode any trial index
//! without coordination. Workers claim fixed-size blocks of consecutive
//! trial indices from an atomic cursor and record one failure flag per
//! trial. A shared failure counter gates the dispatch of new blocks once
//! the early-stop target is in reach; because blocks are claimed in index
//! order, every trial at or below the sequential stop index is guaranteed
//! to be decoded. The final (trials, frame_errors) pair is recomputed by
//! replaying the index-ordered stop scan over the merged records, so the
//! result is bit-identical for every worker count and equal to the
//! sequential reference in `qldpc_core::mc`.

use qldpc_core::bp::DecoderInstance;
use qldpc_core::channel::{DepolarizingChannel, TrialSeed, GENERATOR_ID};
use qldpc_core::code::StabilizerCode;
use qldpc_core::mc::{
    estimate_fer, run_trial, scan_stop, FerPoint, FerSeries, FerSurface, StoppingPolicy,
    SurfaceMeta, SweepConfig, SweepError,
};
use std::sync::atomic::{AtomicU64, Ordering};
use std::thread;

/// Trials per dispatched block. The value trades dispatch overhead against
/// early-stop overshoot; it never affects the reported estimates.
const BLOCK: u64 = 1024;

struct BlockRecord {
    index: u64,
    flags: Vec<bool>,
}

/// Multi-threaded drop-in for [`qldpc_core::mc::estimate_fer`].
pub fn estimate_fer_parallel(
    code: &StabilizerCode,
    channel: &DepolarizingChannel,
    config: &qldpc_core::bp::DecoderConfig,
    policy: &StoppingPolicy,
    master_seed: u64,
    epsilon_index: u32,
    workers: usize,
) -> Result<FerPoint, SweepError> {
    if workers <= 1 {
        return estimate_fer(code, channel, config, policy, master_seed, epsilon_index);
    }
    // Validate the decoder configuration up front (mixed-row errors etc.)
    // so worker threads cannot fail after spawn.
    DecoderInstance::new(code, config)?;

    let next_block = AtomicU64::new(0);
    let failures_seen = AtomicU64::new(0);
    let mut worker_records: Vec<Vec<BlockRecord>> = Vec::new();

    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                let next_block = &next_block;
                let failures_seen = &failures_seen;
                scope.spawn(move || {
                    let mut decoder =
                        DecoderInstance::new(code, config).expect("validated before spawning");
                    let mut records = Vec::new();
                    loop {
                        let block = next_block.fetch_add(1, Ordering::Relaxed);
                        let first_trial = block * BLOCK + 1;
                        if first_trial > policy.max_trials {
                            break;
                        }
                        // Early-stop gate: once enough failures are on
                        // record and the claimed prefix covers min_trials,
                        // the sequential stop index lies inside blocks that
                        // are already claimed.
                        if failures_seen.load(Ordering::Relaxed) >= policy.target_frame_errors
                            && block * BLOCK >= policy.min_trials
                        {
                            break;
                        }
                        let last_trial = (first_trial + BLOCK - 1).min(policy.max_trials);
                        let mut flags = Vec::with_capacity((last_trial - first_trial + 1) as usize);
                        let mut block_failures = 0u64;
                        for trial in first_trial..=last_trial {
                            let failed = run_trial(
                                code,
                                channel,
                                &mut decoder,
                                TrialSeed::new(master_seed, epsilon_index, trial),
                            );
                            flags.push(failed);
                            block_failures += failed as u64;
                        }
                        if block_failures > 0 {
                            failures_seen.fetch_add(block_failures, Ordering::Relaxed);
                        }
                        records.push(BlockRecord {
                            index: block,
                            flags,
                        });
                    }
                    records
                })
            })
            .collect();
        for handle in handles {
            worker_records.push(handle.join().expect("worker panicked"));
        }
    });

    let mut blocks: Vec<BlockRecord> = worker_records.into_iter().flatten().collect();
    blocks.sort_unstable_by_key(|b| b.index);
    for (i, b) in blocks.iter().enumerate() {
        assert_eq!(b.index, i as u64, "dispatched blocks must form a prefix");
    }
    let (trials, frame_errors) =
        scan_stop(policy, blocks.iter().flat_map(|b| b.flags.iter().copied()));
    Ok(FerPoint {
        epsilon: channel.epsilon(),
        epsilon_index,
        l0: config.initial_llr(),
        eps0: config.assumed_epsilon(),
        trials,
        frame_errors,
    })
}

/// Multi-threaded drop-in for [`qldpc_core::mc::sweep`]: same surface, same
/// seeds, trials parallelized within each grid point.
pub fn sweep_parallel(
    code: &StabilizerCode,
    code_label: &str,
    eps_grid: &[f64],
    cfg: &SweepConfig,
    workers: usize,
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
            points.push(estimate_fer_parallel(
                code,
                &channel,
                &config,
                &cfg.policy,
                cfg.master_seed,
                t as u32,
                workers,
            )?);
        }
        series.push(FerSeries {
            init: *init,
            points,
        });
    }
    Ok(FerSurface {
        meta: SurfaceMeta {
            code_label: code_label.to_string(),
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
