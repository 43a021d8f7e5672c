//! Command-line front end: validate code files, run FER sweeps, and compute
//! the aggregated mismatch objective. Exit status is 0 on success and 1 with
//! a one-line diagnostic on any failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use qldpc_core::bp::{initial_llr, DecoderFamily, Scalarization};
use qldpc_core::code::RowType;
use qldpc_core::mc::{FerSurface, StoppingPolicy};
use qldpc_core::objective::{build_report, ObjectiveSpec};
use qldpc_sim::config::{parse_float_list, parse_inits, parse_log_range, RunConfig};
use qldpc_sim::{
    load_code, load_surface, sweep_parallel, write_fer_outputs, write_objective_outputs,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qldpc-sim",
    about = "BP2/BP4 syndrome-decoding simulations over the depolarizing channel",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a code file: parameters, row-type census, orthogonality.
    Validate {
        /// Path to the code file.
        #[arg(long)]
        code: PathBuf,
    },
    /// Estimate FER over an epsilon grid for one or more initializations.
    Fer(SweepArgs),
    /// Aggregate a FER surface into the mismatch objective J(L0).
    Objective(ObjectiveArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Bp2,
    Bp4,
}

impl From<FamilyArg> for DecoderFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Bp2 => DecoderFamily::Bp2,
            FamilyArg::Bp4 => DecoderFamily::Bp4,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum ScalarizationArg {
    Plain,
    #[default]
    TraceWeighted,
}

impl From<ScalarizationArg> for Scalarization {
    fn from(s: ScalarizationArg) -> Self {
        match s {
            ScalarizationArg::Plain => Scalarization::Plain,
            ScalarizationArg::TraceWeighted => Scalarization::TraceWeighted,
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Path to the code file.
    #[arg(long)]
    code: PathBuf,

    /// Decoder family.
    #[arg(long, value_enum, default_value = "bp4")]
    decoder: FamilyArg,

    /// Maximum BP iterations per decode.
    #[arg(long, default_value_t = 4)]
    iters: usize,

    /// Explicit epsilon grid, comma separated (e.g. 0.15,0.10,0.05).
    #[arg(long, conflicts_with = "eps_range")]
    eps: Option<String>,

    /// Log-spaced epsilon grid start:stop:count (e.g. 1e-3:1e-1:9).
    #[arg(long)]
    eps_range: Option<String>,

    /// Initial LLR values, comma separated; `matched` is accepted.
    #[arg(long, conflicts_with = "eps0")]
    l0: Option<String>,

    /// Assumed depolarizing probabilities, comma separated; `matched` is
    /// accepted.
    #[arg(long)]
    eps0: Option<String>,

    /// Master seed; recorded verbatim in every output file.
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Trial cap per grid point.
    #[arg(long, default_value_t = 1_000_000)]
    max_trials: u64,

    /// Stop a point early after this many frame errors.
    #[arg(long, default_value_t = 100)]
    target_errors: u64,

    /// Never stop a point before this many trials.
    #[arg(long, default_value_t = 10_000)]
    min_trials: u64,

    /// BP4 variable-update scalarization.
    #[arg(long, value_enum, default_value = "trace-weighted")]
    scalarization: ScalarizationArg,

    /// Output directory (defaults to $QLDPC_SIM_OUT, then `.`).
    #[arg(long, env = "QLDPC_SIM_OUT", default_value = ".")]
    out: PathBuf,

    /// Worker threads (results are identical for any value).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct ObjectiveArgs {
    #[command(flatten)]
    sweep: SweepArgs,

    /// Reuse a previously written fer_records.csv instead of simulating.
    #[arg(long)]
    surface: Option<PathBuf>,

    /// Split threshold between the low- and high-noise subsets.
    #[arg(long, default_value_t = 0.05)]
    split: f64,

    /// Objective weights, comma separated; default uniform.
    #[arg(long)]
    weights: Option<String>,

    /// Stability region half-width in J units.
    #[arg(long, default_value_t = 0.05)]
    stability_delta: f64,

    /// Reference L0 for delta-J curves.
    #[arg(long, conflicts_with = "ref_eps0")]
    ref_l0: Option<f64>,

    /// Reference assumed epsilon for delta-J curves (default 0.10).
    #[arg(long)]
    ref_eps0: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Validate { code } => cmd_validate(&code),
        Command::Fer(args) => cmd_fer(&args),
        Command::Objective(args) => cmd_objective(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn cmd_validate(path: &Path) -> Result<(), String> {
    let code = load_code(path).map_err(|e| e.to_string())?;
    let proj = code.binary_projections();
    let mut x_type = 0;
    let mut z_type = 0;
    let mut mixed = 0;
    for t in &proj.row_types {
        match t {
            RowType::XType => x_type += 1,
            RowType::ZType => z_type += 1,
            RowType::Mixed => mixed += 1,
        }
    }
    println!(
        "n={} m={} k={}, margin {}",
        code.n(),
        code.m(),
        code.k(),
        code.overcompleteness_margin()
    );
    println!("rank {}", code.rank());
    println!("rows: {x_type} x-type, {z_type} z-type, {mixed} mixed");
    println!("orthogonality: ok (all row pairs commute)");
    Ok(())
}

fn build_run_config(
    args: &SweepArgs,
    command: &'static str,
) -> Result<(RunConfig, Vec<f64>), String> {
    let eps_grid = match (&args.eps, &args.eps_range) {
        (Some(list), None) => parse_float_list(list).map_err(|e| e.to_string())?,
        (None, Some(range)) => parse_log_range(range).map_err(|e| e.to_string())?,
        (None, None) => return Err("give an epsilon grid with --eps or --eps-range".into()),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    if eps_grid.is_empty() {
        return Err("epsilon grid is empty".into());
    }
    let inits = match (&args.l0, &args.eps0) {
        (Some(list), None) => parse_inits(list, true).map_err(|e| e.to_string())?,
        (None, Some(list)) => parse_inits(list, false).map_err(|e| e.to_string())?,
        (None, None) => return Err("give initializations with --l0 or --eps0".into()),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    if inits.is_empty() {
        return Err("initialization list is empty".into());
    }
    let policy = StoppingPolicy::new(args.max_trials, args.target_errors, args.min_trials)
        .map_err(|e| e.to_string())?;
    let workers = args.workers.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    });
    Ok((
        RunConfig {
            command,
            code_path: Some(args.code.clone()),
            family: args.decoder.into(),
            max_iterations: args.iters,
            scalarization: args.scalarization.into(),
            eps_grid: eps_grid.clone(),
            inits,
            policy,
            master_seed: args.seed,
            workers,
            out_dir: args.out.clone(),
        },
        eps_grid,
    ))
}

fn run_sweep(run: &RunConfig, eps_grid: &[f64]) -> Result<FerSurface, String> {
    let code_path = run.code_path.as_ref().expect("sweep needs a code path");
    let code = load_code(code_path).map_err(|e| e.to_string())?;
    let label = code_path.display().to_string();
    sweep_parallel(&code, &label, eps_grid, &run.sweep_config(), run.workers)
        .map_err(|e| e.to_string())
}

fn cmd_fer(args: &SweepArgs) -> Result<(), String> {
    let (run, eps_grid) = build_run_config(args, "fer")?;
    let surface = run_sweep(&run, &eps_grid)?;
    let written = write_fer_outputs(&surface, &run.header_lines(), &run.out_dir)
        .map_err(|e| format!("cannot write outputs: {e}"))?;
    for series in &surface.series {
        for p in &series.points {
            println!(
                "eps={} {} trials={} frame_errors={} fer={}",
                p.epsilon,
                series.init,
                p.trials,
                p.frame_errors,
                p.fer()
            );
        }
    }
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_objective(args: &ObjectiveArgs) -> Result<(), String> {
    // The surface is either loaded from a records file or simulated here.
    let (surface, headers, out_dir, grid_override) = if let Some(surface_path) = &args.surface {
        let surface = load_surface(surface_path).map_err(|e| e.to_string())?;
        let grid = match (&args.sweep.eps, &args.sweep.eps_range) {
            (Some(list), None) => Some(parse_float_list(list).map_err(|e| e.to_string())?),
            (None, Some(range)) => Some(parse_log_range(range).map_err(|e| e.to_string())?),
            _ => None,
        };
        let headers = vec![
            format!("# command: objective"),
            format!("# surface: {}", surface_path.display()),
        ];
        (surface, headers, args.sweep.out.clone(), grid)
    } else {
        let (run, eps_grid) = build_run_config(&args.sweep, "objective")?;
        let surface = run_sweep(&run, &eps_grid)?;
        let headers = run.header_lines();
        (surface, headers, run.out_dir, None)
    };

    let grid = grid_override.unwrap_or_else(|| surface.eps_grid.clone());
    let spec = match &args.weights {
        Some(w) => {
            let weights = parse_float_list(w).map_err(|e| e.to_string())?;
            ObjectiveSpec::with_weights(grid, weights, args.split)
        }
        None => ObjectiveSpec::uniform(grid, args.split),
    }
    .map_err(|e| e.to_string())?;

    // Reference for delta-J: explicit flag wins; the default eps0 = 0.10 is
    // used only when its L0 is actually on the surface.
    let family = surface.meta.family;
    let reference = match (args.ref_l0, args.ref_eps0) {
        (Some(l0), None) => Some(l0),
        (None, Some(eps0)) => Some(initial_llr(family, eps0).map_err(|e| e.to_string())?),
        (None, None) => {
            let default_ref = initial_llr(family, 0.10).map_err(|e| e.to_string())?;
            surface
                .l0_values()
                .contains(&default_ref)
                .then_some(default_ref)
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };

    let report = build_report(&surface, &spec, args.stability_delta, reference)
        .map_err(|e| e.to_string())?;
    let written = write_objective_outputs(&report, &spec, &surface.meta, &headers, &out_dir)
        .map_err(|e| format!("cannot write outputs: {e}"))?;

    for row in &report.rows {
        println!(
            "l0={} eps0={} J={} J_low={} J_high={} sigma={}",
            row.l0, row.eps0, row.j, row.j_low, row.j_high, row.sigma_j
        );
    }
    let opt = &report.optimal;
    println!(
        "optimal: l0_star={} eps0_star={} J={} stability_region=[{}]",
        opt.l0_star,
        opt.eps0_star,
        opt.j_star,
        opt.stability_region
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}
