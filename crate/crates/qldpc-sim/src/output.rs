//! Results files.
//!
//! Two kinds of artifacts are always written: comma-separated records for
//! machine consumption and two-column whitespace-separated plot files (data
//! after `#` comment lines). Every file carries the full run configuration
//! as comment headers, so a results directory is auditable on its own.
//! Floats are printed with Rust's shortest round-trip formatting; loading a
//! records file back reproduces the exact in-memory surface.

use qldpc_core::bp::{DecoderFamily, Scalarization};
use qldpc_core::mc::{FerPoint, FerSeries, FerSurface, LlrInit, StoppingPolicy, SurfaceMeta};
use qldpc_core::objective::{ObjectiveReport, ObjectiveSpec};
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

/// Sanitized filename fragment of a series.
pub fn series_slug(init: &LlrInit) -> String {
    match init {
        LlrInit::Matched => "matched".to_string(),
        LlrInit::InitialLlr(l0) => format!("l0_{l0}"),
        LlrInit::AssumedEpsilon(e) => format!("eps0_{e}"),
    }
}

/// Filename stem carrying the decoder identity, so runs at different
/// iteration counts or families coexist in one output directory.
fn run_stem(meta: &SurfaceMeta) -> String {
    format!("{}_iter{}", meta.family, meta.max_iterations)
}

fn meta_headers(meta: &SurfaceMeta) -> Vec<String> {
    vec![
        format!("# code: {}", meta.code_label),
        format!("# n: {} m: {} k: {}", meta.n, meta.m, meta.k),
        format!("# decoder: {}", meta.family),
        format!("# iters: {}", meta.max_iterations),
        format!("# scalarization: {}", meta.scalarization),
        format!("# seed: {}", meta.master_seed),
        format!(
            "# policy: max_trials={} target_errors={} min_trials={}",
            meta.policy.max_trials, meta.policy.target_frame_errors, meta.policy.min_trials
        ),
        format!("# generator: {}", meta.generator),
    ]
}

fn write_file(path: &Path, headers: &[String], body: &str) -> io::Result<()> {
    let mut text = String::new();
    for h in headers {
        text.push_str(h);
        text.push('\n');
    }
    text.push_str(body);
    fs::write(path, text)
}

/// Write the per-point records file and one two-column (epsilon, FER) plot
/// file per series. Returns the paths written.
pub fn write_fer_outputs(
    surface: &FerSurface,
    extra_headers: &[String],
    out_dir: &Path,
) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let mut headers = meta_headers(&surface.meta);
    headers.extend_from_slice(extra_headers);
    let mut written = Vec::new();

    let mut body = String::from("epsilon,eps_index,series,l0,eps0,trials,frame_errors,fer\n");
    for series in &surface.series {
        let slug = series_slug(&series.init);
        for p in &series.points {
            writeln!(
                body,
                "{},{},{},{},{},{},{},{}",
                p.epsilon,
                p.epsilon_index,
                slug,
                p.l0,
                p.eps0,
                p.trials,
                p.frame_errors,
                p.fer()
            )
            .expect("string write");
        }
    }
    let stem = run_stem(&surface.meta);
    let records = out_dir.join(format!("fer_{stem}_records.csv"));
    write_file(&records, &headers, &body)?;
    written.push(records);

    for series in &surface.series {
        let mut plot = String::new();
        for p in &series.points {
            writeln!(plot, "{} {}", p.epsilon, p.fer()).expect("string write");
        }
        let mut series_headers = headers.clone();
        series_headers.push(format!("# series: {}", series.init));
        let path = out_dir.join(format!("fer_{stem}_{}.txt", series_slug(&series.init)));
        write_file(&path, &series_headers, &plot)?;
        written.push(path);
    }
    Ok(written)
}

/// Failure when loading a records file back into a surface.
#[derive(Debug)]
pub enum SurfaceLoadError {
    Io(io::Error),
    Parse { line: usize, message: String },
}

impl std::fmt::Display for SurfaceLoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SurfaceLoadError::Io(e) => write!(f, "cannot read surface: {e}"),
            SurfaceLoadError::Parse { line, message } => {
                write!(f, "surface file line {line}: {message}")
            }
        }
    }
}

impl std::error::Error for SurfaceLoadError {}

fn perr(line: usize, message: impl Into<String>) -> SurfaceLoadError {
    SurfaceLoadError::Parse {
        line,
        message: message.into(),
    }
}

/// Load a surface from a records file written by [`write_fer_outputs`].
pub fn load_surface(path: &Path) -> Result<FerSurface, SurfaceLoadError> {
    let text = fs::read_to_string(path).map_err(SurfaceLoadError::Io)?;
    let mut meta = SurfaceMeta {
        code_label: String::new(),
        n: 0,
        m: 0,
        k: 0,
        family: DecoderFamily::Bp4,
        max_iterations: 0,
        scalarization: Scalarization::TraceWeighted,
        master_seed: 0,
        policy: StoppingPolicy::fixed(1),
        generator: qldpc_core::channel::GENERATOR_ID,
    };
    let mut series: Vec<(String, FerSeries)> = Vec::new();
    let mut eps_grid: Vec<(u32, f64)> = Vec::new();
    let mut saw_column_header = false;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(v) = comment.strip_prefix("code:") {
                meta.code_label = v.trim().to_string();
            } else if let Some(v) = comment.strip_prefix("n:") {
                // "# n: <n> m: <m> k: <k>"
                let toks: Vec<&str> = v.split_whitespace().collect();
                if let [n, "m:", m, "k:", k] = toks.as_slice() {
                    meta.n = n.parse().map_err(|_| perr(line_no, "bad n"))?;
                    meta.m = m.parse().map_err(|_| perr(line_no, "bad m"))?;
                    meta.k = k.parse().map_err(|_| perr(line_no, "bad k"))?;
                }
            } else if let Some(v) = comment.strip_prefix("decoder:") {
                meta.family = match v.trim() {
                    "bp2" => DecoderFamily::Bp2,
                    "bp4" => DecoderFamily::Bp4,
                    other => return Err(perr(line_no, format!("unknown decoder '{other}'"))),
                };
            } else if let Some(v) = comment.strip_prefix("iters:") {
                meta.max_iterations = v.trim().parse().map_err(|_| perr(line_no, "bad iters"))?;
            } else if let Some(v) = comment.strip_prefix("scalarization:") {
                meta.scalarization = match v.trim() {
                    "plain" => Scalarization::Plain,
                    "trace-weighted" => Scalarization::TraceWeighted,
                    other => return Err(perr(line_no, format!("unknown scalarization '{other}'"))),
                };
            } else if let Some(v) = comment.strip_prefix("seed:") {
                meta.master_seed = v.trim().parse().map_err(|_| perr(line_no, "bad seed"))?;
            } else if let Some(v) = comment.strip_prefix("policy:") {
                let mut max_trials = None;
                let mut target = None;
                let mut min_trials = None;
                for tok in v.split_whitespace() {
                    if let Some(x) = tok.strip_prefix("max_trials=") {
                        max_trials = x.parse().ok();
                    } else if let Some(x) = tok.strip_prefix("target_errors=") {
                        target = x.parse().ok();
                    } else if let Some(x) = tok.strip_prefix("min_trials=") {
                        min_trials = x.parse().ok();
                    }
                }
                if let (Some(mx), Some(tg), Some(mn)) = (max_trials, target, min_trials) {
                    meta.policy = StoppingPolicy::new(mx, tg, mn)
                        .map_err(|e| perr(line_no, format!("{e}")))?;
                }
            }
            continue;
        }
        if !saw_column_header {
            if line.starts_with("epsilon,") {
                saw_column_header = true;
                continue;
            }
            return Err(perr(line_no, "expected the records column header"));
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 8 {
            return Err(perr(
                line_no,
                format!("expected 8 fields, got {}", fields.len()),
            ));
        }
        let epsilon: f64 = fields[0]
            .parse()
            .map_err(|_| perr(line_no, "bad epsilon"))?;
        let eps_index: u32 = fields[1].parse().map_err(|_| perr(line_no, "bad index"))?;
        let slug = fields[2].to_string();
        let l0: f64 = fields[3].parse().map_err(|_| perr(line_no, "bad l0"))?;
        let eps0: f64 = fields[4].parse().map_err(|_| perr(line_no, "bad eps0"))?;
        let trials: u64 = fields[5].parse().map_err(|_| perr(line_no, "bad trials"))?;
        let frame_errors: u64 = fields[6]
            .parse()
            .map_err(|_| perr(line_no, "bad frame_errors"))?;
        let point = FerPoint {
            epsilon,
            epsilon_index: eps_index,
            l0,
            eps0,
            trials,
            frame_errors,
        };
        if !eps_grid.iter().any(|&(i, _)| i == eps_index) {
            eps_grid.push((eps_index, epsilon));
        }
        match series.iter_mut().find(|(s, _)| *s == slug) {
            Some((_, existing)) => existing.points.push(point),
            None => {
                // The slug encodes how the series was initialized.
                let init = if slug == "matched" {
                    LlrInit::Matched
                } else if let Some(v) = slug.strip_prefix("eps0_") {
                    LlrInit::AssumedEpsilon(
                        v.parse().map_err(|_| perr(line_no, "bad series eps0"))?,
                    )
                } else if let Some(v) = slug.strip_prefix("l0_") {
                    LlrInit::InitialLlr(v.parse().map_err(|_| perr(line_no, "bad series l0"))?)
                } else {
                    LlrInit::InitialLlr(l0)
                };
                series.push((
                    slug,
                    FerSeries {
                        init,
                        points: vec![point],
                    },
                ));
            }
        }
    }
    if series.is_empty() {
        return Err(perr(0, "no data records found"));
    }
    eps_grid.sort_unstable_by_key(|&(i, _)| i);
    Ok(FerSurface {
        meta,
        eps_grid: eps_grid.into_iter().map(|(_, e)| e).collect(),
        series: series.into_iter().map(|(_, s)| s).collect(),
    })
}

/// Write the objective report, its plot files, and the optimum summary.
pub fn write_objective_outputs(
    report: &ObjectiveReport,
    spec: &ObjectiveSpec,
    surface_meta: &SurfaceMeta,
    extra_headers: &[String],
    out_dir: &Path,
) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let mut headers = meta_headers(surface_meta);
    headers.push(format!(
        "# objective_grid: {}",
        spec.grid()
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    ));
    headers.push(format!(
        "# weights: {}",
        spec.weights()
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(",")
    ));
    headers.push(format!("# split: {}", spec.split_threshold()));
    if let Some(r) = report.reference_l0 {
        headers.push(format!("# reference_l0: {r}"));
    }
    headers.extend_from_slice(extra_headers);
    let mut written = Vec::new();

    let mut body =
        String::from("l0,eps0,j,j_low,j_high,j_low_mean,j_high_mean,delta_j,sigma_j,floored\n");
    for row in &report.rows {
        let delta = row.delta_j.map(|d| d.to_string()).unwrap_or_default();
        let floored = row
            .floored
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(";");
        writeln!(
            body,
            "{},{},{},{},{},{},{},{},{},{}",
            row.l0,
            row.eps0,
            row.j,
            row.j_low,
            row.j_high,
            row.j_low_mean,
            row.j_high_mean,
            delta,
            row.sigma_j,
            floored
        )
        .expect("string write");
    }
    let stem = run_stem(surface_meta);
    let records = out_dir.join(format!("objective_{stem}_report.csv"));
    write_file(&records, &headers, &body)?;
    written.push(records);

    let two_col = |select: &dyn Fn(&qldpc_core::objective::ObjectiveRow) -> Option<f64>| {
        let mut s = String::new();
        for row in &report.rows {
            if let Some(v) = select(row) {
                writeln!(s, "{} {}", row.l0, v).expect("string write");
            }
        }
        s
    };
    for (suffix, body) in [
        ("j", two_col(&|r| Some(r.j))),
        ("j_low", two_col(&|r| Some(r.j_low))),
        ("j_high", two_col(&|r| Some(r.j_high))),
        ("dj", two_col(&|r| r.delta_j)),
        ("band", two_col(&|r| Some(r.sigma_j))),
    ] {
        if body.is_empty() {
            continue;
        }
        let path = out_dir.join(format!("objective_{stem}_{suffix}.txt"));
        write_file(&path, &headers, &body)?;
        written.push(path);
    }

    let opt = &report.optimal;
    let mut summary = String::new();
    writeln!(summary, "l0_star {}", opt.l0_star).expect("string write");
    writeln!(summary, "eps0_star {}", opt.eps0_star).expect("string write");
    writeln!(summary, "j_star {}", opt.j_star).expect("string write");
    writeln!(
        summary,
        "stability_region {}",
        opt.stability_region
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
    .expect("string write");
    writeln!(summary, "stability_delta {}", opt.stability_delta).expect("string write");
    let path = out_dir.join(format!("objective_{stem}_summary.txt"));
    write_file(&path, &headers, &summary)?;
    written.push(path);
    Ok(written)
}
