//! The aggregated FER objective and its split decomposition.
//!
//! For a fixed initialization L0, the objective is the weighted mean of
//! log10 FER over an epsilon grid, with each point floored at the one-sided
//! 95% Clopper-Pearson upper bound for its own trial count. The floor kicks
//! in exactly where the estimate carries no information (zero observed
//! errors) and acts as a lower clamp everywhere else. The grid can be split
//! at a threshold into low- and high-noise partial sums (original weights
//! preserved), whose sum reconstructs the full objective; the renormalized
//! subset means give the equivalent convex combination.

use crate::bp::eps_from_llr;
use crate::math;
use crate::mc::FerSurface;
use alloc::vec::Vec;
use core::fmt;

/// Weight-sum and decomposition tolerance.
pub const WEIGHT_TOLERANCE: f64 = 1e-12;

/// Objective-level failure.
#[derive(Debug, Clone, PartialEq)]
pub enum ObjectiveError {
    EmptyGrid,
    GridNotStrictlyOrdered,
    WeightCount {
        weights: usize,
        grid: usize,
    },
    NegativeWeight(f64),
    WeightSum(f64),
    ZeroTrials,
    /// The surface has no point at this (epsilon, l0) pair.
    MissingPoint {
        epsilon: f64,
        l0: f64,
    },
    /// The surface has no fixed-L0 series with this L0.
    MissingL0(f64),
    /// Fewer than two L0 values available for minimization.
    TooFewL0,
}

impl fmt::Display for ObjectiveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectiveError::EmptyGrid => write!(f, "objective grid is empty"),
            ObjectiveError::GridNotStrictlyOrdered => {
                write!(
                    f,
                    "objective grid must be strictly increasing or decreasing"
                )
            }
            ObjectiveError::WeightCount { weights, grid } => {
                write!(f, "{weights} weights for {grid} grid points")
            }
            ObjectiveError::NegativeWeight(w) => write!(f, "negative weight {w}"),
            ObjectiveError::WeightSum(s) => {
                write!(
                    f,
                    "weights sum to {s}, expected 1 within {WEIGHT_TOLERANCE}"
                )
            }
            ObjectiveError::ZeroTrials => write!(f, "trial count must be at least 1"),
            ObjectiveError::MissingPoint { epsilon, l0 } => {
                write!(f, "surface has no point at epsilon={epsilon}, l0={l0}")
            }
            ObjectiveError::MissingL0(l0) => {
                write!(f, "surface has no fixed series at l0={l0}")
            }
            ObjectiveError::TooFewL0 => {
                write!(f, "need at least two L0 values to minimize over")
            }
        }
    }
}

/// The grid, weights and split threshold defining the objective.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveSpec {
    grid: Vec<f64>,
    weights: Vec<f64>,
    split_threshold: f64,
}

impl ObjectiveSpec {
    /// Uniform weights 1/T over the grid.
    pub fn uniform(grid: Vec<f64>, split_threshold: f64) -> Result<Self, ObjectiveError> {
        let w = 1.0 / grid.len() as f64;
        let weights = alloc::vec![w; grid.len()];
        Self::with_weights(grid, weights, split_threshold)
    }

    pub fn with_weights(
        grid: Vec<f64>,
        weights: Vec<f64>,
        split_threshold: f64,
    ) -> Result<Self, ObjectiveError> {
        if grid.is_empty() {
            return Err(ObjectiveError::EmptyGrid);
        }
        let increasing = grid.windows(2).all(|w| w[0] < w[1]);
        let decreasing = grid.windows(2).all(|w| w[0] > w[1]);
        if !(increasing || decreasing) {
            return Err(ObjectiveError::GridNotStrictlyOrdered);
        }
        if weights.len() != grid.len() {
            return Err(ObjectiveError::WeightCount {
                weights: weights.len(),
                grid: grid.len(),
            });
        }
        if let Some(&w) = weights.iter().find(|&&w| w < 0.0) {
            return Err(ObjectiveError::NegativeWeight(w));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_TOLERANCE {
            return Err(ObjectiveError::WeightSum(sum));
        }
        Ok(Self {
            grid,
            weights,
            split_threshold,
        })
    }

    #[inline]
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    pub fn split_threshold(&self) -> f64 {
        self.split_threshold
    }

    /// Indices with epsilon at or below the split threshold.
    pub fn low_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.grid.len()).filter(move |&t| self.grid[t] <= self.split_threshold)
    }

    /// Indices with epsilon above the split threshold.
    pub fn high_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.grid.len()).filter(move |&t| self.grid[t] > self.split_threshold)
    }
}

/// One-sided 95% Clopper-Pearson upper bound for zero successes in
/// `n_trials` trials: 1 - 0.05^(1/n).
pub fn cp_floor(n_trials: u64) -> Result<f64, ObjectiveError> {
    if n_trials == 0 {
        return Err(ObjectiveError::ZeroTrials);
    }
    Ok(1.0 - math::pow(0.05, 1.0 / n_trials as f64))
}

/// Floored log10: log10(max(x, x_min)).
pub fn phi(x: f64, x_min: f64) -> f64 {
    math::log10(if x > x_min { x } else { x_min })
}

/// Per-point floored contribution and whether the floor was active.
fn point_phi(surface: &FerSurface, epsilon: f64, l0: f64) -> Result<(f64, bool), ObjectiveError> {
    let point = surface
        .point(epsilon, l0)
        .ok_or(ObjectiveError::MissingPoint { epsilon, l0 })?;
    let x_min = cp_floor(point.trials)?;
    let fer = point.fer();
    Ok((phi(fer, x_min), fer <= x_min))
}

/// The aggregated objective J(L0) over the full grid.
pub fn aggregated_objective(
    surface: &FerSurface,
    spec: &ObjectiveSpec,
    l0: f64,
) -> Result<f64, ObjectiveError> {
    let mut j = 0.0;
    for (t, &epsilon) in spec.grid().iter().enumerate() {
        let (p, _) = point_phi(surface, epsilon, l0)?;
        j += spec.weights()[t] * p;
    }
    Ok(j)
}

/// The split partial sums (J_low, J_high) with original weights preserved,
/// so that J = J_low + J_high.
pub fn split_objective(
    surface: &FerSurface,
    spec: &ObjectiveSpec,
    l0: f64,
) -> Result<(f64, f64), ObjectiveError> {
    let mut j_low = 0.0;
    for t in spec.low_indices() {
        let (p, _) = point_phi(surface, spec.grid()[t], l0)?;
        j_low += spec.weights()[t] * p;
    }
    let mut j_high = 0.0;
    for t in spec.high_indices() {
        let (p, _) = point_phi(surface, spec.grid()[t], l0)?;
        j_high += spec.weights()[t] * p;
    }
    Ok((j_low, j_high))
}

/// Signed objective difference J(l0) - J(l0_ref).
pub fn delta_objective(
    surface: &FerSurface,
    spec: &ObjectiveSpec,
    l0: f64,
    l0_ref: f64,
) -> Result<f64, ObjectiveError> {
    Ok(aggregated_objective(surface, spec, l0)? - aggregated_objective(surface, spec, l0_ref)?)
}

/// Objective summary for one L0 value.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveRow {
    pub l0: f64,
    pub eps0: f64,
    pub j: f64,
    /// Partial sum over the low-noise subset, original weights.
    pub j_low: f64,
    /// Partial sum over the high-noise subset, original weights.
    pub j_high: f64,
    /// Renormalized subset mean (j_low divided by the subset weight mass).
    pub j_low_mean: f64,
    pub j_high_mean: f64,
    /// Weight mass of the low subset (|G_low|/|G| under uniform weights).
    pub weight_low: f64,
    /// J(l0) - J(reference), when a reference was requested.
    pub delta_j: Option<f64>,
    /// Delta-method standard deviation of J from per-point binomial errors.
    pub sigma_j: f64,
    /// Epsilon values whose contribution was floored.
    pub floored: Vec<f64>,
}

/// Grid minimizer of the objective with its stability region.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalLlr {
    pub l0_star: f64,
    pub eps0_star: f64,
    pub j_star: f64,
    /// L0 values with J within `stability_delta` of the minimum.
    pub stability_region: Vec<f64>,
    pub stability_delta: f64,
}

/// Full objective report over every fixed-L0 series of a surface.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveReport {
    pub rows: Vec<ObjectiveRow>,
    pub optimal: OptimalLlr,
    pub reference_l0: Option<f64>,
}

/// Build the per-L0 rows and locate the minimizer.
///
/// `reference_l0` selects the row against which delta values are reported;
/// `stability_delta` bounds the near-optimal region. L0 values come from the
/// surface's fixed series, sorted ascending; ties in the argmin resolve to
/// the smaller L0.
pub fn build_report(
    surface: &FerSurface,
    spec: &ObjectiveSpec,
    stability_delta: f64,
    reference_l0: Option<f64>,
) -> Result<ObjectiveReport, ObjectiveError> {
    let mut l0_values = surface.l0_values();
    l0_values.sort_by(|a, b| a.partial_cmp(b).expect("L0 values are finite"));
    l0_values.dedup();
    if l0_values.len() < 2 {
        return Err(ObjectiveError::TooFewL0);
    }
    if let Some(r) = reference_l0 {
        if !l0_values.contains(&r) {
            return Err(ObjectiveError::MissingL0(r));
        }
    }
    let reference_j = match reference_l0 {
        Some(r) => Some(aggregated_objective(surface, spec, r)?),
        None => None,
    };

    let family = surface.meta.family;
    let weight_low: f64 = spec.low_indices().map(|t| spec.weights()[t]).sum();
    let weight_high: f64 = spec.high_indices().map(|t| spec.weights()[t]).sum();

    let mut rows = Vec::with_capacity(l0_values.len());
    for &l0 in &l0_values {
        let mut j = 0.0;
        let mut variance = 0.0;
        let mut floored = Vec::new();
        for (t, &epsilon) in spec.grid().iter().enumerate() {
            let point = surface
                .point(epsilon, l0)
                .ok_or(ObjectiveError::MissingPoint { epsilon, l0 })?;
            let x_min = cp_floor(point.trials)?;
            let fer = point.fer();
            let w = spec.weights()[t];
            j += w * phi(fer, x_min);
            if fer <= x_min {
                floored.push(epsilon);
            } else {
                // Delta method through phi: d(log10 p)/dp = 1/(p ln 10);
                // floored points contribute no derivative.
                let sigma_p = math::sqrt(fer * (1.0 - fer) / point.trials as f64);
                let dphil = sigma_p / (fer * core::f64::consts::LN_10);
                variance += (w * dphil) * (w * dphil);
            }
        }
        let (j_low, j_high) = split_objective(surface, spec, l0)?;
        let j_low_mean = if weight_low > 0.0 {
            j_low / weight_low
        } else {
            0.0
        };
        let j_high_mean = if weight_high > 0.0 {
            j_high / weight_high
        } else {
            0.0
        };
        rows.push(ObjectiveRow {
            l0,
            eps0: eps_from_llr(family, l0),
            j,
            j_low,
            j_high,
            j_low_mean,
            j_high_mean,
            weight_low,
            delta_j: reference_j.map(|r| j - r),
            sigma_j: math::sqrt(variance),
            floored,
        });
    }

    // Argmin with ties resolved toward the smaller L0 (rows are ascending).
    let mut best = 0usize;
    for (i, row) in rows.iter().enumerate() {
        if row.j < rows[best].j {
            best = i;
        }
    }
    let j_star = rows[best].j;
    let stability_region = rows
        .iter()
        .filter(|r| r.j <= j_star + stability_delta)
        .map(|r| r.l0)
        .collect();
    let optimal = OptimalLlr {
        l0_star: rows[best].l0,
        eps0_star: rows[best].eps0,
        j_star,
        stability_region,
        stability_delta,
    };
    Ok(ObjectiveReport {
        rows,
        optimal,
        reference_l0,
    })
}

/// Locate the objective minimizer; convenience wrapper around
/// [`build_report`].
pub fn find_optimal_llr(
    surface: &FerSurface,
    spec: &ObjectiveSpec,
    stability_delta: f64,
) -> Result<OptimalLlr, ObjectiveError> {
    Ok(build_report(surface, spec, stability_delta, None)?.optimal)
}
