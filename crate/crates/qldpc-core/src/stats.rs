//! Small statistics helpers for paired FER comparisons.
//!
//! Paired trials decode the same error realization under two decoder
//! configurations, so the informative events are the discordant pairs. The
//! one-sided sign test asks whether configuration A fails more often than B
//! given only those.

use crate::math;
use alloc::vec::Vec;

/// Count discordant pairs between two per-trial failure vectors:
/// returns (A fails and B succeeds, B fails and A succeeds).
pub fn discordant_pairs(a: &[bool], b: &[bool]) -> (u64, u64) {
    assert_eq!(a.len(), b.len(), "paired vectors must align");
    let mut a_only = 0u64;
    let mut b_only = 0u64;
    for (&fa, &fb) in a.iter().zip(b.iter()) {
        match (fa, fb) {
            (true, false) => a_only += 1,
            (false, true) => b_only += 1,
            _ => {}
        }
    }
    (a_only, b_only)
}

/// One-sided sign test p-value for "A fails more often than B".
///
/// Under the null, each of the n = a_only + b_only discordant pairs goes
/// either way with probability 1/2, so the p-value is
/// P(X >= a_only | X ~ Bin(n, 1/2)). Exact summation for small n, normal
/// approximation with continuity correction beyond.
pub fn sign_test_p_value(a_only: u64, b_only: u64) -> f64 {
    let n = a_only + b_only;
    if n == 0 {
        return 1.0;
    }
    if n <= 200 {
        // Exact tail: sum_{i >= a_only} C(n, i) / 2^n, built in log space.
        let ln2 = core::f64::consts::LN_2;
        let mut tail = 0.0f64;
        for i in a_only..=n {
            let mut ln_term = -(n as f64) * ln2;
            for j in 0..i {
                ln_term += math::ln((n - j) as f64) - math::ln((j + 1) as f64);
            }
            tail += math::exp(ln_term);
        }
        tail.min(1.0)
    } else {
        let mean = n as f64 / 2.0;
        let sd = math::sqrt(n as f64) / 2.0;
        let z = (a_only as f64 - 0.5 - mean) / sd;
        0.5 * math::erfc(z / core::f64::consts::SQRT_2)
    }
}

/// Mean and standard error of a paired difference vector.
pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    assert!(n > 1.0, "need at least two observations");
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, math::sqrt(var / n))
}

/// Paired differences of failure indicators (A minus B), as -1/0/+1 floats.
pub fn paired_differences(a: &[bool], b: &[bool]) -> Vec<f64> {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b.iter())
        .map(|(&fa, &fb)| (fa as i8 - fb as i8) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discordant_counting() {
        let a = [true, true, false, false, true];
        let b = [true, false, true, false, false];
        assert_eq!(discordant_pairs(&a, &b), (2, 1));
    }

    #[test]
    fn sign_test_exact_small_cases() {
        // n = 1, a_only = 1: p = 1/2.
        assert!((sign_test_p_value(1, 0) - 0.5).abs() < 1e-12);
        // n = 2, a_only = 2: p = 1/4.
        assert!((sign_test_p_value(2, 0) - 0.25).abs() < 1e-12);
        // a_only = 0: the whole distribution, p = 1.
        assert!((sign_test_p_value(0, 5) - 1.0).abs() < 1e-12);
        // No discordant pairs: no evidence.
        assert_eq!(sign_test_p_value(0, 0), 1.0);
        // 10-0 split: p = 2^-10.
        assert!((sign_test_p_value(10, 0) - 1.0 / 1024.0).abs() < 1e-12);
    }

    #[test]
    fn sign_test_normal_tail_matches_exact_at_crossover() {
        // Same n = 200 through both evaluation paths.
        let exact = sign_test_p_value(130, 70);
        let mean = 100.0f64;
        let sd = (200.0f64).sqrt() / 2.0;
        let z = (130.0 - 0.5 - mean) / sd;
        let approx = 0.5 * libm::erfc(z / core::f64::consts::SQRT_2);
        assert!((exact.log10() - approx.log10()).abs() < 0.2);
    }

    #[test]
    fn strong_imbalance_is_significant() {
        assert!(sign_test_p_value(400, 200) < 1e-9);
        assert!(sign_test_p_value(320, 280) > 0.05);
    }

    #[test]
    fn mean_and_se_basics() {
        let (mean, se) = mean_and_se(&[1.0, -1.0, 1.0, 1.0]);
        assert!((mean - 0.5).abs() < 1e-12);
        assert!(se > 0.0);
    }
}
