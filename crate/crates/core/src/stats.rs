//! Goodness-of-fit statistics for simulated counts: Pearson chi-square against
//! an exact pmf and the Kolmogorov distance to the standard normal.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::distribution::{to_f64, ExactDistribution};

/// Counts per observed value.
pub type Histogram = BTreeMap<usize, u64>;

pub fn merge_into(into: &mut Histogram, from: Histogram) {
    for (v, c) in from {
        *into.entry(v).or_insert(0) += c;
    }
}

pub fn total(h: &Histogram) -> u64 {
    h.values().sum()
}

/// Sample mean and unbiased sample variance.
pub fn sample_moments(h: &Histogram) -> (f64, f64) {
    let n = total(h) as f64;
    let mean = h.iter().map(|(&v, &c)| v as f64 * c as f64).sum::<f64>() / n;
    let ss: f64 = h
        .iter()
        .map(|(&v, &c)| (v as f64 - mean).powi(2) * c as f64)
        .sum();
    let var = if n > 1.0 { ss / (n - 1.0) } else { 0.0 };
    (mean, var)
}

#[derive(Debug, Clone, Serialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    /// Number of pooled bins actually used.
    pub bins: usize,
    /// Observations falling on values the reference law gives zero mass.
    pub impossible: u64,
}

/// Minimum expected count per pooled bin.
pub const MIN_EXPECTED: f64 = 5.0;

/// Pearson chi-square test of `observed` against `reference`.
///
/// Support points are taken in increasing order and adjacent points pooled
/// until each bin expects at least [`MIN_EXPECTED`] observations; a short
/// tail is folded into the last bin. Any observation outside the reference
/// support makes the statistic infinite.
pub fn chi_square_gof(observed: &Histogram, reference: &ExactDistribution) -> ChiSquareResult {
    let trials = total(observed) as f64;
    let impossible: u64 = observed
        .iter()
        .filter(|(v, _)| reference.pmf(**v).is_zero())
        .map(|(_, &c)| c)
        .sum();

    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut exp_acc, mut obs_acc) = (0.0, 0.0);
    for (v, p) in reference.iter() {
        exp_acc += to_f64(p) * trials;
        obs_acc += observed.get(&v).copied().unwrap_or(0) as f64;
        if exp_acc >= MIN_EXPECTED {
            bins.push((exp_acc, obs_acc));
            exp_acc = 0.0;
            obs_acc = 0.0;
        }
    }
    if exp_acc > 0.0 || obs_acc > 0.0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += exp_acc;
                last.1 += obs_acc;
            }
            None => bins.push((exp_acc, obs_acc)),
        }
    }

    let dof = bins.len().saturating_sub(1);
    if impossible > 0 {
        return ChiSquareResult {
            statistic: f64::INFINITY,
            dof,
            p_value: 0.0,
            bins: bins.len(),
            impossible,
        };
    }
    let statistic: f64 = bins
        .iter()
        .map(|&(e, o)| (o - e) * (o - e) / e)
        .sum();
    let p_value = if dof == 0 {
        1.0
    } else {
        let law = ChiSquared::new(dof as f64).expect("dof is positive");
        law.sf(statistic)
    };
    ChiSquareResult {
        statistic,
        dof,
        p_value,
        bins: bins.len(),
        impossible,
    }
}

pub fn standard_normal_cdf(x: f64) -> f64 {
    Normal::standard().cdf(x)
}

/// `sup_x |F_emp(x) - Phi(x)|` where `F_emp` is the empirical CDF of
/// `(value - center) / scale` over the histogram.
///
/// The empirical CDF is a step function, so the supremum is reached at an
/// atom, either just before or at the jump.
pub fn sup_distance_to_normal(h: &Histogram, center: f64, scale: f64) -> f64 {
    let n = total(h) as f64;
    let mut below = 0u64;
    let mut sup: f64 = 0.0;
    for (&v, &c) in h {
        let phi = standard_normal_cdf((v as f64 - center) / scale);
        let left = below as f64 / n;
        below += c;
        let right = below as f64 / n;
        sup = sup.max((left - phi).abs()).max((right - phi).abs());
    }
    sup
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn coin() -> ExactDistribution {
        let half = BigRational::new(1.into(), 2.into());
        ExactDistribution::new([(0, half.clone()), (2, half)].into()).unwrap()
    }

    #[test]
    fn perfect_fit_has_zero_statistic() {
        let h: Histogram = [(0, 500), (2, 500)].into();
        let r = chi_square_gof(&h, &coin());
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.dof, 1);
        assert!((r.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn known_statistic() {
        // (450-500)^2/500 * 2 = 10, df 1 -> p = 0.001565
        let h: Histogram = [(0, 450), (2, 550)].into();
        let r = chi_square_gof(&h, &coin());
        assert!((r.statistic - 10.0).abs() < 1e-12);
        assert!((r.p_value - 0.001565402).abs() < 1e-6);
    }

    #[test]
    fn impossible_values_fail() {
        let h: Histogram = [(0, 500), (1, 1), (2, 499)].into();
        let r = chi_square_gof(&h, &coin());
        assert_eq!(r.impossible, 1);
        assert_eq!(r.p_value, 0.0);
    }

    #[test]
    fn sparse_bins_are_pooled() {
        let third = BigRational::new(1.into(), 3.into());
        let d = ExactDistribution::new([(0, third.clone()), (1, third.clone()), (2, third)].into())
            .unwrap();
        // 6 trials: expected 2 each, so everything pools into one bin
        let h: Histogram = [(0, 2), (1, 2), (2, 2)].into();
        let r = chi_square_gof(&h, &d);
        assert_eq!(r.bins, 1);
        assert_eq!(r.dof, 0);
    }

    #[test]
    fn sup_distance_of_symmetric_atoms() {
        // atoms at -1 and +1 after centering, each half the mass
        let h: Histogram = [(1, 1), (3, 1)].into();
        let d = sup_distance_to_normal(&h, 2.0, 1.0);
        let phi = standard_normal_cdf(1.0);
        assert!((d - (phi - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn moments_of_histogram() {
        let h: Histogram = [(0, 1), (2, 1)].into();
        let (m, v) = sample_moments(&h);
        assert_eq!(m, 1.0);
        assert_eq!(v, 2.0);
    }
}
