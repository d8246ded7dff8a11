//! Exact combinatorics: harmonic numbers, Stirling numbers of the first kind,
//! the closed-form laws of the number of misplaced balls, and the mean and
//! variance formulas. Everything here is big-integer or big-rational except
//! the `_f64` presentation helpers and [`asymptotic_params`].

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::config::BoardingConfig;
use crate::distribution::ExactDistribution;
use crate::error::{Error, Result};
use crate::process::{enumerate_feasible, WeightedPlacement};

fn int(v: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn from_biguint(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `H_m = 1 + 1/2 + ... + 1/m`, with `H_0 = 0`.
pub fn harmonic(m: usize) -> BigRational {
    reciprocal_sum(1, m, BigInt::from)
}

/// `sum_{l=from}^{to} 1/l^2`, empty when `from > to`.
fn inverse_square_sum(from: usize, to: usize) -> BigRational {
    reciprocal_sum(from, to, |l| BigInt::from(l) * BigInt::from(l))
}

/// `sum_{l=from}^{to} 1/den(l)` by binary splitting, reducing only once.
fn reciprocal_sum(from: usize, to: usize, den: impl Fn(usize) -> BigInt + Copy) -> BigRational {
    fn split(lo: usize, hi: usize, den: impl Fn(usize) -> BigInt + Copy) -> (BigInt, BigInt) {
        if hi - lo == 1 {
            return (BigInt::one(), den(lo));
        }
        let mid = lo + (hi - lo) / 2;
        let (a, b) = split(lo, mid, den);
        let (c, d) = split(mid, hi, den);
        (a * &d + c * &b, b * d)
    }
    if from > to {
        return BigRational::zero();
    }
    let (num, den) = split(from, to + 1, den);
    BigRational::new(num, den)
}

/// Rows `0..=max_n` of the unsigned Stirling numbers of the first kind,
/// built with `c(n, j) = c(n-1, j-1) + (n-1) c(n-1, j)`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=max_n {
            let row = next_row(&rows[n - 1], n);
            rows.push(row);
        }
        Self { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `c(n, 0..=n)`. Panics if `n` is beyond the table.
    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    pub fn get(&self, n: usize, j: usize) -> BigUint {
        self.rows
            .get(n)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }
}

fn next_row(prev: &[BigUint], n: usize) -> Vec<BigUint> {
    let mult = BigUint::from(n - 1);
    (0..=n)
        .map(|j| {
            let carried = if j >= 1 { prev[j - 1].clone() } else { BigUint::zero() };
            let stayed = prev.get(j).map(|c| c * &mult).unwrap_or_else(BigUint::zero);
            carried + stayed
        })
        .collect()
}

/// `c(n, 0..=n)` alone, keeping only one previous row in memory.
pub fn stirling_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for m in 1..=n {
        row = next_row(&row, m);
    }
    row
}

/// Number of permutations of `n` elements with exactly `j` cycles; zero for
/// `j > n`.
pub fn stirling_first(n: usize, j: usize) -> BigUint {
    if j > n {
        return BigUint::zero();
    }
    stirling_row(n).swap_remove(j)
}

/// Law of the cycle count of a uniform random permutation of `n` elements,
/// `c(n, j) / n!`.
pub fn dist_r(n: usize) -> ExactDistribution {
    dist_r_from_row(n, &stirling_row(n))
}

pub fn dist_r_from_row(n: usize, row: &[BigUint]) -> ExactDistribution {
    let total = factorial(n);
    let pmf = (1..=n).map(|j| (j, from_biguint(&row[j], &total))).collect();
    ExactDistribution::new(pmf).expect("a Stirling row sums to n!")
}

/// The same law, built by adding one independent indicator of probability
/// `1/(m+1)` at each step:
/// `P(R_{m+1} = j) = m/(m+1) P(R_m = j) + 1/(m+1) P(R_m = j-1)`.
pub fn dist_r_recursive(n: usize) -> ExactDistribution {
    assert!(n >= 1, "R_n needs n >= 1");
    RecordLaws::new().nth(n - 1).expect("the recursion never ends")
}

/// The laws of `R_1, R_2, ...` in order, each obtained from the previous one
/// by the recursion in [`dist_r_recursive`].
#[derive(Debug, Clone, Default)]
pub struct RecordLaws {
    m: usize,
    probs: Vec<BigRational>,
}

impl RecordLaws {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Iterator for RecordLaws {
    type Item = ExactDistribution;

    fn next(&mut self) -> Option<ExactDistribution> {
        if self.m == 0 {
            self.probs = vec![BigRational::zero(), BigRational::one()];
        } else {
            let m = self.m;
            let stay = ratio(m, m + 1);
            let step = ratio(1, m + 1);
            let mut next = vec![BigRational::zero(); m + 2];
            for (j, p) in self.probs.iter().enumerate() {
                next[j] += &stay * p;
                next[j + 1] += &step * p;
            }
            self.probs = next;
        }
        self.m += 1;
        let pmf = self.probs.iter().cloned().enumerate().collect();
        Some(ExactDistribution::new(pmf).expect("recursion preserves total mass"))
    }
}

/// Closed-form law of the number of misplaced balls with one absent-minded
/// ball: `P(W = 0) = c(n,1)/n!`, `P(W = 1) = 0`, `P(W = j) = c(n,j)/n!`.
pub fn dist_w1(n: usize) -> Result<ExactDistribution> {
    BoardingConfig::single(n)?;
    Ok(dist_w1_from_row(n, &stirling_row(n)))
}

fn dist_w1_from_row(n: usize, row: &[BigUint]) -> ExactDistribution {
    let total = factorial(n);
    let mut pmf = BTreeMap::new();
    pmf.insert(0, from_biguint(&row[1], &total));
    for (j, c) in row.iter().enumerate().skip(2) {
        pmf.insert(j, from_biguint(c, &total));
    }
    ExactDistribution::new(pmf).expect("a Stirling row sums to n!")
}

/// Law of the number of misplaced balls for any `k`, by aggregating the
/// exhaustive enumeration.
pub fn dist_w_general(config: &BoardingConfig, budget: u64) -> Result<ExactDistribution> {
    let outcomes = enumerate_feasible(config, budget)?;
    wrong_count_law(&outcomes)
}

pub fn wrong_count_law(outcomes: &[WeightedPlacement]) -> Result<ExactDistribution> {
    ExactDistribution::pushforward(outcomes, |w| w.placement.wrong_count())
}

/// Exact law of the misplaced-ball count: closed form for `k = 1`,
/// enumeration otherwise.
pub fn dist_w(config: &BoardingConfig, budget: u64) -> Result<ExactDistribution> {
    if config.k() == 1 {
        dist_w1(config.n())
    } else {
        dist_w_general(config, budget)
    }
}

fn check_seat(config: &BoardingConfig, i: usize) -> Result<()> {
    if i == 0 || i > config.n() {
        return Err(Error::InvalidArgument(format!(
            "seat {i} outside 1..={}",
            config.n()
        )));
    }
    Ok(())
}

/// Probability that ball `i` ends up in its own pit: `1/n` for the
/// absent-minded balls, `(n-i+1)/(n-i+k+1)` afterwards.
pub fn prob_a(config: &BoardingConfig, i: usize) -> Result<BigRational> {
    check_seat(config, i)?;
    let (n, k) = (config.n(), config.k());
    Ok(if i <= k {
        ratio(1, n)
    } else {
        ratio(n - i + 1, n - i + k + 1)
    })
}

/// Probability that balls `i < j` both end up in their own pits.
pub fn joint_prob_a(config: &BoardingConfig, i: usize, j: usize) -> Result<BigRational> {
    check_seat(config, i)?;
    check_seat(config, j)?;
    if i >= j {
        return Err(Error::InvalidArgument(format!("need i < j, got {i}, {j}")));
    }
    let (n, k) = (config.n(), config.k());
    Ok(if j <= k {
        ratio(1, n * (n - 1))
    } else if i <= k {
        ratio(1, n) * ratio(n - j + 1, n - j + k)
    } else {
        prob_a(config, i)? * prob_a(config, j)?
    })
}

/// Expected number of correctly placed balls for `k = 1`: `n - H_{n-1}`.
pub fn mean_c(n: usize) -> BigRational {
    int(n) - harmonic(n.saturating_sub(1))
}

/// `E W = k (1 + H_{n-1} - H_k)`.
pub fn mean_w(config: &BoardingConfig) -> BigRational {
    let (n, k) = (config.n(), config.k());
    int(k) * (BigRational::one() + harmonic(n - 1) - harmonic(k))
}

/// `Var W = k [ (2(1 - n + kn) - n^2 - k) / (n^2 (n-1)) + 2/(nk)
///              + (1 + 2/n)(H_n - H_k) - k sum_{l=k+1}^n 1/l^2 ]`,
/// evaluated term by term.
pub fn var_w(config: &BoardingConfig) -> BigRational {
    let (n, k) = (config.n(), config.k());
    let (nb, kb) = (BigInt::from(n), BigInt::from(k));
    let leading_num: BigInt =
        BigInt::from(2) * (BigInt::one() - &nb + &kb * &nb) - &nb * &nb - &kb;
    let leading = BigRational::new(leading_num, &nb * &nb * (&nb - 1));
    let cross = ratio(2, n * k);
    let harmonic_part = (BigRational::one() + ratio(2, n)) * (harmonic(n) - harmonic(k));
    let tail = int(k) * inverse_square_sum(k + 1, n);
    int(k) * (leading + cross + harmonic_part - tail)
}

/// The number of correctly placed balls has the same variance as the number
/// of misplaced ones.
pub fn var_c(config: &BoardingConfig) -> BigRational {
    var_w(config)
}

fn harmonic_f64(m: usize) -> f64 {
    (1..=m).rev().map(|l| 1.0 / l as f64).sum()
}

/// [`mean_w`] in floating point, for instances too large for exact
/// harmonic numbers.
pub fn mean_w_f64(config: &BoardingConfig) -> f64 {
    let (n, k) = (config.n(), config.k());
    k as f64 * (1.0 + harmonic_f64(n - 1) - harmonic_f64(k))
}

/// [`var_w`] in floating point.
pub fn var_w_f64(config: &BoardingConfig) -> f64 {
    let (n, k) = (config.n() as f64, config.k() as f64);
    let tail: f64 = (config.k() + 1..=config.n())
        .rev()
        .map(|l| 1.0 / (l as f64 * l as f64))
        .sum();
    let harmonic_gap = harmonic_f64(config.n()) - harmonic_f64(config.k());
    k * ((2.0 * (1.0 - n + k * n) - n * n - k) / (n * n * (n - 1.0))
        + 2.0 / (n * k)
        + (1.0 + 2.0 / n) * harmonic_gap
        - k * tail)
}

/// Centering and scaling for the normal limit: `(k log n, sqrt(k log n))`.
pub fn asymptotic_params(config: &BoardingConfig) -> (f64, f64) {
    let mean = config.k() as f64 * (config.n() as f64).ln();
    (mean, mean.sqrt())
}
