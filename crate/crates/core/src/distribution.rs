//! Finite distributions on the nonnegative integers with exact rational
//! probabilities.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::process::WeightedPlacement;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDistribution {
    pmf: BTreeMap<usize, BigRational>,
}

impl ExactDistribution {
    /// Builds a distribution, dropping zero-mass entries. Fails unless every
    /// probability is nonnegative and they sum to exactly one.
    pub fn new(pmf: BTreeMap<usize, BigRational>) -> Result<Self> {
        if pmf.values().any(|p| p.is_negative()) {
            return Err(Error::InvalidArgument("negative probability".into()));
        }
        let total: BigRational = pmf.values().cloned().sum();
        if !total.is_one() {
            return Err(Error::InvalidArgument(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        let pmf = pmf.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Ok(Self { pmf })
    }

    /// Aggregates weighted outcomes by a value function.
    pub fn pushforward<F>(outcomes: &[WeightedPlacement], mut value: F) -> Result<Self>
    where
        F: FnMut(&WeightedPlacement) -> usize,
    {
        let mut pmf: BTreeMap<usize, BigRational> = BTreeMap::new();
        for w in outcomes {
            *pmf.entry(value(w)).or_insert_with(BigRational::zero) += &w.probability;
        }
        Self::new(pmf)
    }

    /// Probability of `value` (zero off the support).
    pub fn pmf(&self, value: usize) -> BigRational {
        self.pmf.get(&value).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `(value, probability)` in increasing value, nonzero entries only.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.pmf.iter().map(|(&v, p)| (v, p))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.pmf.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.pmf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pmf.is_empty()
    }

    fn raw_moment(&self, power: u32) -> BigRational {
        self.pmf
            .iter()
            .map(|(&v, p)| p * BigRational::from_integer(BigInt::from(v).pow(power)))
            .sum()
    }

    pub fn mean(&self) -> BigRational {
        self.raw_moment(1)
    }

    pub fn variance(&self) -> BigRational {
        let m = self.mean();
        self.raw_moment(2) - &m * &m
    }

    pub fn moments(&self) -> MomentSummary {
        MomentSummary {
            mean: self.mean(),
            variance: self.variance(),
        }
    }

    /// Most probable value; ties go to the smallest value.
    pub fn mode(&self) -> Option<(usize, &BigRational)> {
        self.pmf
            .iter()
            .fold(None, |best: Option<(usize, &BigRational)>, (&v, p)| match best {
                Some((_, bp)) if bp >= p => best,
                _ => Some((v, p)),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSummary {
    pub mean: BigRational,
    pub variance: BigRational,
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Renders `p/q` (or just `p` when the denominator is one).
pub fn fraction_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// JSON form of an exact fraction. `num` and `den` carry the exact value as
/// decimal strings; `decimal` is for display only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactValue {
    pub num: String,
    pub den: String,
    pub decimal: f64,
}

impl ExactValue {
    pub fn to_rational(&self) -> Result<BigRational> {
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|e| Error::InvalidArgument(format!("bad integer {s:?}: {e}")))
        };
        let den = parse(&self.den)?;
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(BigRational::new(parse(&self.num)?, den))
    }
}

impl From<&BigRational> for ExactValue {
    fn from(r: &BigRational) -> Self {
        Self {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            decimal: to_f64(r),
        }
    }
}
