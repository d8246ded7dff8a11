use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid configuration: n = {n}, k = {k} (need n >= 2 and 1 <= k <= n - 1)")]
    InvalidConfig { n: usize, k: usize },

    #[error("enumeration budget exceeded: {count} feasible placements, cap is {budget}")]
    BudgetExceeded { count: BigUint, budget: u64 },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("conditioning event has probability zero")]
    EmptyConditioningEvent,
}

pub type Result<T> = std::result::Result<T, Error>;
