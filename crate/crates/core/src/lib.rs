//! Exact probabilities and Monte Carlo simulation for the absent-minded
//! passenger boarding process.
//!
//! `n` passengers board a full plane in order. The first `k` ignore their
//! boarding passes and take a uniformly random free seat; everyone after
//! takes their own seat if it is free and a uniformly random free seat
//! otherwise. This crate enumerates every feasible seating with its exact
//! probability, evaluates the closed-form laws and moments of the number of
//! misplaced passengers, simulates the process quickly and reproducibly, and
//! turns the known identities into executable checks.

pub mod cli;
pub mod config;
pub mod distribution;
pub mod error;
pub mod exact;
pub mod process;
pub mod rng;
pub mod simulate;
pub mod stats;
pub mod svg;
pub mod verify;

pub use config::{BoardingConfig, DEFAULT_BUDGET};
pub use distribution::{ExactDistribution, ExactValue, MomentSummary};
pub use error::{Error, Result};
pub use process::{
    count_feasible, derive_x, derive_z, enumerate_feasible, sample_wrong_count_jump,
    simulate_boarding, wrong_count, DerivedStateX, DerivedStateZ, Placement, Simulator,
    WeightedPlacement,
};
pub use verify::{Verdict, VerificationReport};
