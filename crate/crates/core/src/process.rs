//! The boarding process itself: seeded simulation, exhaustive enumeration of
//! every feasible outcome with its exact probability, and the quantities
//! derived from a realized placement.
//!
//! Balls, pits, passengers and seats are interchangeable names here. Ball `i`
//! is assigned pit `i`; the first `k` balls ignore their assignment and pick a
//! free pit uniformly at random, every later ball takes its own pit when it is
//! free and otherwise picks a free pit uniformly at random. All indices in the
//! public API are 1-based.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

use crate::config::BoardingConfig;
use crate::error::{Error, Result};

/// A realized outcome: `seats()[i - 1]` is the pit taken by ball `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Placement {
    seats: Vec<usize>,
}

impl Placement {
    /// Builds a placement from 1-based pit numbers, checking that they form a
    /// permutation of `1..=n`.
    pub fn new(seats: Vec<usize>) -> Result<Self> {
        let n = seats.len();
        let mut seen = vec![false; n];
        for &s in &seats {
            if s == 0 || s > n || seen[s - 1] {
                return Err(Error::InvalidArgument(format!(
                    "{seats:?} is not a permutation of 1..={n}"
                )));
            }
            seen[s - 1] = true;
        }
        Ok(Self { seats })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            seats: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.seats.len()
    }

    pub fn seats(&self) -> &[usize] {
        &self.seats
    }

    /// Pit taken by `ball` (1-based).
    pub fn seat_of(&self, ball: usize) -> usize {
        self.seats[ball - 1]
    }

    /// Whether `ball` ended up in its own pit.
    pub fn is_correct(&self, ball: usize) -> bool {
        self.seat_of(ball) == ball
    }

    /// Number of balls not in their own pit.
    pub fn wrong_count(&self) -> usize {
        wrong_count(self)
    }

    /// True if the process with `k` absent-minded balls can produce this
    /// placement: every ball after the `k`-th whose pit was still free took it.
    pub fn is_feasible(&self, k: usize) -> bool {
        let n = self.n();
        let mut taken = vec![false; n + 1];
        for (idx, &pit) in self.seats.iter().enumerate() {
            let ball = idx + 1;
            if ball > k && !taken[ball] && pit != ball {
                return false;
            }
            taken[pit] = true;
        }
        true
    }
}

/// A feasible placement together with the exact probability that the process
/// produces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPlacement {
    pub placement: Placement,
    pub probability: BigRational,
}

/// `|{i : N_i != i}|`, the number of incorrectly placed balls.
pub fn wrong_count(p: &Placement) -> usize {
    p.seats
        .iter()
        .enumerate()
        .filter(|&(idx, &pit)| pit != idx + 1)
        .count()
}

/// Number of feasible placements, `k! (k+1)^(n-k)`.
pub fn count_feasible(config: &BoardingConfig) -> BigUint {
    let (n, k) = (config.n(), config.k());
    let factorial: BigUint = (1..=k).map(BigUint::from).product();
    factorial * BigUint::from(k + 1).pow((n - k) as u32)
}

const FREE_NONE: u32 = u32::MAX;

/// Reusable O(n)-per-trial simulator.
///
/// Free pits live in a pool with an inverse index, so taking a pit (random
/// or assigned) is a swap with the last pool entry.
#[derive(Debug, Clone)]
pub struct Simulator {
    config: BoardingConfig,
    pool: Vec<u32>,
    pos: Vec<u32>,
    seats: Vec<u32>,
}

impl Simulator {
    pub fn new(config: BoardingConfig) -> Self {
        assert!(
            config.n() < FREE_NONE as usize,
            "n must fit in a 32-bit pit index"
        );
        let n = config.n();
        Self {
            config,
            pool: Vec::with_capacity(n),
            pos: vec![0; n],
            seats: vec![0; n],
        }
    }

    pub fn config(&self) -> &BoardingConfig {
        &self.config
    }

    fn take_at(&mut self, idx: usize) -> u32 {
        let pit = self.pool[idx];
        let last = self.pool.pop().expect("pool is non-empty while balls remain");
        if idx < self.pool.len() {
            self.pool[idx] = last;
            self.pos[last as usize] = idx as u32;
        }
        self.pos[pit as usize] = FREE_NONE;
        pit
    }

    /// Runs one trial, leaving 0-based pits in `self.seats`.
    fn run<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let (n, k) = (self.config.n(), self.config.k());
        self.pool.clear();
        self.pool.extend(0..n as u32);
        for (i, p) in self.pos.iter_mut().enumerate() {
            *p = i as u32;
        }
        for ball in 0..n {
            let own = self.pos[ball];
            let pit = if ball >= k && own != FREE_NONE {
                self.take_at(own as usize)
            } else {
                let idx = rng.random_range(0..self.pool.len());
                self.take_at(idx)
            };
            self.seats[ball] = pit;
        }
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Placement {
        self.run(rng);
        Placement {
            seats: self.seats.iter().map(|&s| s as usize + 1).collect(),
        }
    }

    /// One trial, returning only the number of incorrectly placed balls.
    pub fn sample_wrong_count<R: Rng + ?Sized>(&mut self, rng: &mut R) -> usize {
        self.run(rng);
        self.seats
            .iter()
            .enumerate()
            .filter(|&(ball, &pit)| pit as usize != ball)
            .count()
    }
}

/// Runs the boarding process once.
pub fn simulate_boarding<R: Rng + ?Sized>(config: &BoardingConfig, rng: &mut R) -> Placement {
    Simulator::new(*config).sample(rng)
}

/// Samples the number of incorrectly placed balls by following only the
/// displacement events.
///
/// Only the `k` occupied pits outside `{k+1, ..., i}` are tracked. Balls whose
/// pit is free are skipped in one jump, so a trial costs O(k^2 log n) in
/// expectation instead of O(n). The law is identical to
/// [`Simulator::sample_wrong_count`]. When `k > n / 2` the rejection steps
/// would get slow, and the full simulator is used instead.
pub fn sample_wrong_count_jump<R: Rng + ?Sized>(config: &BoardingConfig, rng: &mut R) -> usize {
    let (n, k) = (config.n(), config.k());
    if 2 * k > n {
        return Simulator::new(*config).sample_wrong_count(rng);
    }
    let mut others: Vec<usize> = Vec::with_capacity(k);
    let mut wrong = 0;
    for ball in 1..=k {
        let pit = loop {
            let r = rng.random_range(1..=n);
            if !others.contains(&r) {
                break r;
            }
        };
        if pit != ball {
            wrong += 1;
        }
        others.push(pit);
    }
    let mut placed = k;
    // next ball to find its pit taken is the smallest tracked pit above `placed`
    while let Some((slot, displaced)) = others
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, p)| p > placed)
        .min_by_key(|&(_, p)| p)
    {
        wrong += 1;
        others.swap_remove(slot);
        // candidates: {1..k} followed by {displaced+1..n}
        let span = n - displaced + k;
        let pit = loop {
            let r = rng.random_range(0..span);
            let pit = if r < k { r + 1 } else { displaced + 1 + (r - k) };
            if !others.contains(&pit) {
                break pit;
            }
        };
        others.push(pit);
        placed = displaced;
    }
    wrong
}

/// Every feasible placement with its exact probability, in lexicographic
/// order of the pit sequence.
pub fn enumerate_feasible(config: &BoardingConfig, budget: u64) -> Result<Vec<WeightedPlacement>> {
    let count = count_feasible(config);
    if count > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { count, budget });
    }
    let n = config.n();
    let mut walk = Walk {
        k: config.k(),
        free: vec![true; n + 1],
        seats: Vec::with_capacity(n),
        out: Vec::with_capacity(budget.min(1 << 20) as usize),
    };
    walk.expand(&BigUint::one());
    Ok(walk.out)
}

struct Walk {
    k: usize,
    free: Vec<bool>,
    seats: Vec<usize>,
    out: Vec<WeightedPlacement>,
}

impl Walk {
    fn n(&self) -> usize {
        self.free.len() - 1
    }

    fn expand(&mut self, denominator: &BigUint) {
        let ball = self.seats.len() + 1;
        if ball > self.n() {
            self.out.push(WeightedPlacement {
                placement: Placement {
                    seats: self.seats.clone(),
                },
                probability: BigRational::new(1.into(), denominator.clone().into()),
            });
            return;
        }
        if ball > self.k && self.free[ball] {
            self.place(ball, denominator);
            return;
        }
        let choices: Vec<usize> = (1..=self.n()).filter(|&p| self.free[p]).collect();
        let next = denominator * BigUint::from(choices.len());
        for pit in choices {
            self.place(pit, &next);
        }
    }

    fn place(&mut self, pit: usize, denominator: &BigUint) {
        self.free[pit] = false;
        self.seats.push(pit);
        self.expand(denominator);
        self.seats.pop();
        self.free[pit] = true;
    }
}

/// The trajectory `X_1..X_n` for a single absent-minded ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedStateX {
    values: Vec<usize>,
}

impl DerivedStateX {
    /// `X_i`, 1-based.
    pub fn get(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// `X_i = 1` once pit 1 is occupied after `i` placements, otherwise the
/// largest occupied pit (the one pit above `i` that is taken).
pub fn derive_x(p: &Placement, config: &BoardingConfig) -> Result<DerivedStateX> {
    if config.k() != 1 {
        return Err(Error::InvalidArgument(format!(
            "X-trajectory is defined for k = 1 only, got k = {}",
            config.k()
        )));
    }
    check_len(p, config)?;
    let mut lowest = usize::MAX;
    let mut highest = 0;
    let values = p
        .seats
        .iter()
        .map(|&pit| {
            lowest = lowest.min(pit);
            highest = highest.max(pit);
            if lowest == 1 {
                1
            } else {
                highest
            }
        })
        .collect();
    Ok(DerivedStateX { values })
}

/// The sets `Z_k, ..., Z_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedStateZ {
    k: usize,
    sets: Vec<BTreeSet<usize>>,
}

impl DerivedStateZ {
    /// `Z_i` for `k <= i <= n`.
    pub fn get(&self, i: usize) -> Option<&BTreeSet<usize>> {
        i.checked_sub(self.k).and_then(|off| self.sets.get(off))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `(i, Z_i)` pairs in increasing `i`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BTreeSet<usize>)> {
        self.sets.iter().enumerate().map(move |(off, z)| (off + self.k, z))
    }
}

/// `Z_k` is the set of pits taken by the first `k` balls; for `i > k`,
/// `Z_i` is the set of occupied pits other than `k+1..=i`.
pub fn derive_z(p: &Placement, k: usize) -> Result<DerivedStateZ> {
    let config = BoardingConfig::new(p.n(), k)?;
    check_len(p, &config)?;
    if !p.is_feasible(k) {
        return Err(Error::InvalidArgument(format!(
            "{:?} is not feasible with k = {k}",
            p.seats
        )));
    }
    let mut current: BTreeSet<usize> = p.seats[..k].iter().copied().collect();
    let mut sets = Vec::with_capacity(p.n() - k + 1);
    sets.push(current.clone());
    for ball in k + 1..=p.n() {
        current.insert(p.seat_of(ball));
        current.remove(&ball);
        sets.push(current.clone());
    }
    Ok(DerivedStateZ { k, sets })
}

fn check_len(p: &Placement, config: &BoardingConfig) -> Result<()> {
    if p.n() != config.n() {
        return Err(Error::InvalidArgument(format!(
            "placement has {} entries but n = {}",
            p.n(),
            config.n()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use num_traits::Zero;
    use std::collections::HashSet;

    fn cfg(n: usize, k: usize) -> BoardingConfig {
        BoardingConfig::new(n, k).unwrap()
    }

    fn pl(seats: &[usize]) -> Placement {
        Placement::new(seats.to_vec()).unwrap()
    }

    fn frac(num: u64, den: u64) -> BigRational {
        BigRational::new(num.into(), den.into())
    }

    #[test]
    fn placement_rejects_non_permutations() {
        assert!(Placement::new(vec![1, 1, 3]).is_err());
        assert!(Placement::new(vec![0, 1, 2]).is_err());
        assert!(Placement::new(vec![1, 2, 4]).is_err());
    }

    #[test]
    fn wrong_count_matches_table_rows() {
        assert_eq!(wrong_count(&pl(&[1, 2, 3, 4])), 0);
        assert_eq!(wrong_count(&pl(&[2, 3, 4, 1])), 4);
        assert_eq!(wrong_count(&pl(&[3, 2, 1, 4])), 2);
    }

    #[test]
    fn table_one() {
        let got = enumerate_feasible(&cfg(4, 1), 100).unwrap();
        let expected: [([usize; 4], u64, usize); 8] = [
            ([1, 2, 3, 4], 4, 0),
            ([2, 1, 3, 4], 12, 2),
            ([2, 3, 1, 4], 24, 3),
            ([2, 3, 4, 1], 24, 4),
            ([2, 4, 3, 1], 12, 3),
            ([3, 2, 1, 4], 8, 2),
            ([3, 2, 4, 1], 8, 3),
            ([4, 2, 3, 1], 4, 2),
        ];
        assert_eq!(got.len(), 8);
        for (row, (seats, den, w)) in got.iter().zip(expected) {
            assert_eq!(row.placement.seats(), &seats);
            assert_eq!(row.probability, frac(1, den));
            assert_eq!(row.placement.wrong_count(), w);
        }
    }

    #[test]
    fn two_seats() {
        let got = enumerate_feasible(&cfg(2, 1), 10).unwrap();
        assert_eq!(got.len(), 2);
        assert!(got.iter().all(|w| w.probability == frac(1, 2)));
    }

    #[test]
    fn counts() {
        assert_eq!(count_feasible(&cfg(4, 1)), BigUint::from(8u32));
        assert_eq!(count_feasible(&cfg(10, 3)), BigUint::from(98_304u32));
        for n in 2..9 {
            let all: BigUint = (1..=n).map(BigUint::from).product();
            assert_eq!(count_feasible(&cfg(n, n - 1)), all);
        }
        assert_eq!(enumerate_feasible(&cfg(5, 2), 1000).unwrap().len(), 54);
        assert_eq!(
            enumerate_feasible(&cfg(10, 3), DEFAULT).unwrap().len(),
            98_304
        );
    }

    const DEFAULT: u64 = crate::config::DEFAULT_BUDGET;

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_feasible(&cfg(30, 3), DEFAULT).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        assert!(enumerate_feasible(&cfg(4, 1), 7).is_err());
        assert!(enumerate_feasible(&cfg(4, 1), 8).is_ok());
    }

    #[test]
    fn enumeration_invariants() {
        for n in 2..=7 {
            for k in 1..n.min(4) {
                let c = cfg(n, k);
                let all = enumerate_feasible(&c, DEFAULT).unwrap();
                let total: BigRational = all.iter().map(|w| w.probability.clone()).sum();
                assert_eq!(total, BigRational::one(), "n={n} k={k}");
                let distinct: HashSet<_> = all.iter().map(|w| w.placement.clone()).collect();
                assert_eq!(distinct.len(), all.len());
                for w in &all {
                    assert!(w.placement.is_feasible(k));
                    assert_ne!(w.placement.wrong_count(), 1);
                    assert!(w.probability > BigRational::zero());
                }
            }
        }
    }

    #[test]
    fn x_trajectory_example() {
        // ball 1 -> 4, ball 4 -> 8, ball 8 -> 1
        let p = pl(&[4, 2, 3, 8, 5, 6, 7, 1, 9]);
        let x = derive_x(&p, &cfg(9, 1)).unwrap();
        assert_eq!(x.values(), &[4, 4, 4, 8, 8, 8, 8, 1, 1]);
    }

    #[test]
    fn x_trajectory_small_cases() {
        let x = derive_x(&Placement::identity(5), &cfg(5, 1)).unwrap();
        assert!(x.values().iter().all(|&v| v == 1));
        let x = derive_x(&pl(&[2, 1, 3, 4]), &cfg(4, 1)).unwrap();
        assert_eq!(x.values(), &[2, 1, 1, 1]);
        assert!(derive_x(&pl(&[2, 1, 3, 4]), &cfg(4, 2)).is_err());
    }

    #[test]
    fn x_trajectory_invariants() {
        for n in 2..=8 {
            let c = cfg(n, 1);
            for w in enumerate_feasible(&c, DEFAULT).unwrap() {
                let x = derive_x(&w.placement, &c).unwrap();
                assert_eq!(x.get(n), 1);
                for i in 1..=n {
                    let v = x.get(i);
                    assert!(v == 1 || v > i);
                    if v == 1 {
                        assert!((i..=n).all(|j| x.get(j) == 1));
                    }
                }
            }
        }
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn z_sets_worked_example() {
        let p = pl(&[7, 3, 9, 4, 5, 6, 1, 8, 10, 2]);
        let z = derive_z(&p, 3).unwrap();
        for i in 3..=6 {
            assert_eq!(z.get(i).unwrap(), &set(&[3, 7, 9]));
        }
        assert_eq!(z.get(7).unwrap(), &set(&[1, 3, 9]));
        assert_eq!(z.get(8).unwrap(), &set(&[1, 3, 9]));
        assert_eq!(z.get(9).unwrap(), &set(&[1, 3, 10]));
        assert_eq!(z.get(10).unwrap(), &set(&[1, 2, 3]));
        assert!(z.get(2).is_none());
        assert!(z.get(11).is_none());
    }

    #[test]
    fn z_sets_small_cases() {
        let z = derive_z(&Placement::identity(6), 3).unwrap();
        assert!(z.iter().all(|(_, s)| s == &set(&[1, 2, 3])));

        // ball 1 -> 4, ball 2 -> 5, ball 3 sits, ball 4 -> 1, ball 5 -> 2
        let z = derive_z(&pl(&[4, 5, 3, 1, 2]), 2).unwrap();
        assert_eq!(z.get(2).unwrap(), &set(&[4, 5]));
        assert_eq!(z.get(3).unwrap(), &set(&[4, 5]));
        assert_eq!(z.get(4).unwrap(), &set(&[1, 5]));
        assert_eq!(z.get(5).unwrap(), &set(&[1, 2]));

        assert!(derive_z(&pl(&[2, 1, 4, 3]), 1).is_err());
    }

    #[test]
    fn z_invariants() {
        for n in 3..=7 {
            for k in 1..n.min(4) {
                for w in enumerate_feasible(&cfg(n, k), DEFAULT).unwrap() {
                    let z = derive_z(&w.placement, k).unwrap();
                    for (i, s) in z.iter() {
                        assert_eq!(s.len(), k);
                        assert!(s.iter().all(|&p| p <= k || p > i));
                    }
                }
            }
        }
    }

    #[test]
    fn simulator_is_reproducible_and_feasible() {
        let c = cfg(50, 4);
        let a: Vec<Placement> = {
            let mut r = rng::stream(11, 0);
            let mut sim = Simulator::new(c);
            (0..20).map(|_| sim.sample(&mut r)).collect()
        };
        let b: Vec<Placement> = {
            let mut r = rng::stream(11, 0);
            (0..20).map(|_| simulate_boarding(&c, &mut r)).collect()
        };
        assert_eq!(a, b);
        assert!(a.iter().all(|p| p.is_feasible(4)));
    }

    #[test]
    fn simulator_only_produces_table_rows() {
        let c = cfg(4, 1);
        let feasible: HashSet<Placement> = enumerate_feasible(&c, 100)
            .unwrap()
            .into_iter()
            .map(|w| w.placement)
            .collect();
        let mut seen = HashSet::new();
        let mut sim = Simulator::new(c);
        for seed in 0..400 {
            let p = sim.sample(&mut rng::stream(seed, 0));
            assert!(feasible.contains(&p));
            seen.insert(p);
        }
        assert_eq!(seen, feasible);
    }

    #[test]
    fn two_seats_is_a_coin() {
        let mut sim = Simulator::new(cfg(2, 1));
        let mut r = rng::stream(5, 0);
        let swapped = (0..20_000)
            .filter(|_| sim.sample(&mut r).seats() == [2, 1])
            .count();
        assert!((swapped as f64 / 20_000.0 - 0.5).abs() < 0.02);
    }

    #[test]
    fn last_ball_is_forced() {
        let mut sim = Simulator::new(cfg(5, 4));
        let mut r = rng::stream(3, 0);
        let mut first_four = std::collections::HashMap::new();
        for _ in 0..24_000 {
            let p = sim.sample(&mut r);
            *first_four.entry(p.seats()[..4].to_vec()).or_insert(0u32) += 1;
        }
        // all 5*4*3*2 arrangements occur, roughly 200 times each
        assert_eq!(first_four.len(), 120);
        assert!(first_four.values().all(|&c| (120..=290).contains(&c)));
    }

    #[test]
    fn jump_sampler_stays_in_support() {
        for (n, k) in [(10, 1), (10, 3), (30, 2), (7, 5)] {
            let c = cfg(n, k);
            let mut r = rng::stream(1, 0);
            for _ in 0..2_000 {
                let w = sample_wrong_count_jump(&c, &mut r);
                assert!(w <= n && w != 1);
            }
        }
    }
}
