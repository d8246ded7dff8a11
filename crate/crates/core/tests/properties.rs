use absent_minded::exact::{dist_w, mean_w, var_w};
use absent_minded::process::{sample_wrong_count_jump, Simulator};
use absent_minded::rng::stream;
use absent_minded::stats::{chi_square_gof, Histogram};
use absent_minded::{BoardingConfig, DEFAULT_BUDGET};
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn config() -> impl Strategy<Value = BoardingConfig> {
    (2usize..=8).prop_flat_map(|n| (Just(n), 1..n)).prop_map(|(n, k)| BoardingConfig::new(n, k).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pmf_has_unit_mass(c in config()) {
        let d = dist_w(&c, DEFAULT_BUDGET).unwrap();
        let total: BigRational = d.iter().map(|(_, p)| p.clone()).sum();
        prop_assert!(total.is_one());
        prop_assert_eq!(d.mean(), mean_w(&c));
        prop_assert_eq!(d.variance(), var_w(&c));
    }

    #[test]
    fn simulated_placements_are_feasible(c in config(), seed in any::<u64>()) {
        let mut sim = Simulator::new(c);
        let mut rng = stream(seed, 0);
        for _ in 0..50 {
            let p = sim.sample(&mut rng);
            prop_assert!(p.is_feasible(c.k()));
        }
    }

    #[test]
    fn jump_sampler_stays_in_range(n in 10usize..200, k in 1usize..4, seed in any::<u64>()) {
        let c = BoardingConfig::new(n, k).unwrap();
        let mut rng = stream(seed, 0);
        for _ in 0..50 {
            let w = sample_wrong_count_jump(&c, &mut rng);
            prop_assert!(w <= n && w != 1);
        }
    }
}

#[test]
fn jump_sampler_matches_exact_law() {
    for (n, k, seed) in [(10, 1, 11u64), (12, 2, 12), (9, 3, 13)] {
        let c = BoardingConfig::new(n, k).unwrap();
        let mut rng = stream(seed, 0);
        let mut h = Histogram::new();
        for _ in 0..100_000 {
            *h.entry(sample_wrong_count_jump(&c, &mut rng)).or_insert(0) += 1;
        }
        let r = chi_square_gof(&h, &dist_w(&c, DEFAULT_BUDGET).unwrap());
        assert!(r.p_value > 1e-3, "({n},{k}) p = {}", r.p_value);
    }
}
