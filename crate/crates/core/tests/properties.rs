mod support;

use dynwg::dynweyl::{rank1_coefficient, rho_shift, word_operator_block};
use dynwg::geomsatake::verify_main_theorem_rank1;
use dynwg::ratfun::{LinearForm, RatFun};
use dynwg::rep::{Irrep, DEFAULT_DIM_CAP};
use dynwg::rootdata::{RootSystem, Weight, WeylWord};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfun_properties_hold_for_any_seed(seed in any::<u64>()) {
        let t = support::run_properties(seed, 20);
        prop_assert!(t.failures.is_empty(), "{:?}", t.failures);
    }

    #[test]
    fn display_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = support::random_factored(&mut rng).value;
        let b = support::random_factored(&mut rng).value;
        for f in [a.clone(), a.add(&b), a.mul(&b).neg()] {
            let text = f.to_string();
            prop_assert_eq!(RatFun::parse(&text, support::NX).unwrap(), f, "{}", text);
        }
    }

    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = support::random_factored(&mut rng).value.add(&support::random_factored(&mut rng).value);
        let back: RatFun = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn main_theorem_rank1_beyond_the_sweep(lambda in 0i64..16, j in 0i64..8) {
        let mu = lambda - 2 * j.min(lambda / 2);
        prop_assert!(verify_main_theorem_rank1(lambda, mu).unwrap().equal);
    }

    #[test]
    fn rho_shift_is_an_involution(m in 0i64..10, k in 0i64..5) {
        prop_assume!(m >= 2 * k);
        let v = Irrep::build("A1".parse().unwrap(), &Weight(vec![m]), DEFAULT_DIM_CAP).unwrap();
        let b = word_operator_block(&v, &WeylWord(vec![1]), &Weight(vec![m - 2 * k])).unwrap();
        prop_assert_eq!(&b.matrix[0][0], &rank1_coefficient(m, k, &LinearForm::x_var(1, 0)).unwrap());
        prop_assert_eq!(rho_shift(&rho_shift(&b).unwrap()).unwrap(), b);
    }

    #[test]
    fn reduced_words_have_positive_distinct_crossings(letters in proptest::collection::vec(1usize..=3, 0..8)) {
        let rs = RootSystem::new("A3".parse().unwrap());
        let w = WeylWord(letters);
        if rs.is_reduced(&w) {
            let g = rs.crossing_coroots(&w).unwrap();
            prop_assert!(g.iter().all(|c| c.is_positive()));
            prop_assert_eq!(rs.length(&rs.element(&w).unwrap()), w.len());
        } else {
            prop_assert!(rs.length(&rs.element(&w).unwrap()) < w.len());
        }
    }
}
