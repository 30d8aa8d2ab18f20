use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use koszul_cli::format::{parse_algebra, parse_module, write_algebra, write_module, AlgebraPair, Over};
use koszul_core::exactlin::{Field, PrimeField, Rationals};
use koszul_core::grmod::random_module;
use koszul_core::samples::random_algebra;

fn round_trip<F: Field>(field: F, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_algebra(field.clone(), &mut rng, 4, 6);
    let text = write_algebra(&a);
    let back = parse_algebra("a", &text).unwrap().build("a", field).unwrap();
    assert!(back.same_presentation(&a), "{text}");
    assert_eq!(write_algebra(&back), text);

    let pair = AlgebraPair::new(back);
    let over = if rng.gen_bool(0.5) { Over::Algebra } else { Over::Dual };
    let lo = rng.gen_range(-2..=2);
    let hi = lo + rng.gen_range(0..=3);
    let m = random_module(Arc::clone(pair.over(over)), &mut rng, lo, hi, 2);
    let mtext = write_module(&m, over);
    let mback = parse_module("m", &mtext, &pair).unwrap();
    assert!(mback.same_data(&m), "{mtext}");
    assert!(mback.validate().is_empty());
    assert_eq!(write_module(&mback, over), mtext);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn printed_files_parse_back_over_q(seed in any::<u64>()) {
        round_trip(Rationals, seed);
    }

    #[test]
    fn printed_files_parse_back_over_gf3(seed in any::<u64>()) {
        round_trip(PrimeField::new(3).unwrap(), seed);
    }
}
