use std::sync::Arc;

use koszul_core::exactlin::{PrimeField, Rationals};
use koszul_core::grmod::{random_module, GradedModule};
use koszul_core::kdual::{classify, homology, koszul_dual_complex, Bounds, Classification};
use koszul_core::resolve::{is_koszul_module, is_weakly_koszul_gr, minimal_resolution};
use koszul_core::samples;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn algebra(which: usize) -> Arc<koszul_core::quiver::QuadraticAlgebra<PrimeField>> {
    let f = PrimeField::new(3).unwrap();
    Arc::new(match which {
        0 => samples::arrow_loop(f),
        1 => samples::branched_line(f),
        _ => samples::commuting_square(f),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ext_dimensions_match_dual_homology(seed in any::<u64>(), which in 0usize..3) {
        let a = algebra(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(Arc::clone(&a), &mut rng, 0, 2, 2);
        let top = 5;
        let betti = minimal_resolution(&m, 5, top).unwrap().betti;
        let h = homology(&koszul_dual_complex(&m).unwrap(), top).unwrap();
        prop_assert!(h.euler_ok);
        for j in 0..=5usize {
            for l in 0..=top {
                for v in 0..a.vertex_count() {
                    let from_h = h.module(j as i64 - l).map_or(0, |x| x.dim(l, v));
                    prop_assert_eq!(betti.get(j, l, v), from_h, "j={} l={} v={}", j, l, v);
                }
            }
        }
    }

    #[test]
    fn complex_squares_to_zero_and_shifts(seed in any::<u64>(), which in 0usize..3, s in -2i64..3) {
        let a = algebra(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(Arc::clone(&a), &mut rng, 0, 3, 2);
        let c = koszul_dual_complex(&m).unwrap();
        prop_assert!(c.expand(6).unwrap().squares_to_zero());
        let cs = koszul_dual_complex(&m.shift(s)).unwrap();
        let moved = c.reindexed(s);
        prop_assert_eq!((cs.i_min, cs.i_max), (moved.i_min, moved.i_max));
        prop_assert_eq!(&cs.terms, &moved.terms);
        prop_assert_eq!(&cs.coefficients, &moved.coefficients);
    }

    #[test]
    fn verdicts_are_monotone(seed in any::<u64>(), which in 0usize..3) {
        let a = algebra(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(Arc::clone(&a), &mut rng, 0, 2, 2);
        let bounds = Bounds { j_max: 4, d_max: 6 };
        let r = classify(&m, bounds).unwrap();
        prop_assert!(r.routes_agree);
        if r.class == Classification::Koszul {
            prop_assert!(is_koszul_module(&m, 4, 6).unwrap().is_yes());
        }
        if is_koszul_module(&m, 4, 6).unwrap().is_yes() {
            prop_assert!(is_weakly_koszul_gr(&m, 4, 6).unwrap().is_yes());
        }
        if r.class >= Classification::WeaklyKoszul {
            prop_assert!(r.class >= Classification::QuasiKoszul);
        }
    }
}

#[test]
fn sample_modules_agree_across_routes() {
    let b = Bounds::default();
    let f = Rationals;
    let la = Arc::new(samples::branched_line(f));
    let modules: Vec<GradedModule<Rationals>> = vec![
        samples::three_top_strand(f, 8),
        samples::two_top_strand(f, 3, 8),
        samples::branch_module(f),
        samples::square_module(f),
        samples::square_dual_module(f),
        samples::uniserial_three(la),
    ];
    for m in &modules {
        let r = classify(m, b).unwrap();
        assert!(r.routes_agree, "{m:?}: {} vs {:?}", r.class, r.gr_route);
    }
}
