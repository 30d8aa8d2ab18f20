//! Small algebras and modules used by the tests, the acceptance suite and
//! the shipped example files.

use std::sync::Arc;

use rand::Rng;

use crate::ainfty::BigradedHomology;
use crate::exactlin::{Field, Matrix};
use crate::grmod::{GradedModule, ModuleBuilder};
use crate::quiver::{QuadraticAlgebra, Quiver};

/// `1 --alpha--> 2` with a loop `beta` at 2, no relations.
pub fn arrow_loop<F: Field>(field: F) -> QuadraticAlgebra<F> {
    let q = Quiver::new(["1", "2"], [("alpha", "1", "2"), ("beta", "2", "2")]).expect("valid quiver");
    QuadraticAlgebra::free(field, q)
}

/// `1 -alpha-> 2 -beta-> 3 -gamma-> 4` with `delta: 5 -> 3` and relation `gamma delta`.
pub fn branched_line<F: Field>(field: F) -> QuadraticAlgebra<F> {
    let q = Quiver::new(
        ["1", "2", "3", "4", "5"],
        [
            ("alpha", "1", "2"),
            ("beta", "2", "3"),
            ("gamma", "3", "4"),
            ("delta", "5", "3"),
        ],
    )
    .expect("valid quiver");
    let one = field.one();
    QuadraticAlgebra::from_named_relations(field, q, &[vec![(one, "gamma", "delta")]]).expect("valid relations")
}

/// Six vertices, arrows `alpha: 1->3, beta: 2->4, gamma: 3->4, delta: 3->5,
/// eps: 4->6, zeta: 5->6`, relations `eps beta` and `eps gamma - zeta delta`.
pub fn commuting_square<F: Field>(field: F) -> QuadraticAlgebra<F> {
    let q = Quiver::new(
        ["1", "2", "3", "4", "5", "6"],
        [
            ("alpha", "1", "3"),
            ("beta", "2", "4"),
            ("gamma", "3", "4"),
            ("delta", "3", "5"),
            ("eps", "4", "6"),
            ("zeta", "5", "6"),
        ],
    )
    .expect("valid quiver");
    let (one, minus) = (field.one(), field.from_i64(-1));
    QuadraticAlgebra::from_named_relations(
        field,
        q,
        &[
            vec![(one.clone(), "eps", "beta")],
            vec![(one, "eps", "gamma"), (minus, "zeta", "delta")],
        ],
    )
    .expect("valid relations")
}

fn one<F: Field>(f: &F) -> Matrix<F> {
    Matrix::identity(f, 1)
}

/// Over [`arrow_loop`]: `alpha`-strands leaving vertex 1 in each degree of
/// `tops`, feeding one `beta`-strand at vertex 2 that starts in degree
/// `tops[0] + 1` and runs to `top`. Stored truncated at `top`.
pub fn strand_module<F: Field>(field: F, tops: &[i64], top: i64) -> GradedModule<F> {
    let a = Arc::new(arrow_loop(field.clone()));
    let start = tops[0] + 1;
    assert!(top > *tops.last().expect("nonempty"), "window must contain every top");
    let mut b = ModuleBuilder::new(a, 0, top).truncated_above(true);
    for &t in tops {
        b = b.dim(t, 0, 1).action(0, t, one(&field));
    }
    for d in start..=top {
        b = b.dim(d, 1, 1);
        if d < top {
            b = b.action(1, d, one(&field));
        }
    }
    b.build().expect("valid module")
}

/// The strand module generated in degrees 0, 1 and 2.
pub fn three_top_strand<F: Field>(field: F, top: i64) -> GradedModule<F> {
    strand_module(field, &[0, 1, 2], top)
}

/// The strand module generated in degrees 0 and `t`.
pub fn two_top_strand<F: Field>(field: F, t: i64, top: i64) -> GradedModule<F> {
    strand_module(field, &[0, t], top)
}

/// Over [`branched_line`]: `S_1` in degree 0 through `S_2` to `S_3` in
/// degree 2, joined by `S_5` in degree 1.
pub fn branch_module<F: Field>(field: F) -> GradedModule<F> {
    let a = Arc::new(branched_line(field.clone()));
    ModuleBuilder::new(a, 0, 2)
        .dim(0, 0, 1)
        .dim(1, 1, 1)
        .dim(1, 4, 1)
        .dim(2, 2, 1)
        .action(0, 0, one(&field))
        .action(1, 1, one(&field))
        .action(3, 1, one(&field))
        .build()
        .expect("valid module")
}

/// The uniserial `1 -> 2 -> 3` in degrees 0, 1, 2 over a [`branched_line`] algebra.
pub fn uniserial_three<F: Field>(algebra: Arc<QuadraticAlgebra<F>>) -> GradedModule<F> {
    let f = algebra.field().clone();
    ModuleBuilder::new(algebra, 0, 2)
        .dim(0, 0, 1)
        .dim(1, 1, 1)
        .dim(2, 2, 1)
        .action(0, 0, one(&f))
        .action(1, 1, one(&f))
        .build()
        .expect("valid module")
}

/// Over [`commuting_square`]: `S_1` in degree 0 and `S_2` in degree 1, meeting in `S_4`.
pub fn square_module<F: Field>(field: F) -> GradedModule<F> {
    let a = Arc::new(commuting_square(field.clone()));
    ModuleBuilder::new(a, 0, 2)
        .dim(0, 0, 1)
        .dim(1, 1, 1)
        .dim(1, 2, 1)
        .dim(2, 3, 1)
        .action(0, 0, one(&field))
        .action(1, 1, one(&field))
        .action(2, 1, one(&field))
        .build()
        .expect("valid module")
}

/// Over the quadratic dual of [`commuting_square`]: `2* -> 4* -> 6*` from
/// degree 1 joined by `5* -> 6*` from degree 2.
pub fn square_dual_module<F: Field>(field: F) -> GradedModule<F> {
    let g = Arc::new(commuting_square(field.clone()).quadratic_dual());
    ModuleBuilder::new(g, 1, 3)
        .dim(1, 1, 1)
        .dim(2, 3, 1)
        .dim(2, 4, 1)
        .dim(3, 5, 1)
        .action(1, 1, one(&field))
        .action(4, 2, one(&field))
        .action(5, 2, one(&field))
        .build()
        .expect("valid module")
}

/// A random quadratic algebra with `1..=max_vertices` vertices and
/// `0..=max_arrows` arrows. For every pair of endpoints a random set of
/// small-integer combinations of the length-2 paths between them is kept
/// up to linear independence.
pub fn random_algebra<F: Field, R: Rng>(
    field: F,
    rng: &mut R,
    max_vertices: usize,
    max_arrows: usize,
) -> QuadraticAlgebra<F> {
    let nv = rng.gen_range(1..=max_vertices);
    let na = rng.gen_range(0..=max_arrows);
    let vertices: Vec<String> = (1..=nv).map(|v| v.to_string()).collect();
    let arrows: Vec<(String, String, String)> = (0..na)
        .map(|k| {
            let s = rng.gen_range(1..=nv).to_string();
            let t = rng.gen_range(1..=nv).to_string();
            (format!("a{k}"), s, t)
        })
        .collect();
    let q = Quiver::new(vertices, arrows).expect("distinct names");
    let paths = q.paths(2, None, None);
    let mut cols = Vec::new();
    for s in 0..nv {
        for t in 0..nv {
            let idx: Vec<usize> = (0..paths.len())
                .filter(|&i| paths[i].source == s && paths[i].target == t)
                .collect();
            if idx.is_empty() {
                continue;
            }
            for _ in 0..rng.gen_range(0..=idx.len()) {
                let mut col = vec![field.zero(); paths.len()];
                for &i in &idx {
                    col[i] = field.from_i64(rng.gen_range(-2..=2));
                }
                cols.push(col);
            }
        }
    }
    let m = Matrix::from_columns(&field, paths.len(), &cols).column_space();
    QuadraticAlgebra::new(field, q, m).expect("independent single-endpoint relations")
}

/// Over the quadratic dual of [`arrow_loop`]: `S_{1*}` at index 0 and
/// `P_{1*}⟨t⟩` at index `-t`.
pub fn two_step_homology<F: Field>(field: F, t: i64) -> BigradedHomology<F> {
    let g = Arc::new(arrow_loop(field).quadratic_dual());
    let s = GradedModule::simple(Arc::clone(&g), 0, 0).expect("vertex exists");
    let p = GradedModule::projective(Arc::clone(&g), 0, t, t + 1).expect("vertex exists");
    BigradedHomology::new(g, [(0, s), (-t, p)]).expect("finite parts")
}

/// Over the quadratic dual of [`arrow_loop`]: `S_{1*}`, `P_{1*}⟨1⟩` and
/// `P_{1*}⟨2⟩` at indices 0, -1, -2 (the homology of `GD` of
/// [`three_top_strand`]).
pub fn staircase_homology<F: Field>(field: F) -> BigradedHomology<F> {
    let g = Arc::new(arrow_loop(field).quadratic_dual());
    let s = GradedModule::simple(Arc::clone(&g), 0, 0).expect("vertex exists");
    let p = |t| GradedModule::projective(Arc::clone(&g), 0, t, t + 1).expect("vertex exists");
    BigradedHomology::new(Arc::clone(&g), [(0, s), (-1, p(1)), (-2, p(2))]).expect("finite parts")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rationals;

    #[test]
    fn sample_modules_are_valid() {
        let f = Rationals;
        for m in [
            three_top_strand(f, 6),
            two_top_strand(f, 3, 7),
            branch_module(f),
            square_module(f),
            square_dual_module(f),
        ] {
            assert!(m.validate().is_empty(), "{m:?}");
        }
        let a = Arc::new(branched_line(f));
        assert!(uniserial_three(a).validate().is_empty());
    }

    #[test]
    fn random_algebras_are_well_formed() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_algebra(Rationals, &mut rng, 4, 6);
            assert!(a.vertex_count() <= 4 && a.quiver().arrow_count() <= 6);
            assert!(a.relations().cols() <= a.quadratic_paths().len());
        }
    }

    #[test]
    fn top_degrees_of_samples() {
        let f = Rationals;
        let tops: Vec<_> = three_top_strand(f, 6).top_degrees().into_iter().collect();
        assert_eq!(tops, [((0, 0), 1), ((1, 0), 1), ((2, 0), 1)]);
        let tops: Vec<_> = branch_module(f).top_degrees().into_iter().collect();
        assert_eq!(tops, [((0, 0), 1), ((1, 4), 1)]);
        assert_eq!(square_dual_module(f).generation_degrees(), [1, 2]);
    }

    #[test]
    fn broken_commutativity_is_reported() {
        // the square module extended by S_6 with eps = 1 and zeta delta = 0
        // violates eps gamma - zeta delta
        let f = Rationals;
        let a = Arc::new(commuting_square(f));
        let m = ModuleBuilder::new(a, 0, 3)
            .dim(0, 0, 1)
            .dim(1, 2, 1)
            .dim(2, 3, 1)
            .dim(2, 4, 1)
            .dim(3, 5, 1)
            .action(0, 0, one(&f))
            .action(2, 1, one(&f))
            .action(3, 1, one(&f))
            .action(4, 2, one(&f))
            .action(5, 2, Matrix::from_i64_rows(&f, &[&[1]]))
            .build()
            .unwrap();
        assert!(m.validate().is_empty());
        let broken = ModuleBuilder::new(Arc::clone(m.algebra()), 0, 3)
            .dim(0, 0, 1)
            .dim(1, 2, 1)
            .dim(2, 3, 1)
            .dim(2, 4, 1)
            .dim(3, 5, 1)
            .action(0, 0, one(&f))
            .action(2, 1, one(&f))
            .action(3, 1, Matrix::from_i64_rows(&f, &[&[-1]]))
            .action(4, 2, one(&f))
            .action(5, 2, one(&f))
            .build()
            .unwrap();
        let v = broken.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(
            v[0],
            crate::grmod::Violation::Relation {
                relation: "eps gamma - zeta delta".into(),
                degree: 1
            }
        );
    }
}
