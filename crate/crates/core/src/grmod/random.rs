use std::sync::Arc;

use rand::Rng;

use crate::exactlin::{Field, Matrix};
use crate::quiver::QuadraticAlgebra;

use super::GradedModule;

/// A random module on `[lo, hi]` satisfying the relations: dimensions are
/// drawn from `0..=max_dim`, and the actions leaving each degree are a
/// random element of the solution space of the relation constraints
/// against the previous degree.
pub fn random_module<F: Field, R: Rng>(
    algebra: Arc<QuadraticAlgebra<F>>,
    rng: &mut R,
    lo: i64,
    hi: i64,
    max_dim: usize,
) -> GradedModule<F> {
    let f = algebra.field().clone();
    let nv = algebra.vertex_count();
    let q = algebra.quiver().clone();
    let na = q.arrow_count();
    let dims: Vec<Vec<usize>> = (lo..=hi)
        .map(|_| (0..nv).map(|_| rng.gen_range(0..=max_dim)).collect())
        .collect();
    let dim = |d: i64, v: usize| -> usize {
        if d < lo || d > hi {
            0
        } else {
            dims[(d - lo) as usize][v]
        }
    };
    let terms = algebra.relation_terms();
    let mut action: Vec<Vec<Matrix<F>>> = vec![Vec::new(); na];
    for d in lo..hi {
        // unknowns: entries of act(a, d) for every arrow, row-major
        let mut offset = vec![0usize; na];
        let mut total = 0;
        for a in 0..na {
            offset[a] = total;
            total += dim(d + 1, q.arrow(a).target) * dim(d, q.arrow(a).source);
        }
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        if d > lo {
            for rel in &terms {
                let (s, t) = (rel[0].1.source, rel[0].1.target);
                // Σ c · act(second, d) · act(first, d-1) = 0
                for r in 0..dim(d + 1, t) {
                    for c in 0..dim(d - 1, s) {
                        let mut row = vec![f.zero(); total];
                        for (coef, p) in rel {
                            let (second, first) = (p.arrows[0], p.arrows[1]);
                            let mid = q.arrow(first).target;
                            let prev = &action[first][(d - 1 - lo) as usize];
                            for k in 0..dim(d, mid) {
                                let i = offset[second] + r * dim(d, mid) + k;
                                let v = f.mul(coef, prev.get(k, c));
                                row[i] = f.add(&row[i], &v);
                            }
                        }
                        rows.push(row);
                    }
                }
            }
        }
        let system = Matrix::from_vec(&f, rows.len(), total, rows.into_iter().flatten().collect());
        let kernel = system.kernel_basis();
        let mut x = vec![f.zero(); total];
        for j in 0..kernel.cols() {
            let c = f.from_i64(rng.gen_range(-2..=2));
            if f.is_zero(&c) {
                continue;
            }
            for (i, xi) in x.iter_mut().enumerate() {
                *xi = f.add(xi, &f.mul(&c, kernel.get(i, j)));
            }
        }
        for a in 0..na {
            let (r, c) = (dim(d + 1, q.arrow(a).target), dim(d, q.arrow(a).source));
            let data = x[offset[a]..offset[a] + r * c].to_vec();
            action[a].push(Matrix::from_vec(&f, r, c, data));
        }
    }
    GradedModule::from_parts(algebra, lo, hi, dims, action)
}
