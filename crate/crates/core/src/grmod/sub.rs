use std::sync::Arc;

use crate::exactlin::{Field, LinearSolver, Matrix};

use super::{GradedModule, ModuleMap};

/// A subspace of every `(degree, vertex)` block of a module, given by
/// independent basis columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Family<F: Field> {
    pub lo: i64,
    pub hi: i64,
    /// `blocks[d - lo][v]`
    pub blocks: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> Family<F> {
    pub fn zero(m: &GradedModule<F>) -> Self {
        let (lo, hi) = m.window();
        let blocks = (lo..=hi)
            .map(|d| {
                (0..m.vertex_count())
                    .map(|v| Matrix::zeros(m.field(), m.dim(d, v), 0))
                    .collect()
            })
            .collect();
        Family { lo, hi, blocks }
    }

    pub fn full(m: &GradedModule<F>) -> Self {
        let (lo, hi) = m.window();
        let blocks = (lo..=hi)
            .map(|d| {
                (0..m.vertex_count())
                    .map(|v| Matrix::identity(m.field(), m.dim(d, v)))
                    .collect()
            })
            .collect();
        Family { lo, hi, blocks }
    }

    /// The whole `(d, v)` block for `d` in `degrees`, zero elsewhere.
    pub fn degrees(m: &GradedModule<F>, degrees: &[i64]) -> Self {
        let mut fam = Self::zero(m);
        for &d in degrees {
            if d >= fam.lo && d <= fam.hi {
                for v in 0..m.vertex_count() {
                    *fam.block_mut(d, v) = Matrix::identity(m.field(), m.dim(d, v));
                }
            }
        }
        fam
    }

    pub fn block(&self, d: i64, v: usize) -> &Matrix<F> {
        &self.blocks[(d - self.lo) as usize][v]
    }

    pub fn block_mut(&mut self, d: i64, v: usize) -> &mut Matrix<F> {
        &mut self.blocks[(d - self.lo) as usize][v]
    }

    pub fn dim(&self, d: i64, v: usize) -> usize {
        if d < self.lo || d > self.hi {
            0
        } else {
            self.block(d, v).cols()
        }
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.iter().flatten().map(Matrix::cols).sum()
    }

    /// Blockwise sum of subspaces.
    pub fn sum(&self, other: &Self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.hstack(y).column_space()).collect())
            .collect();
        Family {
            lo: self.lo,
            hi: self.hi,
            blocks,
        }
    }

    /// `J · self`: images of the arrow actions applied to the family.
    pub fn arrow_image(&self, m: &GradedModule<F>) -> Self {
        let q = m.algebra().quiver();
        let mut out = Family::zero(m);
        for d in self.lo + 1..=self.hi {
            for t in 0..m.vertex_count() {
                let mut img = Matrix::zeros(m.field(), m.dim(d, t), 0);
                for a in 0..q.arrow_count() {
                    if q.arrow(a).target == t {
                        img = img.hstack(&m.act(a, d - 1).mul(self.block(d - 1, q.arrow(a).source)));
                    }
                }
                *out.block_mut(d, t) = img.column_space();
            }
        }
        out
    }
}

/// Smallest submodule containing `seeds`.
pub fn generated_family<F: Field>(m: &GradedModule<F>, seeds: &Family<F>) -> Family<F> {
    let q = m.algebra().quiver();
    let mut out = Family::zero(m);
    for d in seeds.lo..=seeds.hi {
        for t in 0..m.vertex_count() {
            let mut span = seeds.block(d, t).clone();
            if d > seeds.lo {
                for a in 0..q.arrow_count() {
                    if q.arrow(a).target == t {
                        span = span.hstack(&m.act(a, d - 1).mul(out.block(d - 1, q.arrow(a).source)));
                    }
                }
            }
            *out.block_mut(d, t) = span.column_space();
        }
    }
    out
}

/// Blockwise kernel of a module map.
pub fn kernel_family<F: Field>(map: &ModuleMap<F>) -> Family<F> {
    Family {
        lo: map.lo,
        hi: map.hi,
        blocks: map
            .blocks
            .iter()
            .map(|row| row.iter().map(Matrix::kernel_basis).collect())
            .collect(),
    }
}

/// Blockwise image of a module map.
pub fn image_family<F: Field>(map: &ModuleMap<F>) -> Family<F> {
    Family {
        lo: map.lo,
        hi: map.hi,
        blocks: map
            .blocks
            .iter()
            .map(|row| row.iter().map(Matrix::column_space).collect())
            .collect(),
    }
}

/// `upper / lower` for submodule families `lower ⊆ upper` of an ambient
/// module, with the induced action and coordinate maps.
#[derive(Clone, Debug)]
pub struct Subquotient<F: Field> {
    pub module: GradedModule<F>,
    lo: i64,
    /// Ambient representatives of the quotient basis, `reps[d - lo][v]`.
    reps: Vec<Vec<Matrix<F>>>,
    /// Solver for `[lower | reps]` and the number of lower columns.
    solvers: Vec<Vec<(LinearSolver<F>, usize)>>,
}

impl<F: Field> Subquotient<F> {
    pub fn reps(&self, d: i64, v: usize) -> &Matrix<F> {
        &self.reps[(d - self.lo) as usize][v]
    }

    /// Quotient coordinates of an ambient vector lying in `upper`; `None`
    /// if it does not.
    pub fn coords(&self, d: i64, v: usize, x: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let (solver, nl) = &self.solvers[(d - self.lo) as usize][v];
        let c = solver.solve_vec(x)?;
        Some(c[*nl..].to_vec())
    }

    /// The blockwise matrix of quotient coordinates of the columns of `x`.
    pub fn coords_matrix(&self, d: i64, v: usize, x: &Matrix<F>) -> Option<Matrix<F>> {
        let n = self.reps(d, v).cols();
        let mut cols = Vec::with_capacity(x.cols());
        for j in 0..x.cols() {
            cols.push(self.coords(d, v, &x.column(j))?);
        }
        Some(Matrix::from_columns(x.field(), n, &cols))
    }
}

pub fn subquotient<F: Field>(ambient: &GradedModule<F>, upper: &Family<F>, lower: &Family<F>) -> Subquotient<F> {
    let (lo, hi) = ambient.window();
    let nv = ambient.vertex_count();
    let mut reps = Vec::new();
    let mut solvers = Vec::new();
    let mut dims = Vec::new();
    for d in lo..=hi {
        let mut rrow = Vec::with_capacity(nv);
        let mut srow = Vec::with_capacity(nv);
        let mut drow = Vec::with_capacity(nv);
        for v in 0..nv {
            let low = lower.block(d, v).column_space();
            let nl = low.cols();
            let stacked = low.hstack(upper.block(d, v));
            let piv = stacked.rref().pivots;
            let chosen: Vec<usize> = piv.into_iter().filter(|&p| p >= nl).collect();
            let rep = stacked.select_columns(&chosen);
            drow.push(rep.cols());
            srow.push((LinearSolver::new(&low.hstack(&rep)), nl));
            rrow.push(rep);
        }
        reps.push(rrow);
        solvers.push(srow);
        dims.push(drow);
    }
    let q = ambient.algebra().quiver();
    let mut sq = Subquotient {
        module: GradedModule::zero(Arc::clone(ambient.algebra()), lo, hi),
        lo,
        reps,
        solvers,
    };
    let mut action = Vec::with_capacity(q.arrow_count());
    for a in 0..q.arrow_count() {
        let (s, t) = (q.arrow(a).source, q.arrow(a).target);
        let mut per = Vec::new();
        for d in lo..hi {
            let img = ambient.act(a, d).mul(sq.reps(d, s));
            let m = sq
                .coords_matrix(d + 1, t, &img)
                .unwrap_or_else(|| panic!("upper family is not closed under {} at degree {d}", q.arrow(a).name));
            per.push(m);
        }
        action.push(per);
    }
    let mut module = GradedModule::from_parts(Arc::clone(ambient.algebra()), lo, hi, dims, action);
    module.set_truncation(ambient.truncated_above(), ambient.truncated_below());
    sq.module = module;
    sq
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rationals;
    use crate::samples;

    #[test]
    fn quotient_by_radical_is_top() {
        let a = Arc::new(samples::arrow_loop(Rationals));
        let p = GradedModule::projective(Arc::clone(&a), 0, 0, 4).unwrap();
        let full = Family::full(&p);
        let rad = full.arrow_image(&p);
        let top = subquotient(&p, &full, &rad);
        assert_eq!(top.module.dims_string(), "(0,1):1");
        let radm = subquotient(&p, &rad, &Family::zero(&p));
        assert_eq!(radm.module.generation_degrees(), [1]);
        assert!(radm.module.validate().is_empty());
    }

    #[test]
    fn generated_family_closes_under_arrows() {
        let m = samples::three_top_strand(Rationals, 5);
        let seeds = Family::degrees(&m, &[1]);
        let k = generated_family(&m, &seeds);
        // S_1 and S_2 in degree 1 generate the strand upward
        assert_eq!(k.dim(0, 0), 0);
        assert_eq!(k.dim(1, 0), 1);
        assert_eq!(k.dim(1, 1), 1);
        assert_eq!(k.dim(2, 0), 0);
        assert_eq!(k.dim(5, 1), 1);
    }
}
