use crate::exactlin::{Field, Matrix};

use super::GradedModule;

/// A degree-0 map of graded modules on a common window: one matrix per
/// `(degree, vertex)`, of shape `target dim × source dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap<F: Field> {
    pub lo: i64,
    pub hi: i64,
    /// `blocks[d - lo][v]`
    pub blocks: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> ModuleMap<F> {
    pub fn zero(source: &GradedModule<F>, target: &GradedModule<F>, lo: i64, hi: i64) -> Self {
        let f = source.field();
        let blocks = (lo..=hi)
            .map(|d| {
                (0..source.vertex_count())
                    .map(|v| Matrix::zeros(f, target.dim(d, v), source.dim(d, v)))
                    .collect()
            })
            .collect();
        ModuleMap { lo, hi, blocks }
    }

    pub fn identity(m: &GradedModule<F>) -> Self {
        let (lo, hi) = m.window();
        let blocks = (lo..=hi)
            .map(|d| {
                (0..m.vertex_count())
                    .map(|v| Matrix::identity(m.field(), m.dim(d, v)))
                    .collect()
            })
            .collect();
        ModuleMap { lo, hi, blocks }
    }

    pub fn block(&self, d: i64, v: usize) -> &Matrix<F> {
        &self.blocks[(d - self.lo) as usize][v]
    }

    pub fn block_mut(&mut self, d: i64, v: usize) -> &mut Matrix<F> {
        &mut self.blocks[(d - self.lo) as usize][v]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!((self.lo, self.hi), (other.lo, other.hi), "windows differ");
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.mul(y)).collect())
            .collect();
        ModuleMap {
            lo: self.lo,
            hi: self.hi,
            blocks,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(Matrix::is_zero)
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks.iter().flatten().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<Self> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for row in &self.blocks {
            let mut inv = Vec::with_capacity(row.len());
            for m in row {
                inv.push(m.inverse()?);
            }
            blocks.push(inv);
        }
        Some(ModuleMap {
            lo: self.lo,
            hi: self.hi,
            blocks,
        })
    }

    /// Linear combination `Σ c_k maps[k]`; `maps` must be nonempty.
    pub fn combination(maps: &[Self], coeffs: &[F::Elem]) -> Self {
        let mut out = maps[0].clone();
        for (row, first_row) in out.blocks.iter_mut().zip(&maps[0].blocks) {
            for (m, first) in row.iter_mut().zip(first_row) {
                *m = first.scale(&coeffs[0]);
            }
        }
        for (map, c) in maps.iter().zip(coeffs).skip(1) {
            for (row, mrow) in out.blocks.iter_mut().zip(&map.blocks) {
                for (m, x) in row.iter_mut().zip(mrow) {
                    *m = m.add(&x.scale(c));
                }
            }
        }
        out
    }

    /// Whether the map commutes with every arrow action of the two modules
    /// inside the window.
    pub fn commutes(&self, source: &GradedModule<F>, target: &GradedModule<F>) -> bool {
        let q = source.algebra().quiver();
        for a in 0..q.arrow_count() {
            let (s, t) = (q.arrow(a).source, q.arrow(a).target);
            for d in self.lo..self.hi {
                let lhs = self.block(d + 1, t).mul(&source.act(a, d));
                let rhs = target.act(a, d).mul(self.block(d, s));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}
