use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::exactlin::{Field, Matrix};
use crate::grmod::{GradedModule, ModuleMap};
use crate::quiver::{AlgebraElement, QuadraticAlgebra};

use super::AInfError;

/// A basis vector of `N^i_d` at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisVector {
    pub coh: i64,
    pub degree: i64,
    pub vertex: usize,
    pub index: usize,
}

/// `N = ⊕ N^i_d` with each `N^i` a finite dimensional graded `Γ`-module;
/// the module actions are `m_2`.
///
/// The global basis is ordered by cohomological index descending, then
/// internal degree, vertex and index within the block. Vectors of `N` are
/// dense coordinate vectors in this basis.
#[derive(Clone, Debug)]
pub struct BigradedHomology<F: Field> {
    algebra: Arc<QuadraticAlgebra<F>>,
    parts: BTreeMap<i64, GradedModule<F>>,
    basis: Vec<BasisVector>,
    offsets: HashMap<(i64, i64, usize), usize>,
    /// `action[(len, path index)][k]`: sparse image of basis vector `k`.
    action: HashMap<(usize, usize), Vec<Vec<(usize, F::Elem)>>>,
    min_degree: i64,
    max_degree: i64,
}

impl<F: Field> BigradedHomology<F> {
    pub fn new(
        algebra: Arc<QuadraticAlgebra<F>>,
        parts: impl IntoIterator<Item = (i64, GradedModule<F>)>,
    ) -> Result<Self, AInfError> {
        let mut map = BTreeMap::new();
        for (i, m) in parts {
            if **m.algebra() != *algebra {
                return Err(AInfError::AlgebraMismatch);
            }
            if m.truncated_above() || m.truncated_below() {
                return Err(AInfError::Truncated(i));
            }
            if map.insert(i, m).is_some() {
                return Err(AInfError::DuplicateIndex(i));
            }
        }
        let mut basis = Vec::new();
        let mut offsets = HashMap::new();
        for (&i, m) in map.iter().rev() {
            let (lo, hi) = m.window();
            for d in lo..=hi {
                for v in 0..m.vertex_count() {
                    let n = m.dim(d, v);
                    if n > 0 {
                        offsets.insert((i, d, v), basis.len());
                    }
                    basis.extend((0..n).map(|index| BasisVector {
                        coh: i,
                        degree: d,
                        vertex: v,
                        index,
                    }));
                }
            }
        }
        let min_degree = basis.iter().map(|b| b.degree).min().unwrap_or(0);
        let max_degree = basis.iter().map(|b| b.degree).max().unwrap_or(0);
        let mut h = BigradedHomology {
            algebra,
            parts: map,
            basis,
            offsets,
            action: HashMap::new(),
            min_degree,
            max_degree,
        };
        h.action = h.tabulate_action();
        Ok(h)
    }

    fn tabulate_action(&self) -> HashMap<(usize, usize), Vec<Vec<(usize, F::Elem)>>> {
        let f = self.field();
        let mut out = HashMap::new();
        for len in 1..=self.span() as usize {
            let comp = self.algebra.component(len);
            for idx in 0..comp.dim() {
                let p = comp.basis_path(idx);
                let images = self
                    .basis
                    .iter()
                    .map(|b| {
                        if p.source != b.vertex {
                            return Vec::new();
                        }
                        let m = &self.parts[&b.coh];
                        let d = b.degree + len as i64;
                        let Some(&start) = self.offsets.get(&(b.coh, d, p.target)) else {
                            return Vec::new();
                        };
                        let a = m.act_path(p, b.degree);
                        (0..a.rows())
                            .filter(|&r| !f.is_zero(a.get(r, b.index)))
                            .map(|r| (start + r, a.get(r, b.index).clone()))
                            .collect()
                    })
                    .collect();
                out.insert((len, idx), images);
            }
        }
        out
    }

    pub fn algebra(&self) -> &Arc<QuadraticAlgebra<F>> {
        &self.algebra
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn parts(&self) -> &BTreeMap<i64, GradedModule<F>> {
        &self.parts
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `v1, v2, ...` in basis order.
    pub fn name(&self, k: usize) -> String {
        format!("v{}", k + 1)
    }

    /// Difference between the highest and lowest internal degree present.
    pub fn span(&self) -> i64 {
        self.max_degree - self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.max_degree
    }

    /// Basis indices of the block `N^i_d` at vertex `v`.
    pub fn block(&self, coh: i64, degree: i64, vertex: usize) -> std::ops::Range<usize> {
        match self.offsets.get(&(coh, degree, vertex)) {
            Some(&start) => {
                let n = self.parts[&coh].dim(degree, vertex);
                start..start + n
            }
            None => 0..0,
        }
    }

    pub fn zero_vector(&self) -> Vec<F::Elem> {
        vec![self.field().zero(); self.dim()]
    }

    pub fn unit_vector(&self, k: usize) -> Vec<F::Elem> {
        let mut v = self.zero_vector();
        v[k] = self.field().one();
        v
    }

    /// `m_2(γ, x)` for a homogeneous `γ` of positive length.
    pub fn act(&self, gamma: &AlgebraElement<F>, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = self.zero_vector();
        for (idx, c) in gamma.coords.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let Some(images) = self.action.get(&(gamma.degree, idx)) else {
                continue;
            };
            for (k, xk) in x.iter().enumerate() {
                if f.is_zero(xk) {
                    continue;
                }
                let cx = f.mul(c, xk);
                for (t, a) in &images[k] {
                    out[*t] = f.add(&out[*t], &f.mul(&cx, a));
                }
            }
        }
        out
    }

    /// A family of module maps `N^i -> N^i`, one per index, as one matrix
    /// on the global basis.
    pub fn block_diagonal(&self, maps: &BTreeMap<i64, ModuleMap<F>>) -> Matrix<F> {
        let f = self.field();
        let mut out = Matrix::zeros(f, self.dim(), self.dim());
        for (&i, map) in maps {
            let m = &self.parts[&i];
            let (lo, hi) = m.window();
            for d in lo..=hi {
                for v in 0..m.vertex_count() {
                    let r = self.block(i, d, v);
                    if r.is_empty() {
                        continue;
                    }
                    let b = map.block(d, v);
                    out.set_block(r.start, r.start, b);
                }
            }
        }
        out
    }
}
