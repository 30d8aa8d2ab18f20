use std::sync::Arc;

use crate::exactlin::{Field, Matrix};
use crate::quiver::QuadraticAlgebra;

use super::{GrModError, GradedModule};

impl<F: Field> GradedModule<F> {
    /// `S_v⟨shift⟩`.
    pub fn simple(algebra: Arc<QuadraticAlgebra<F>>, vertex: usize, shift: i64) -> Result<Self, GrModError> {
        if vertex >= algebra.vertex_count() {
            return Err(GrModError::UnknownVertex(vertex.to_string()));
        }
        let mut dims = vec![vec![0; algebra.vertex_count()]];
        dims[0][vertex] = 1;
        let na = algebra.quiver().arrow_count();
        Ok(GradedModule::from_parts(
            algebra,
            shift,
            shift,
            dims,
            vec![Vec::new(); na],
        ))
    }

    /// `Λ e_v ⟨shift⟩` on the window `[shift, top]`.
    ///
    /// The `(d, w)` block has basis the normal-form paths `v -> w` of length
    /// `d - shift`; arrows act by left multiplication. The result is marked
    /// truncated when `Λ e_v` has a nonzero part beyond the window.
    pub fn projective(
        algebra: Arc<QuadraticAlgebra<F>>,
        vertex: usize,
        shift: i64,
        top: i64,
    ) -> Result<Self, GrModError> {
        if vertex >= algebra.vertex_count() {
            return Err(GrModError::UnknownVertex(vertex.to_string()));
        }
        if top < shift {
            return Err(GrModError::ProjectiveWindow { shift, top });
        }
        let f = algebra.field().clone();
        let nv = algebra.vertex_count();
        let q = algebra.quiver().clone();
        let len = (top - shift) as usize;
        let blocks: Vec<Vec<Vec<usize>>> = (0..=len)
            .map(|k| {
                let comp = algebra.component(k);
                (0..nv).map(|w| comp.basis_between(vertex, w)).collect()
            })
            .collect();
        let dims: Vec<Vec<usize>> = blocks.iter().map(|b| b.iter().map(Vec::len).collect()).collect();
        let mut action = Vec::with_capacity(q.arrow_count());
        for a in 0..q.arrow_count() {
            let (s, t) = (q.arrow(a).source, q.arrow(a).target);
            let arrow = algebra.arrow_element(a);
            let mut per_degree = Vec::with_capacity(len);
            for k in 0..len {
                let src = &blocks[k][s];
                let dst = &blocks[k + 1][t];
                let mut m = Matrix::zeros(&f, dst.len(), src.len());
                for (c, &i) in src.iter().enumerate() {
                    let prod = algebra.multiply(&arrow, &algebra.basis_element(k, i));
                    for (r, &j) in dst.iter().enumerate() {
                        m.set(r, c, prod.coords[j].clone());
                    }
                }
                per_degree.push(m);
            }
            action.push(per_degree);
        }
        let beyond = !algebra.component(len + 1).basis_from(vertex).is_empty();
        let mut m = GradedModule::from_parts(algebra, shift, top, dims, action);
        m.set_truncation(beyond, false);
        Ok(m)
    }

    /// `Λ_0 = ⊕_v S_v` in degree 0.
    pub fn semisimple_top(algebra: Arc<QuadraticAlgebra<F>>) -> Self {
        let parts: Vec<Self> = (0..algebra.vertex_count())
            .map(|v| Self::simple(Arc::clone(&algebra), v, 0).expect("vertex exists"))
            .collect();
        if parts.is_empty() {
            return GradedModule::zero(algebra, 0, 0);
        }
        Self::direct_sum(&parts).expect("same algebra")
    }
}
