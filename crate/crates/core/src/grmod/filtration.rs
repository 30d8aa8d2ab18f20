use std::sync::Arc;

use crate::exactlin::{Field, Matrix};

use super::sub::{generated_family, subquotient, Family, Subquotient};
use super::{GrModError, GradedModule};

/// One step of the generation-degree filtration: `K` is generated by the
/// lowest nonzero degree of the current quotient, `quotient` is what remains.
#[derive(Clone, Debug)]
pub struct FiltrationStep<F: Field> {
    pub degree: i64,
    pub k: GradedModule<F>,
    pub quotient: GradedModule<F>,
}

/// The filtration `M = M⁽⁰⁾ ⊇ …` with `K⁽ⁱ⁾ ⊆ M⁽ⁱ⁾` generated in degree `j_i`
/// and `M⁽ⁱ⁺¹⁾ = M⁽ⁱ⁾ / K⁽ⁱ⁾`.
#[derive(Clone, Debug)]
pub struct FiltrationReport<F: Field> {
    pub generation_degrees: Vec<i64>,
    pub steps: Vec<FiltrationStep<F>>,
}

impl<F: Field> FiltrationReport<F> {
    /// The index `i` with `j_i = n`.
    pub fn index_of(&self, n: i64) -> Option<usize> {
        self.generation_degrees.iter().position(|&j| j == n)
    }

    pub fn k(&self, i: usize) -> &GradedModule<F> {
        &self.steps[i].k
    }
}

/// The submodule generated by `M_j` and the quotient by it.
pub fn submodule_generated<F: Field>(
    m: &GradedModule<F>,
    j: i64,
) -> Result<(GradedModule<F>, GradedModule<F>), GrModError> {
    if !m.generation_degrees().contains(&j) {
        return Err(GrModError::NotGenerationDegree(j));
    }
    let k = generated_family(m, &Family::degrees(m, &[j]));
    let sub = subquotient(m, &k, &Family::zero(m)).module;
    let quot = subquotient(m, &Family::full(m), &k).module;
    Ok((sub, quot))
}

/// `g̃r(M) = ⊕ K⁽ⁱ⁾`, with the filtration that produced it.
pub fn adjusted_assoc_graded<F: Field>(m: &GradedModule<F>) -> (GradedModule<F>, FiltrationReport<F>) {
    let mut steps = Vec::new();
    let mut degrees = Vec::new();
    let mut current = m.clone();
    while let Some(&j) = current.generation_degrees().first() {
        let (k, quotient) = submodule_generated(&current, j).expect("lowest generation degree");
        degrees.push(j);
        steps.push(FiltrationStep {
            degree: j,
            k,
            quotient: quotient.clone(),
        });
        current = quotient;
    }
    let gr = if steps.is_empty() {
        let (lo, hi) = m.window();
        let mut z = GradedModule::zero(Arc::clone(m.algebra()), lo, hi);
        z.set_truncation(m.truncated_above(), m.truncated_below());
        z
    } else {
        let ks: Vec<GradedModule<F>> = steps.iter().map(|s| s.k.clone()).collect();
        GradedModule::direct_sum(&ks).expect("same algebra")
    };
    (
        gr,
        FiltrationReport {
            generation_degrees: degrees,
            steps,
        },
    )
}

/// `gr(M) = ⊕ JⁱM / Jⁱ⁺¹M`, graded by radical layer.
///
/// Layer `i` only involves internal degrees up to `i + (top generation
/// degree)`, so for a module truncated at `hi` the result is kept on the
/// layers `0 ..= hi - top` and marked truncated.
pub fn assoc_graded<F: Field>(m: &GradedModule<F>) -> GradedModule<F> {
    let algebra = Arc::clone(m.algebra());
    let f = m.field().clone();
    let nv = m.vertex_count();
    let (lo, hi) = m.window();
    let mut layers: Vec<Family<F>> = vec![Family::full(m)];
    while layers.last().expect("nonempty").total_dim() > 0 {
        let next = layers.last().expect("nonempty").arrow_image(m);
        layers.push(next);
    }
    // layers[n] is zero; subquotients 0..n-1 are the radical layers
    let n = layers.len() - 1;
    if n == 0 {
        let mut z = GradedModule::zero(algebra, 0, 0);
        z.set_truncation(m.truncated_above(), false);
        return z;
    }
    let sqs: Vec<Subquotient<F>> = (0..n).map(|i| subquotient(m, &layers[i], &layers[i + 1])).collect();
    // offsets[i][d - lo][v] inside the (i, v) block of gr
    let mut dims = vec![vec![0usize; nv]; n];
    let mut offsets = vec![vec![vec![0usize; nv]; (hi - lo + 1) as usize]; n];
    for i in 0..n {
        for d in lo..=hi {
            for v in 0..nv {
                offsets[i][(d - lo) as usize][v] = dims[i][v];
                dims[i][v] += sqs[i].module.dim(d, v);
            }
        }
    }
    let q = algebra.quiver().clone();
    let mut action = Vec::with_capacity(q.arrow_count());
    for a in 0..q.arrow_count() {
        let (s, t) = (q.arrow(a).source, q.arrow(a).target);
        let mut per = Vec::with_capacity(n.saturating_sub(1));
        for i in 0..n - 1 {
            let mut block = Matrix::zeros(&f, dims[i + 1][t], dims[i][s]);
            for d in lo..hi {
                let reps = sqs[i].reps(d, s);
                if reps.cols() == 0 {
                    continue;
                }
                let img = m.act(a, d).mul(reps);
                let c = sqs[i + 1]
                    .coords_matrix(d + 1, t, &img)
                    .expect("radical layers are nested");
                block.set_block(
                    offsets[i + 1][(d + 1 - lo) as usize][t],
                    offsets[i][(d - lo) as usize][s],
                    &c,
                );
            }
            per.push(block);
        }
        action.push(per);
    }
    let gr = GradedModule::from_parts(algebra, 0, n as i64 - 1, dims, action);
    if m.truncated_above() {
        let top = m.generation_degrees().last().copied().unwrap_or(lo);
        let valid = (hi - top).max(0);
        let mut g = gr.with_window(0, valid.min(n as i64 - 1).max(0));
        g.set_truncation(true, false);
        g
    } else {
        gr
    }
}
