use std::sync::Arc;

use crate::exactlin::Field;
use crate::grmod::{image_family, kernel_family, subquotient, Family, GradedModule};
use crate::resolve::Verdict;

use super::complex::{ExpandedComplex, GradedComplex};
use super::KDualError;

#[derive(Clone, Debug)]
pub struct HomologyEntry<F: Field> {
    pub i: i64,
    pub module: GradedModule<F>,
    pub generation_degrees: Vec<i64>,
    /// Filled in by the classification.
    pub linear: Option<Verdict>,
}

/// `H^i` for every index of an expanded complex, each a module over `Γ`
/// exact on internal degrees `[lo, valid_top]`.
#[derive(Clone, Debug)]
pub struct HomologyReport<F: Field> {
    pub entries: Vec<HomologyEntry<F>>,
    pub lo: i64,
    pub valid_top: i64,
    /// Degreewise alternating sums of term and homology dimensions agree.
    pub euler_ok: bool,
}

impl<F: Field> HomologyReport<F> {
    pub fn get(&self, i: i64) -> Option<&HomologyEntry<F>> {
        self.entries.iter().find(|e| e.i == i)
    }

    /// `H^i`, the zero module when `i` is outside the computed range.
    pub fn module(&self, i: i64) -> Option<&GradedModule<F>> {
        self.get(i).map(|e| &e.module)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &HomologyEntry<F>> {
        self.entries.iter().filter(|e| !e.module.is_zero())
    }
}

/// Homology of `GD(M)` through internal degree `top`. Degree `l` of every
/// `H^i` only involves `M` in degrees `<= l`, so the whole window is exact.
pub fn homology<F: Field>(c: &GradedComplex<F>, top: i64) -> Result<HomologyReport<F>, KDualError> {
    let e = c.expand(top)?;
    debug_assert!(e.squares_to_zero());
    Ok(expanded_homology(&e))
}

pub fn expanded_homology<F: Field>(e: &ExpandedComplex<F>) -> HomologyReport<F> {
    let mut entries = Vec::new();
    for (k, term) in e.terms.iter().enumerate() {
        let upper = match e.diffs.get(k) {
            Some(d) => kernel_family(d),
            None => Family::full(term),
        };
        let lower = match k.checked_sub(1).and_then(|j| e.diffs.get(j)) {
            Some(d) => image_family(d),
            None => Family::zero(term),
        };
        let module = subquotient(term, &upper, &lower).module;
        entries.push(HomologyEntry {
            i: e.i_min + k as i64,
            generation_degrees: module.generation_degrees(),
            module,
            linear: None,
        });
    }
    let nv = e.terms.first().map_or(0, GradedModule::vertex_count);
    let sign = |i: i64| if i.rem_euclid(2) == 0 { 1i64 } else { -1 };
    let euler_ok = (e.lo..=e.top).all(|d| {
        (0..nv).all(|v| {
            let terms: i64 = (0..e.terms.len())
                .map(|k| sign(e.i_min + k as i64) * e.terms[k].dim(d, v) as i64)
                .sum();
            let hom: i64 = entries.iter().map(|h| sign(h.i) * h.module.dim(d, v) as i64).sum();
            terms == hom
        })
    });
    HomologyReport {
        entries,
        lo: e.lo,
        valid_top: e.top,
        euler_ok,
    }
}

/// `τ_{<= p}`: terms below `p` kept, `ker d^p` at `p`, zero above.
pub fn soft_truncate<F: Field>(e: &ExpandedComplex<F>, p: i64) -> ExpandedComplex<F> {
    if p >= e.i_max() {
        return e.clone();
    }
    if p < e.i_min {
        let g = Arc::clone(e.terms[0].algebra());
        return ExpandedComplex {
            i_min: e.i_min,
            lo: e.lo,
            top: e.top,
            terms: vec![GradedModule::zero(g, e.lo, e.top)],
            diffs: Vec::new(),
        };
    }
    let k = (p - e.i_min) as usize;
    let ambient = &e.terms[k];
    let kernel = subquotient(ambient, &kernel_family(&e.diffs[k]), &Family::zero(ambient));
    let mut terms = e.terms[..k].to_vec();
    let mut diffs = e.diffs[..k.saturating_sub(1)].to_vec();
    if k > 0 {
        // the incoming map lands in the kernel; rewrite it in kernel coordinates
        let d = &e.diffs[k - 1];
        let mut into = d.clone();
        for deg in e.lo..=e.top {
            for v in 0..ambient.vertex_count() {
                *into.block_mut(deg, v) = kernel
                    .coords_matrix(deg, v, d.block(deg, v))
                    .expect("image lies in the kernel");
            }
        }
        diffs.push(into);
    }
    terms.push(kernel.module);
    ExpandedComplex {
        i_min: e.i_min,
        lo: e.lo,
        top: e.top,
        terms,
        diffs,
    }
}
