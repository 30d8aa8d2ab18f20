use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::exactlin::{Field, LinearSolver, Matrix};
use crate::grmod::{hom_space, ModuleMap};

use super::homology::BigradedHomology;
use super::structure::{
    default_verify_arity, derive_morphism_slots, derive_slots, instances, morphism_residual, stasheff_check,
    AInfMorphismParams, AInfStructure, ProductSlot,
};
use super::AInfError;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit<E> {
    /// Lexicographically least coefficient vector in the orbit.
    pub representative: Vec<E>,
    pub size: usize,
}

#[derive(Clone, Debug)]
pub struct OrbitReport<F: Field> {
    pub slots: Vec<ProductSlot>,
    pub morphism_slots: Vec<ProductSlot>,
    pub structures: u64,
    pub valid: usize,
    pub f1_choices: usize,
    pub morphisms: u64,
    pub n_verify: usize,
    /// Orbits sorted by representative.
    pub orbits: Vec<Orbit<F::Elem>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn digits(mut idx: u64, base: u64, len: usize) -> Vec<u64> {
    // most significant first, so index order is lexicographic order
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % base;
        idx /= base;
    }
    out
}

/// Invertible degree-0 module endomorphisms of `h`, one factor per index.
fn invertible_f1<F: Field>(
    h: &BigradedHomology<F>,
    elems: &[F::Elem],
    budget: u64,
) -> Result<Vec<Matrix<F>>, AInfError> {
    let p = elems.len() as u64;
    let mut per_index: Vec<(i64, Vec<ModuleMap<F>>)> = Vec::new();
    for (&i, m) in h.parts() {
        let basis = hom_space(m, m);
        let count =
            p.checked_pow(basis.len() as u32)
                .filter(|&c| c <= budget)
                .ok_or(AInfError::SearchSpaceTooLarge {
                    structures: 0,
                    morphisms: u64::MAX,
                    budget,
                })?;
        let mut inv = Vec::new();
        for idx in 0..count {
            let coeffs: Vec<F::Elem> = digits(idx, p, basis.len())
                .into_iter()
                .map(|d| elems[d as usize].clone())
                .collect();
            let map = ModuleMap::combination(&basis, &coeffs);
            if map.is_invertible() {
                inv.push(map);
            }
        }
        per_index.push((i, inv));
    }
    let mut combos: Vec<BTreeMap<i64, ModuleMap<F>>> = vec![BTreeMap::new()];
    for (i, maps) in per_index {
        let mut next = Vec::with_capacity(combos.len() * maps.len());
        for c in &combos {
            for m in &maps {
                let mut c2 = c.clone();
                c2.insert(i, m.clone());
                next.push(c2);
            }
        }
        combos = next;
    }
    Ok(combos.iter().map(|c| h.block_diagonal(c)).collect())
}

/// Classifies all A∞-structures with `m_1 = 0` on `h` over a finite field
/// up to A∞-isomorphism.
///
/// Every Stasheff-valid coefficient vector is enumerated. For each choice
/// of `f_1` and higher `f_n`, the morphism identities are affine in the
/// source and target coefficients jointly, so the targets reachable from a
/// source are the valid solutions of one linear system. Orbits are the
/// classes of the resulting union-find.
pub fn classify_orbits<F: Field>(
    h: BigradedHomology<F>,
    n_max: usize,
    budget: u64,
) -> Result<OrbitReport<F>, AInfError> {
    let f = h.field().clone();
    let elems = f.elements().ok_or(AInfError::InfiniteField)?;
    let p = elems.len() as u64;
    let h = Arc::new(h);
    let n_verify = default_verify_arity(&h);
    let slots = Arc::new(derive_slots(&h, n_max));
    let mslots = Arc::new(derive_morphism_slots(&h, n_max));
    let too_large = |structures: u64, morphisms: u64| AInfError::SearchSpaceTooLarge {
        structures,
        morphisms,
        budget,
    };
    let structures = p
        .checked_pow(slots.len() as u32)
        .ok_or_else(|| too_large(u64::MAX, 0))?;
    if structures > budget {
        return Err(too_large(structures, 0));
    }
    let higher = p
        .checked_pow(mslots.len() as u32)
        .ok_or_else(|| too_large(structures, u64::MAX))?;
    let f1s = invertible_f1(&h, &elems, budget)?;
    let morphisms = higher.saturating_mul(f1s.len() as u64);
    let evaluations = morphisms
        .saturating_mul(1 + 2 * slots.len() as u64)
        .saturating_add(structures);
    if evaluations > budget {
        return Err(too_large(structures, morphisms));
    }

    let to_elems = |d: &[u64]| -> Vec<F::Elem> { d.iter().map(|&i| elems[i as usize].clone()).collect() };
    let mut valid: Vec<Vec<u64>> = Vec::new();
    for idx in 0..structures {
        let d = digits(idx, p, slots.len());
        let s = AInfStructure::new(Arc::clone(&h), Arc::clone(&slots), to_elems(&d));
        if stasheff_check(&s, n_verify).valid() {
            valid.push(d);
        }
    }
    let index: HashMap<Vec<u64>, usize> = valid.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
    let mut uf = UnionFind::new(valid.len());
    let insts = instances(&h, 2, n_verify);
    let ns = slots.len();
    let zero = AInfStructure::formal(Arc::clone(&h), Arc::clone(&slots));
    let unit = |k: usize| {
        let mut c = vec![f.zero(); ns];
        c[k] = f.one();
        AInfStructure::new(Arc::clone(&h), Arc::clone(&slots), c)
    };
    let units: Vec<AInfStructure<F>> = (0..ns).map(unit).collect();
    let residual = |src: &AInfStructure<F>, dst: &AInfStructure<F>, mor: &AInfMorphismParams<F>| -> Vec<F::Elem> {
        insts.iter().flat_map(|i| morphism_residual(src, dst, mor, i)).collect()
    };
    let elem_index: HashMap<F::Elem, u64> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i as u64)).collect();
    for f1 in &f1s {
        for hidx in 0..higher {
            let mor = AInfMorphismParams::new(
                f1.clone(),
                Arc::clone(&mslots),
                to_elems(&digits(hidx, p, mslots.len())),
            );
            let c0 = residual(&zero, &zero, &mor);
            let diff = |v: Vec<F::Elem>| -> Vec<F::Elem> { v.iter().zip(&c0).map(|(a, b)| f.sub(a, b)).collect() };
            let b_cols: Vec<Vec<F::Elem>> = units.iter().map(|u| diff(residual(u, &zero, &mor))).collect();
            let a_cols: Vec<Vec<F::Elem>> = units.iter().map(|u| diff(residual(&zero, u, &mor))).collect();
            let rows = c0.len();
            let a = Matrix::from_columns(&f, rows, &a_cols);
            let b = Matrix::from_columns(&f, rows, &b_cols);
            let solver = LinearSolver::new(&a);
            let kernel = solver.kernel();
            let kdim = kernel.cols();
            for (si, s) in valid.iter().enumerate() {
                let bs = b.mul_vec(&to_elems(s));
                let rhs: Vec<F::Elem> = c0.iter().zip(&bs).map(|(x, y)| f.neg(&f.add(x, y))).collect();
                let Some(part) = solver.solve_vec(&rhs) else { continue };
                for kidx in 0..p.pow(kdim as u32) {
                    let kc = digits(kidx, p, kdim);
                    let mut t = part.clone();
                    for (j, &c) in kc.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        let col = kernel.column(j);
                        for (ti, cj) in t.iter_mut().zip(&col) {
                            *ti = f.add(ti, &f.mul(&elems[c as usize], cj));
                        }
                    }
                    let key: Vec<u64> = t.iter().map(|e| elem_index[e]).collect();
                    if let Some(&ti) = index.get(&key) {
                        uf.union(si, ti);
                    }
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..valid.len() {
        let r = uf.find(i);
        classes.entry(r).or_default().push(i);
    }
    let mut orbits: Vec<Orbit<F::Elem>> = classes
        .values()
        .map(|members| {
            let rep = members.iter().map(|&i| &valid[i]).min().expect("nonempty class");
            Orbit {
                representative: to_elems(rep),
                size: members.len(),
            }
        })
        .collect();
    orbits.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(OrbitReport {
        slots: slots.as_ref().clone(),
        morphism_slots: mslots.as_ref().clone(),
        structures,
        valid: valid.len(),
        f1_choices: f1s.len(),
        morphisms,
        n_verify,
        orbits,
    })
}
