use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{Field, Matrix};

use super::{GradedModule, ModuleMap};

const RANDOM_TRIES: usize = 20;
const RANDOM_RANGE: i64 = 3;
const ENUMERATION_LIMIT: u64 = 1_000_000;
const SAMPLE_TRIES: usize = 2_000;
const SEED: u64 = 0x1505_0f1e;

/// Outcome of an isomorphism test. `exact` is false only when the search
/// fell back to sampling and found nothing, so a negative answer is then
/// probabilistic.
#[derive(Clone, Debug)]
pub struct IsoResult<F: Field> {
    pub isomorphic: bool,
    pub witness: Option<ModuleMap<F>>,
    pub exact: bool,
}

fn padded<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> (GradedModule<F>, GradedModule<F>) {
    let (ml, mh) = m.window();
    let (nl, nh) = n.window();
    let (lo, hi) = (ml.min(nl), mh.max(nh));
    (m.with_window(lo, hi), n.with_window(lo, hi))
}

/// Basis of the degree-0 homomorphisms `m -> n` on the union of the two
/// windows, from the linear commutation system.
pub fn hom_space<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Vec<ModuleMap<F>> {
    assert!(*m.algebra() == *n.algebra(), "modules over different algebras");
    let (m, n) = padded(m, n);
    let f = m.field().clone();
    let (lo, hi) = m.window();
    let nv = m.vertex_count();
    // unknown offsets per (d, v), row-major inside each block
    let mut offset = vec![vec![0usize; nv]; (hi - lo + 1) as usize];
    let mut total = 0;
    for d in lo..=hi {
        for v in 0..nv {
            offset[(d - lo) as usize][v] = total;
            total += n.dim(d, v) * m.dim(d, v);
        }
    }
    let var = |d: i64, v: usize, r: usize, c: usize| offset[(d - lo) as usize][v] + r * m.dim(d, v) + c;
    let q = m.algebra().quiver().clone();
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for a in 0..q.arrow_count() {
        let (s, t) = (q.arrow(a).source, q.arrow(a).target);
        for d in lo..hi {
            let ma = m.act(a, d);
            let na = n.act(a, d);
            // X_{d+1,t} · ma - na · X_{d,s} = 0, entry (r, c)
            for r in 0..n.dim(d + 1, t) {
                for c in 0..m.dim(d, s) {
                    let mut row = vec![f.zero(); total];
                    for k in 0..m.dim(d + 1, t) {
                        let i = var(d + 1, t, r, k);
                        row[i] = f.add(&row[i], ma.get(k, c));
                    }
                    for k in 0..n.dim(d, s) {
                        let i = var(d, s, k, c);
                        row[i] = f.sub(&row[i], na.get(r, k));
                    }
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::from_vec(&f, rows.len(), total, rows.into_iter().flatten().collect());
    let kernel = system.kernel_basis();
    (0..kernel.cols())
        .map(|j| {
            let col = kernel.column(j);
            let mut map = ModuleMap::zero(&m, &n, lo, hi);
            for d in lo..=hi {
                for v in 0..nv {
                    let (nr, nc) = (n.dim(d, v), m.dim(d, v));
                    let block = map.block_mut(d, v);
                    for r in 0..nr {
                        for c in 0..nc {
                            block.set(r, c, col[var(d, v, r, c)].clone());
                        }
                    }
                }
            }
            map
        })
        .collect()
}

/// Whether `m ≅ n` on the union of their windows, with a witness.
///
/// An isomorphism exists iff some element of the Hom space is invertible;
/// invertibility of a generic element is tested by random small integer
/// combinations, then by an exhaustive search that is exact whenever the
/// search grid is small enough.
pub fn is_isomorphic<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> IsoResult<F> {
    let no = |exact| IsoResult {
        isomorphic: false,
        witness: None,
        exact,
    };
    if *m.algebra() != *n.algebra() {
        return no(true);
    }
    let (mp, np) = padded(m, n);
    if mp.dimension_vector() != np.dimension_vector() {
        return no(true);
    }
    let basis = hom_space(&mp, &np);
    let found = |map: ModuleMap<F>| IsoResult {
        isomorphic: true,
        witness: Some(map),
        exact: true,
    };
    if mp.total_dim() == 0 {
        let (lo, hi) = mp.window();
        return found(ModuleMap::zero(&mp, &np, lo, hi));
    }
    if basis.is_empty() {
        return no(true);
    }
    let f = mp.field().clone();
    let h = basis.len();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let try_coeffs = |coeffs: &[F::Elem]| {
        let map = ModuleMap::combination(&basis, coeffs);
        map.is_invertible().then_some(map)
    };
    if let Some(p) = f.order() {
        let elems = f.elements().expect("finite field");
        if let Some(size) = p.checked_pow(h as u32).filter(|&s| s <= ENUMERATION_LIMIT) {
            for idx in 1..size {
                let coeffs = digits(idx, p, h)
                    .into_iter()
                    .map(|i| elems[i as usize].clone())
                    .collect::<Vec<_>>();
                if let Some(map) = try_coeffs(&coeffs) {
                    return found(map);
                }
            }
            return no(true);
        }
        for _ in 0..SAMPLE_TRIES {
            let coeffs: Vec<F::Elem> = (0..h).map(|_| elems[rng.gen_range(0..p) as usize].clone()).collect();
            if let Some(map) = try_coeffs(&coeffs) {
                return found(map);
            }
        }
        return no(false);
    }
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<F::Elem> = (0..h)
            .map(|_| f.from_i64(rng.gen_range(-RANDOM_RANGE..=RANDOM_RANGE)))
            .collect();
        if let Some(map) = try_coeffs(&coeffs) {
            return found(map);
        }
    }
    // det of a generic combination is a polynomial of degree total_dim in
    // the coefficients; a grid with more than that many values per
    // coordinate contains a non-root whenever the polynomial is nonzero.
    let degree = mp.total_dim() as u64;
    let k = degree / 2 + 1;
    let width = 2 * k + 1;
    if let Some(size) = width.checked_pow(h as u32).filter(|&s| s <= ENUMERATION_LIMIT) {
        for idx in 1..size {
            let coeffs: Vec<F::Elem> = digits(idx, width, h)
                .into_iter()
                .map(|i| f.from_i64(i as i64 - k as i64))
                .collect();
            if let Some(map) = try_coeffs(&coeffs) {
                return found(map);
            }
        }
        return no(true);
    }
    let range = 10 * degree as i64 + 10;
    for _ in 0..SAMPLE_TRIES {
        let coeffs: Vec<F::Elem> = (0..h).map(|_| f.from_i64(rng.gen_range(-range..=range))).collect();
        if let Some(map) = try_coeffs(&coeffs) {
            return found(map);
        }
    }
    no(false)
}

fn digits(mut idx: u64, base: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for slot in out.iter_mut() {
        *slot = idx % base;
        idx /= base;
    }
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactlin::{PrimeField, Rationals};
    use crate::samples;

    #[test]
    fn reflexive_with_identity_like_witness() {
        let m = samples::branch_module(Rationals);
        let r = is_isomorphic(&m, &m);
        assert!(r.isomorphic && r.exact);
        let w = r.witness.unwrap();
        assert!(w.is_invertible());
        assert!(w.commutes(&m, &m));
    }

    #[test]
    fn different_dimension_vectors_are_not_isomorphic() {
        let a = Arc::new(samples::arrow_loop(Rationals));
        let s = GradedModule::simple(Arc::clone(&a), 0, 0).unwrap();
        let t = GradedModule::simple(Arc::clone(&a), 1, 0).unwrap();
        assert!(!is_isomorphic(&s, &t).isomorphic);
    }

    #[test]
    fn same_dimensions_but_split_versus_nonsplit() {
        let a = Arc::new(samples::arrow_loop(Rationals));
        let p = GradedModule::projective(Arc::clone(&a), 0, 0, 1)
            .unwrap()
            .with_window(0, 1);
        let split = GradedModule::direct_sum(&[
            GradedModule::simple(Arc::clone(&a), 0, 0).unwrap(),
            GradedModule::simple(Arc::clone(&a), 1, 1).unwrap(),
        ])
        .unwrap();
        let r = is_isomorphic(&p, &split);
        assert!(!r.isomorphic && r.exact);
    }

    #[test]
    fn hom_between_simple_and_projective() {
        let a = Arc::new(samples::arrow_loop(Rationals));
        let p = GradedModule::projective(Arc::clone(&a), 0, 0, 3).unwrap();
        let s = GradedModule::simple(Arc::clone(&a), 0, 0).unwrap();
        assert_eq!(hom_space(&p, &s).len(), 1);
        assert_eq!(hom_space(&s, &p).len(), 0);
    }

    #[test]
    fn finite_field_enumeration() {
        let f = PrimeField::new(2).unwrap();
        let m = samples::square_module(f);
        let r = is_isomorphic(&m, &m);
        assert!(r.isomorphic && r.exact);
    }
}
