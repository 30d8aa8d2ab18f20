use std::collections::BTreeSet;
use std::sync::Arc;

use koszul_core::ainfty::{
    classify_orbits, compose, derive_morphism_slots, derive_slots, morphism_check, slot_label, stasheff_check,
    AInfMorphismParams, AInfStructure, BigradedHomology, DEFAULT_BUDGET,
};
use koszul_core::exactlin::{Field, Matrix, PrimeField};
use koszul_core::samples::{staircase_homology, two_step_homology};

const N_MAX: usize = 8;

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn labels(h: &BigradedHomology<PrimeField>, n_max: usize) -> Vec<String> {
    derive_slots(h, n_max).iter().map(|s| slot_label(h, s, 'm')).collect()
}

/// `f_1 = diag(q1, q2, q2, q4, q4)` and `f_2(beta*, v3) = mu v5`.
fn transformation(h: &BigradedHomology<PrimeField>, q: [u64; 3], mu: u64) -> AInfMorphismParams<PrimeField> {
    let f = h.field();
    let diag = [q[0], q[1], q[1], q[2], q[2]];
    let mut f1 = Matrix::zeros(f, 5, 5);
    for (k, d) in diag.iter().enumerate() {
        f1.set(k, k, f.from_i64(*d as i64));
    }
    let mslots = Arc::new(derive_morphism_slots(h, N_MAX));
    AInfMorphismParams::new(f1, mslots, vec![f.from_i64(mu as i64)])
}

fn structure(h: &Arc<BigradedHomology<PrimeField>>, c: [i64; 3]) -> AInfStructure<PrimeField> {
    let f = h.field();
    AInfStructure::new(
        Arc::clone(h),
        Arc::new(derive_slots(h, N_MAX)),
        c.iter().map(|&x| f.from_i64(x)).collect(),
    )
}

#[test]
fn staircase_slots() {
    let h = staircase_homology(gf(3));
    assert_eq!(
        labels(&h, N_MAX),
        [
            "m3(beta*, alpha*, v1) -> v3",
            "m3(beta*, alpha*, v2) -> v5",
            "m4(beta*, beta*, alpha*, v1) -> v5",
        ]
    );
    let m: Vec<String> = derive_morphism_slots(&h, N_MAX)
        .iter()
        .map(|s| slot_label(&h, s, 'f'))
        .collect();
    assert_eq!(m, ["f2(beta*, v3) -> v5"]);
    assert!(labels(&h, 3).len() == 2);
}

#[test]
fn two_step_has_one_slot() {
    for t in 1..=4 {
        let h = two_step_homology(gf(2), t);
        let l = labels(&h, N_MAX);
        assert_eq!(l.len(), 1, "t = {t}");
        assert!(l[0].starts_with(&format!("m{}(", t + 2)));
        assert!(l[0].contains("alpha*, v1"));
    }
}

#[test]
fn single_index_has_no_slots() {
    let h = two_step_homology(gf(2), 1);
    let g = Arc::clone(h.algebra());
    let only = BigradedHomology::new(g, [(0, h.parts()[&-1].clone())]).unwrap();
    assert!(derive_slots(&only, N_MAX).is_empty());
}

#[test]
fn every_staircase_triple_is_valid() {
    let h = Arc::new(staircase_homology(gf(3)));
    for x in 0..3 {
        for y in 0..3 {
            for z in 0..3 {
                let r = stasheff_check(&structure(&h, [x, y, z]), 6);
                assert!(r.valid(), "{:?}", r.residuals);
                assert!(r.complete());
            }
        }
    }
}

#[test]
fn identity_morphism_is_valid() {
    let h = Arc::new(staircase_homology(gf(5)));
    let s = structure(&h, [2, 3, 4]);
    let id = AInfMorphismParams::identity(&h, Arc::new(derive_morphism_slots(&h, N_MAX)));
    assert!(morphism_check(&s, &s, &id, 6).valid());
    assert!(id.is_quasi_isomorphism());
}

#[test]
fn transformation_hits_exactly_the_predicted_target() {
    // x' = a x, y' = b y + rho, z' = a b z - a rho x with
    // a = q2/q1, b = q4/q2, rho = mu/q2
    let f = gf(5);
    let h = Arc::new(staircase_homology(f.clone()));
    let (q1, q2, q4, mu) = (2u64, 3u64, 4u64, 1u64);
    let mor = transformation(&h, [q1, q2, q4], mu);
    let e = |v: u64| f.from_i64(v as i64);
    let a = f.mul(&e(q2), &f.inv(&e(q1)).unwrap());
    let b = f.mul(&e(q4), &f.inv(&e(q2)).unwrap());
    let rho = f.mul(&e(mu), &f.inv(&e(q2)).unwrap());
    let src = [1i64, 2, 3];
    let (x, y, z) = (f.from_i64(src[0]), f.from_i64(src[1]), f.from_i64(src[2]));
    let expected = [
        f.mul(&a, &x),
        f.add(&f.mul(&b, &y), &rho),
        f.sub(&f.mul(&f.mul(&a, &b), &z), &f.mul(&f.mul(&a, &rho), &x)),
    ];
    let s = structure(&h, src);
    let mut hits = Vec::new();
    for t in 0..125i64 {
        let c = [t / 25, (t / 5) % 5, t % 5];
        if morphism_check(&s, &structure(&h, c), &mor, 6).valid() {
            hits.push(c.map(|v| f.from_i64(v)));
        }
    }
    assert_eq!(hits, [expected]);
}

#[test]
fn composition_laws() {
    let f = gf(5);
    let h = Arc::new(staircase_homology(f.clone()));
    let id = AInfMorphismParams::identity(&h, Arc::new(derive_morphism_slots(&h, N_MAX)));
    let g = transformation(&h, [2, 3, 4], 1);
    let k = transformation(&h, [1, 4, 2], 3);
    for (l, r) in [(compose(&h, &g, &id), &g), (compose(&h, &id, &g), &g)] {
        assert_eq!(l.f1, r.f1);
        assert_eq!(l.coeffs, r.coeffs);
    }
    // s -g-> s' -k-> s'' gives s -kg-> s''
    let s = structure(&h, [1, 2, 3]);
    let next = |s: &AInfStructure<PrimeField>, m: &AInfMorphismParams<PrimeField>| {
        (0..125i64)
            .map(|t| structure(&h, [t / 25, (t / 5) % 5, t % 5]))
            .find(|d| morphism_check(s, d, m, 6).valid())
            .expect("a target exists")
    };
    let s1 = next(&s, &g);
    let s2 = next(&s1, &k);
    let kg = compose(&h, &k, &g);
    assert!(morphism_check(&s, &s2, &kg, 6).valid());
}

fn orbit_sizes(h: BigradedHomology<PrimeField>) -> (usize, Vec<usize>, Vec<Vec<u64>>) {
    let r = classify_orbits(h, N_MAX, DEFAULT_BUDGET).unwrap();
    let reps = r
        .orbits
        .iter()
        .map(|o| o.representative.iter().map(|e| *e).collect())
        .collect();
    (r.orbits.len(), r.orbits.iter().map(|o| o.size).collect(), reps)
}

#[test]
fn staircase_orbits() {
    let (n, sizes, _) = orbit_sizes(staircase_homology(gf(2)));
    assert_eq!(n, 4);
    assert_eq!(sizes, [2, 2, 2, 2]);
    for p in [3, 5] {
        let (n, _, reps) = orbit_sizes(staircase_homology(gf(p)));
        assert_eq!(n, 4, "p = {p}");
        let got: BTreeSet<_> = reps.into_iter().collect();
        let want: BTreeSet<Vec<u64>> = [vec![0, 0, 0], vec![0, 0, 1], vec![1, 0, 0], vec![1, 0, 1]].into();
        assert_eq!(got, want, "p = {p}");
    }
}

#[test]
fn two_step_orbits() {
    for p in [2, 3] {
        for t in 1..=3 {
            let (n, _, reps) = orbit_sizes(two_step_homology(gf(p), t));
            assert_eq!(n, 2, "p = {p}, t = {t}");
            assert_eq!(reps, [vec![0], vec![1]]);
        }
    }
}

#[test]
fn reachability_is_symmetric_over_gf2() {
    let f = gf(2);
    let h = Arc::new(staircase_homology(f.clone()));
    let all: Vec<_> = (0..8i64).map(|t| structure(&h, [t / 4, (t / 2) % 2, t % 2])).collect();
    let movers: Vec<_> = (0..2).map(|mu| transformation(&h, [1, 1, 1], mu)).collect();
    for (i, s) in all.iter().enumerate() {
        for (j, d) in all.iter().enumerate() {
            let fwd = movers.iter().any(|m| morphism_check(s, d, m, 6).valid());
            let back = movers.iter().any(|m| morphism_check(d, s, m, 6).valid());
            assert_eq!(fwd, back, "{i} <-> {j}");
        }
    }
}

#[test]
fn search_limits_are_reported() {
    use koszul_core::ainfty::AInfError;
    let err = classify_orbits(staircase_homology(gf(5)), N_MAX, 100).unwrap_err();
    assert!(matches!(
        err,
        AInfError::SearchSpaceTooLarge {
            structures: 125,
            budget: 100,
            ..
        }
    ));
    let q = classify_orbits(
        staircase_homology(koszul_core::exactlin::Rationals),
        N_MAX,
        DEFAULT_BUDGET,
    );
    assert_eq!(q.unwrap_err(), AInfError::InfiniteField);
}
