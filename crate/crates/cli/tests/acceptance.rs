//! Acceptance checks. Prints one `PASS` or `FAIL` line per criterion and
//! exits nonzero when any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use koszul_cli::format::{parse_algebra, parse_module, AlgebraPair};
use koszul_core::ainfty::{classify_orbits, OrbitReport, DEFAULT_BUDGET};
use koszul_core::exactlin::{Field, PrimeField, Rationals};
use koszul_core::grmod::{adjusted_assoc_graded, assoc_graded, is_isomorphic, random_module, GradedModule};
use koszul_core::kdual::{
    check_homology_formulas, classify, hat_e, homology, koszul_dual_complex, Bounds, Classification, HomologyReport,
};
use koszul_core::quiver::{QuadraticAlgebra, Quiver};
use koszul_core::resolve::{has_linear_resolution, is_koszul_algebra, minimal_resolution};
use koszul_core::samples;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every comparison is exact; this many mismatched entries are allowed.
const TOLERANCE: usize = 0;
const J_MAX: usize = 6;
const D_MAX: i64 = 8;
const SEED: u64 = 0x6b6f_737a;

const RANDOM_MODULES: usize = 24;
const RANDOM_MAX_DIM: usize = 3;
const RANDOM_MAX_TOP: i64 = 6;
const BRIDGE_J: usize = 5;
const BRIDGE_L: i64 = 6;

const LINEAR_MODULES: usize = 10;
const RANDOM_ALGEBRAS: usize = 10;
const ORBIT_ARITY: usize = 8;

type Check = Result<String, String>;

fn bounds() -> Bounds {
    Bounds {
        j_max: J_MAX,
        d_max: D_MAX,
    }
}

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn load_algebra(name: &str) -> AlgebraPair<Rationals> {
    let path = corpus(name);
    let text = std::fs::read_to_string(&path).expect("corpus algebra");
    let file = parse_algebra(name, &text).expect("parses");
    AlgebraPair::new(file.build(name, Rationals).expect("builds"))
}

fn load_module(pair: &AlgebraPair<Rationals>, name: &str) -> GradedModule<Rationals> {
    let text = std::fs::read_to_string(corpus(name)).expect("corpus module");
    parse_module(name, &text, pair).expect("parses")
}

fn vertex<F: Field>(a: &QuadraticAlgebra<F>, name: &str) -> usize {
    a.quiver().vertex_index(name).expect("vertex exists")
}

fn simple<F: Field>(a: &Arc<QuadraticAlgebra<F>>, v: &str, shift: i64) -> GradedModule<F> {
    GradedModule::simple(Arc::clone(a), vertex(a, v), shift).expect("simple")
}

fn projective<F: Field>(a: &Arc<QuadraticAlgebra<F>>, v: &str, shift: i64, top: i64) -> GradedModule<F> {
    GradedModule::projective(Arc::clone(a), vertex(a, v), shift, top).expect("projective")
}

/// Isomorphism proven by an explicit witness.
fn iso<F: Field>(a: &GradedModule<F>, b: &GradedModule<F>) -> bool {
    let r = is_isomorphic(a, b);
    r.isomorphic && r.witness.is_some()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn expansion_top<F: Field>(m: &GradedModule<F>) -> i64 {
    if m.truncated_above() {
        m.window().1
    } else {
        D_MAX
    }
}

fn dual_homology<F: Field>(m: &GradedModule<F>) -> HomologyReport<F> {
    homology(&koszul_dual_complex(m).expect("complex"), expansion_top(m)).expect("homology")
}

/// `(coefficient, left arrow, right arrow)` with `(1, "b", "a")` for `b a`.
type Relation<'a> = Vec<(i64, &'a str, &'a str)>;

fn expected_dual(
    vertices: &[&str],
    arrows: &[(&str, &str, &str)],
    relations: &[Relation],
) -> QuadraticAlgebra<Rationals> {
    let q = Quiver::new(vertices.iter().copied(), arrows.iter().copied()).expect("quiver");
    let f = Rationals;
    let rels: Vec<Vec<_>> = relations
        .iter()
        .map(|r| r.iter().map(|&(c, l, rt)| (f.from_i64(c), l, rt)).collect())
        .collect();
    QuadraticAlgebra::from_named_relations(f, q, &rels).expect("relations")
}

fn quadratic_duals() -> Check {
    let cases = [
        (
            "arrow_loop.alg",
            expected_dual(
                &["1*", "2*"],
                &[("alpha*", "1*", "2*"), ("beta*", "2*", "2*")],
                &[vec![(1, "beta*", "alpha*")], vec![(1, "beta*", "beta*")]],
            ),
        ),
        (
            "branched_line.alg",
            expected_dual(
                &["1*", "2*", "3*", "4*", "5*"],
                &[
                    ("alpha*", "1*", "2*"),
                    ("beta*", "2*", "3*"),
                    ("gamma*", "3*", "4*"),
                    ("delta*", "5*", "3*"),
                ],
                &[vec![(1, "beta*", "alpha*")], vec![(1, "gamma*", "beta*")]],
            ),
        ),
        (
            "commuting_square.alg",
            expected_dual(
                &["1*", "2*", "3*", "4*", "5*", "6*"],
                &[
                    ("alpha*", "1*", "3*"),
                    ("beta*", "2*", "4*"),
                    ("gamma*", "3*", "4*"),
                    ("delta*", "3*", "5*"),
                    ("eps*", "4*", "6*"),
                    ("zeta*", "5*", "6*"),
                ],
                &[
                    vec![(1, "gamma*", "alpha*")],
                    vec![(1, "delta*", "alpha*")],
                    vec![(1, "eps*", "gamma*"), (1, "zeta*", "delta*")],
                ],
            ),
        ),
    ];
    for (file, want) in &cases {
        let pair = load_algebra(file);
        ensure(pair.dual.same_presentation(want), || {
            format!("{file}: relation subspace differs")
        })?;
    }
    Ok("3 algebras, relation subspaces equal over Q".into())
}

const STRAND_DISPLAY: &str = "\
  -4  P2*<4>
      | [beta*]
  -3  P2*<3>
      | [alpha*]
      | [beta*]
  -2  (P1* + P2*)<2>
      | [0  alpha*]
      | [0  beta*]
  -1  (P1* + P2*)<1>
      | [0  alpha*]
   0  P1*
";

fn strand_complex() -> Check {
    let pair = load_algebra("arrow_loop.alg");
    let m = load_module(&pair, "strand.mod");
    ensure(m.window() == (0, 8) && m.truncated_above(), || {
        "strand.mod is not truncated on [0, 8]".into()
    })?;
    let gamma = &pair.dual;
    let c = koszul_dual_complex(&m).map_err(|e| e.to_string())?;
    let (p1, p2) = (vertex(gamma, "1*"), vertex(gamma, "2*"));
    let mut want: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    want.insert(0, (1, 0));
    want.insert(-1, (1, 1));
    want.insert(-2, (1, 1));
    for i in -8..=-3 {
        want.insert(i, (0, 1));
    }
    for (&i, &(a, b)) in &want {
        ensure((c.multiplicity(i, p1), c.multiplicity(i, p2)) == (a, b), || {
            format!("term {i} has the wrong summands")
        })?;
    }
    let shown = c.to_string();
    ensure(shown.contains(STRAND_DISPLAY), || {
        format!("differential blocks differ:\n{shown}")
    })?;

    let h = homology(&c, D_MAX).map_err(|e| e.to_string())?;
    let expected: [(i64, GradedModule<Rationals>); 3] = [
        (0, simple(gamma, "1*", 0)),
        (-1, projective(gamma, "1*", 1, D_MAX)),
        (-2, projective(gamma, "1*", 2, D_MAX)),
    ];
    for (i, want) in &expected {
        let got = h.module(*i).ok_or_else(|| format!("H^{i} missing"))?;
        ensure(iso(got, want), || format!("H^{i} has the wrong isomorphism type"))?;
    }
    for e in h.nonzero() {
        ensure((-2..=0).contains(&e.i), || format!("H^{} is nonzero", e.i))?;
    }
    Ok(format!(
        "terms for indices -8..0, blocks and H^0, H^-1, H^-2 match; others zero through degree {D_MAX}"
    ))
}

fn verdicts() -> Check {
    let loop_pair = load_algebra("arrow_loop.alg");
    let line_pair = load_algebra("branched_line.alg");
    let square_pair = load_algebra("commuting_square.alg");
    let strand = load_module(&loop_pair, "strand.mod");
    let branch = load_module(&line_pair, "branch.mod");
    let l = load_module(&square_pair, "square_dual.mod");

    let r = classify(&strand, bounds()).map_err(|e| e.to_string())?;
    ensure(r.class == Classification::WeaklyKoszul && r.routes_agree, || {
        format!("strand: {}", r.class)
    })?;

    let r = classify(&branch, bounds()).map_err(|e| e.to_string())?;
    ensure(r.class == Classification::QuasiKoszul && r.routes_agree, || {
        format!("branch: {}", r.class)
    })?;
    let failed: Vec<i64> = r
        .homology
        .entries
        .iter()
        .filter(|e| e.linear.as_ref().is_some_and(|v| !v.is_yes()))
        .map(|e| e.i)
        .collect();
    ensure(failed == [-1], || format!("branch: linearity fails at {failed:?}"))?;

    let r = classify(&l, bounds()).map_err(|e| e.to_string())?;
    ensure(r.class == Classification::WeaklyKoszul && r.routes_agree, || {
        format!("L: {}", r.class)
    })?;
    let gamma = &square_pair.dual;
    let want = GradedModule::direct_sum(&[projective(gamma, "2*", 0, 2), simple(gamma, "5*", 0)]).expect("sum");
    let gr = assoc_graded(&l);
    ensure(iso(&gr, &want), || format!("gr(L) is {}", gr.dims_string()))?;
    Ok(
        "weakly-koszul, quasi-koszul (linearity fails on H^-1), weakly-koszul with gr(L) = P2* + S5*; routes agree"
            .into(),
    )
}

fn hat_e_split() -> Check {
    let pair = load_algebra("commuting_square.alg");
    let m = load_module(&pair, "square.mod");
    let l = load_module(&pair, "square_dual.mod");
    let gamma = &pair.dual;
    let he = hat_e(&m, bounds()).map_err(|e| e.to_string())?;
    let want = GradedModule::direct_sum(&[l.shift(-1), simple(gamma, "1*", 0)]).expect("sum");
    ensure(iso(&he.module, &want), || {
        format!("hat E(M) is {}", he.module.dims_string())
    })?;
    let ks = he.koszul_summand.as_ref().ok_or("no Koszul summand identified")?;
    ensure(iso(ks, &simple(gamma, "1*", 0)), || "Koszul summand is not S1*".into())?;
    let r = classify(&m, bounds()).map_err(|e| e.to_string())?;
    let other = r.homology.get(-1).ok_or("H^-1 missing")?;
    ensure(iso(&other.module, &l), || "H^-1 is not L".into())?;
    ensure(other.generation_degrees == [1, 2], || {
        format!("H^-1 generated in {:?}", other.generation_degrees)
    })?;
    Ok("hat E(M) = L<-1> + S1*, Koszul summand S1*, other summand generated in {1,2}".into())
}

/// A mixed corpus of random modules over the three algebras, alternating
/// between GF(3) and Q.
struct RandomCorpus {
    gf3: Vec<GradedModule<PrimeField>>,
    rat: Vec<GradedModule<Rationals>>,
}

fn random_corpus() -> RandomCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let gf = PrimeField::new(3).expect("prime");
    let gf_algebras = [
        samples::arrow_loop(gf.clone()),
        samples::branched_line(gf.clone()),
        samples::commuting_square(gf),
    ]
    .map(Arc::new);
    let rat_algebras = [
        samples::arrow_loop(Rationals),
        samples::branched_line(Rationals),
        samples::commuting_square(Rationals),
    ]
    .map(Arc::new);
    let mut out = RandomCorpus {
        gf3: Vec::new(),
        rat: Vec::new(),
    };
    for k in 0..RANDOM_MODULES {
        let which = k % 3;
        let top = 1 + (k as i64 * 5 / 3) % RANDOM_MAX_TOP;
        let max_dim = if top > 3 { 2 } else { RANDOM_MAX_DIM };
        if k % 2 == 0 {
            out.gf3.push(random_module(
                Arc::clone(&gf_algebras[which]),
                &mut rng,
                0,
                top,
                max_dim,
            ));
        } else {
            out.rat.push(random_module(
                Arc::clone(&rat_algebras[which]),
                &mut rng,
                0,
                top,
                max_dim,
            ));
        }
    }
    out
}

/// Mismatches between Betti numbers and homology dimensions, read with the
/// homology index given by `index(j, l)`.
fn bridge_mismatches<F: Field>(m: &GradedModule<F>, index: impl Fn(i64, i64) -> i64) -> Result<usize, String> {
    let betti = minimal_resolution(m, BRIDGE_J, BRIDGE_L)
        .map_err(|e| e.to_string())?
        .betti;
    let h = homology(&koszul_dual_complex(m).map_err(|e| e.to_string())?, BRIDGE_L).map_err(|e| e.to_string())?;
    let mut bad = 0;
    for j in 0..=BRIDGE_J {
        for l in 0..=BRIDGE_L {
            for v in 0..m.vertex_count() {
                let from_h = h.module(index(j as i64, l)).map_or(0, |x| x.dim(l, v));
                bad += usize::from(betti.get(j, l, v) != from_h);
            }
        }
    }
    Ok(bad)
}

#[allow(clippy::absurd_extreme_comparisons)]
fn bridge(c: &RandomCorpus) -> Check {
    let (mut bad, mut reversed) = (0, 0);
    for m in &c.gf3 {
        ensure(m.validate().is_empty(), || "invalid random module".into())?;
        bad += bridge_mismatches(m, |j, l| j - l)?;
        reversed += bridge_mismatches(m, |j, l| l - j)?;
    }
    for m in &c.rat {
        ensure(m.validate().is_empty(), || "invalid random module".into())?;
        bad += bridge_mismatches(m, |j, l| j - l)?;
        reversed += bridge_mismatches(m, |j, l| l - j)?;
    }
    let n = c.gf3.len() + c.rat.len();
    ensure(bad <= TOLERANCE, || {
        format!("{bad} mismatched entries over {n} modules")
    })?;
    Ok(format!(
        "{n} modules, beta(j,l) = dim H^(j-l)_l on every entry (reading H^(l-j) gives {reversed} mismatches)"
    ))
}

fn linear_modules() -> Vec<GradedModule<Rationals>> {
    let mut out = Vec::new();
    for a in [samples::branched_line(Rationals), samples::commuting_square(Rationals)] {
        let a = Arc::new(a);
        for v in 0..a.vertex_count() {
            out.push(GradedModule::projective(Arc::clone(&a), v, 0, D_MAX).expect("projective"));
        }
    }
    let loop_alg = Arc::new(samples::arrow_loop(Rationals));
    out.push(samples::uniserial_three(Arc::new(samples::branched_line(Rationals))));
    out.push(GradedModule::simple(loop_alg, 0, 0).expect("simple"));
    out
}

fn sample_modules() -> Vec<GradedModule<Rationals>> {
    let f = Rationals;
    vec![
        samples::three_top_strand(f, D_MAX),
        samples::two_top_strand(f, 3, D_MAX),
        samples::branch_module(f),
        samples::square_module(f),
        samples::square_dual_module(f),
        samples::uniserial_three(Arc::new(samples::branched_line(f))),
    ]
}

fn formulas_hold<F: Field>(m: &GradedModule<F>, checked: &mut usize) -> Result<(), String> {
    if classify(m, bounds()).map_err(|e| e.to_string())?.class < Classification::WeaklyKoszul {
        return Ok(());
    }
    let report = check_homology_formulas(m, bounds()).map_err(|e| e.to_string())?;
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.holds)
        .map(|c| c.description.as_str())
        .collect();
    ensure(failed.is_empty(), || format!("{}: {failed:?}", m.dims_string()))?;
    // the gr comparison is also made directly, independent of the report
    let (gr, _) = adjusted_assoc_graded(m);
    let (h, hg) = (dual_homology(m), dual_homology(&gr));
    for e in &h.entries {
        let same = match hg.module(e.i) {
            Some(o) => e.module.is_zero() && o.is_zero() || iso(&e.module, o),
            None => e.module.is_zero(),
        };
        ensure(same, || {
            format!("{}: H^{} differs from the adjusted gr side", m.dims_string(), e.i)
        })?;
    }
    *checked += 1;
    Ok(())
}

fn concentration(c: &RandomCorpus) -> Check {
    let mut linear = Vec::new();
    for m in linear_modules() {
        let g = m.generation_degrees();
        if g.len() == 1
            && has_linear_resolution(&m, J_MAX, D_MAX)
                .map_err(|e| e.to_string())?
                .is_yes()
        {
            linear.push(m);
        }
        if linear.len() == LINEAR_MODULES {
            break;
        }
    }
    ensure(linear.len() == LINEAR_MODULES, || {
        format!("only {} linear modules", linear.len())
    })?;
    for m in &linear {
        for i in 0..=2 {
            let h = dual_homology(&m.shift(i));
            let at: Vec<i64> = h.nonzero().map(|e| e.i).collect();
            ensure(at == [-i], || {
                format!("{} shifted by {i}: homology at {at:?}", m.dims_string())
            })?;
        }
    }
    let mut checked = 0;
    for m in &sample_modules() {
        formulas_hold(m, &mut checked)?;
    }
    for m in &c.gf3 {
        formulas_hold(m, &mut checked)?;
    }
    for m in &c.rat {
        formulas_hold(m, &mut checked)?;
    }
    Ok(format!(
        "{LINEAR_MODULES} linear modules x 3 shifts concentrated at -i; H^n GD(M) = H^n GD(adjusted gr M) for {checked} weakly Koszul modules"
    ))
}

fn complex_sound<F: Field>(m: &GradedModule<F>) -> Result<(), String> {
    let c = koszul_dual_complex(m).map_err(|e| e.to_string())?;
    let e = c.expand(expansion_top(m)).map_err(|e| e.to_string())?;
    ensure(e.squares_to_zero(), || format!("{}: d^2 != 0", m.dims_string()))?;
    let h = homology(&c, expansion_top(m)).map_err(|e| e.to_string())?;
    ensure(h.euler_ok, || {
        format!("{}: Euler characteristic differs", m.dims_string())
    })
}

fn complexes(c: &RandomCorpus) -> Check {
    let mut n = 0;
    for m in sample_modules().iter().chain(&linear_modules()) {
        for i in 0..=2 {
            complex_sound(&m.shift(i))?;
            n += 1;
        }
    }
    for m in &c.gf3 {
        complex_sound(m)?;
        n += 1;
    }
    for m in &c.rat {
        complex_sound(m)?;
        n += 1;
    }
    Ok(format!("{n} complexes"))
}

/// Orbits of the closed-form action `x' = a x, y' = b y + r,
/// z' = a b z - a r x` over GF(p), `a, b` nonzero.
fn formula_orbits(p: u64) -> Vec<BTreeSet<[u64; 3]>> {
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for start in (0..p * p * p).map(|t| [t / (p * p), (t / p) % p, t % p]) {
        if seen.contains(&start) {
            continue;
        }
        let [x, y, z] = start;
        let mut orbit = BTreeSet::new();
        for a in 1..p {
            for b in 1..p {
                for r in 0..p {
                    let image = [
                        a * x % p,
                        (b * y + r) % p,
                        (a * b % p * z + p * p - a * r % p * x % p) % p,
                    ];
                    orbit.insert(image);
                }
            }
        }
        seen.extend(orbit.iter().copied());
        orbits.push(orbit);
    }
    orbits
}

fn orbit_report(h: koszul_core::ainfty::BigradedHomology<PrimeField>) -> Result<OrbitReport<PrimeField>, String> {
    classify_orbits(h, ORBIT_ARITY, DEFAULT_BUDGET).map_err(|e| e.to_string())
}

fn ainfty_orbits() -> Check {
    for p in [2u64, 3, 5] {
        let f = PrimeField::new(p).expect("prime");
        let r = orbit_report(samples::staircase_homology(f))?;
        ensure(r.slots.len() == 3, || format!("GF({p}): {} slots", r.slots.len()))?;
        ensure(r.orbits.len() == 4, || format!("GF({p}): {} orbits", r.orbits.len()))?;
        let oracle = formula_orbits(p);
        let mut got: Vec<usize> = r.orbits.iter().map(|o| o.size).collect();
        let mut want: Vec<usize> = oracle.iter().map(BTreeSet::len).collect();
        got.sort_unstable();
        want.sort_unstable();
        ensure(got == want, || {
            format!("GF({p}): sizes {got:?}, closed form gives {want:?}")
        })?;
        let mut hit = BTreeSet::new();
        for target in [[0, 0, 0], [1, 0, 0], [0, 0, 1], [1, 0, 1]] {
            let orbit = oracle.iter().position(|o| o.contains(&target)).expect("covered");
            let rep = r
                .orbits
                .iter()
                .map(|o| [o.representative[0], o.representative[1], o.representative[2]])
                .find(|rep| oracle[orbit].contains(rep))
                .ok_or_else(|| format!("GF({p}): no representative equivalent to {target:?}"))?;
            hit.insert(rep);
        }
        ensure(hit.len() == 4, || format!("GF({p}): targets share orbits"))?;
        if p == 2 {
            ensure(got == [2, 2, 2, 2], || format!("GF(2): sizes {got:?}"))?;
        }
    }
    for p in [2u64, 3] {
        for t in 1..=3 {
            let r = orbit_report(samples::two_step_homology(PrimeField::new(p).expect("prime"), t))?;
            ensure(r.slots.len() == 1 && r.orbits.len() == 2, || {
                format!("t = {t}, GF({p}): {} slots, {} orbits", r.slots.len(), r.orbits.len())
            })?;
        }
    }
    Ok(
        "staircase: 3 slots, 4 orbits over GF(2), GF(3), GF(5), sizes {2,2,2,2} over GF(2); two-step: 1 slot, 2 orbits"
            .into(),
    )
}

fn double_duals() -> Check {
    let mut algebras = vec![
        samples::arrow_loop(Rationals),
        samples::branched_line(Rationals),
        samples::commuting_square(Rationals),
    ];
    for a in &algebras {
        let name = a.quiver().vertex_name(0).to_string();
        let a = Arc::new(a.clone());
        let d = Arc::new(a.quadratic_dual());
        ensure(is_koszul_algebra(&a, J_MAX).is_yes(), || {
            format!("algebra at {name} is not Koszul")
        })?;
        ensure(is_koszul_algebra(&d, J_MAX).is_yes(), || {
            format!("dual at {name} is not Koszul")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_ALGEBRAS {
        algebras.push(samples::random_algebra(Rationals, &mut rng, 4, 6));
    }
    for (k, a) in algebras.iter().enumerate() {
        ensure(a.quadratic_dual().quadratic_dual().same_presentation(a), || {
            format!("algebra {k}: double dual differs")
        })?;
    }
    Ok(format!(
        "double dual is the identity on {} algebras; Koszul at j_max {J_MAX} for 3 algebras and duals",
        algebras.len()
    ))
}

fn main() {
    let started = Instant::now();
    let corpus = random_corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Check + '_>)> = vec![
        ("quadratic duals", Box::new(quadratic_duals)),
        ("complex of the strand module", Box::new(strand_complex)),
        ("classification verdicts", Box::new(verdicts)),
        ("hat E splitting", Box::new(hat_e_split)),
        ("Betti numbers from homology", Box::new(|| bridge(&corpus))),
        ("concentration and adjusted gr", Box::new(|| concentration(&corpus))),
        ("d^2 = 0 and Euler characteristic", Box::new(|| complexes(&corpus))),
        ("A-infinity orbits", Box::new(ainfty_orbits)),
        ("double duals and Koszulity", Box::new(double_duals)),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({secs:.1}s): {detail}", n + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {} {name} ({secs:.1}s): {why}", n + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failures,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
