use std::fmt;
use std::sync::Arc;

use crate::exactlin::Field;
use crate::grmod::{adjusted_assoc_graded, is_isomorphic, GradedModule};
use crate::quiver::QuadraticAlgebra;
use crate::resolve::{
    has_linear_resolution, is_koszul_module, is_weakly_koszul_gr, Verdict, DEFAULT_DMAX, DEFAULT_JMAX,
};

use super::complex::koszul_dual_complex_over;
use super::homology::{homology, HomologyReport};
use super::KDualError;

/// Homological and internal-degree bounds shared by every finite check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub j_max: usize,
    pub d_max: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            j_max: DEFAULT_JMAX,
            d_max: DEFAULT_DMAX,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Classification {
    None,
    QuasiKoszul,
    WeaklyKoszul,
    Koszul,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::None => "none",
            Classification::QuasiKoszul => "quasi-koszul",
            Classification::WeaklyKoszul => "weakly-koszul",
            Classification::Koszul => "koszul",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyReport<F: Field> {
    pub class: Classification,
    pub homology: HomologyReport<F>,
    pub generation_degrees: Vec<i64>,
    /// The same question answered through `gr(M)`.
    pub gr_route: Verdict,
    /// Both routes agree on weak Koszulity.
    pub routes_agree: bool,
    pub bounds: Bounds,
}

/// The expansion bound: `d_max`, capped by the known part of `M`.
fn expansion_top<F: Field>(m: &GradedModule<F>, d_max: i64) -> i64 {
    let (lo, hi) = m.window();
    let top = if m.truncated_above() { d_max.min(hi) } else { d_max };
    top.max(lo)
}

fn dual_homology<F: Field>(
    m: &GradedModule<F>,
    gamma: Arc<QuadraticAlgebra<F>>,
    d_max: i64,
) -> Result<HomologyReport<F>, KDualError> {
    let c = koszul_dual_complex_over(m, gamma)?;
    homology(&c, expansion_top(m, d_max))
}

/// Classification through the homology of `GD(M)`: quasi-Koszul when each
/// nonzero `H^i` is generated in degree `-i`, weakly Koszul when moreover
/// each has a linear resolution over `Γ`, Koszul when in addition `M` is
/// generated in degree 0 and the homology sits in index 0.
pub fn classify<F: Field>(m: &GradedModule<F>, bounds: Bounds) -> Result<ClassifyReport<F>, KDualError> {
    let gamma = Arc::new(m.algebra().quadratic_dual());
    classify_over(m, gamma, bounds)
}

pub fn classify_over<F: Field>(
    m: &GradedModule<F>,
    gamma: Arc<QuadraticAlgebra<F>>,
    bounds: Bounds,
) -> Result<ClassifyReport<F>, KDualError> {
    let mut h = dual_homology(m, gamma, bounds.d_max)?;
    let mut quasi = true;
    let mut weak = true;
    for e in h.entries.iter_mut() {
        if e.module.is_zero() {
            continue;
        }
        if e.generation_degrees != [-e.i] {
            quasi = false;
            weak = false;
            continue;
        }
        let v = has_linear_resolution(&e.module, bounds.j_max, bounds.d_max)?;
        weak &= v.is_yes();
        e.linear = Some(v);
    }
    let generation_degrees = m.generation_degrees();
    let concentrated = h.nonzero().all(|e| e.i == 0);
    let class = if !quasi {
        Classification::None
    } else if !weak {
        Classification::QuasiKoszul
    } else if concentrated && generation_degrees.iter().all(|&d| d == 0) {
        Classification::Koszul
    } else {
        Classification::WeaklyKoszul
    };
    let gr_route = is_weakly_koszul_gr(m, bounds.j_max, bounds.d_max)?;
    Ok(ClassifyReport {
        routes_agree: gr_route.is_yes() == (class >= Classification::WeaklyKoszul),
        class,
        homology: h,
        generation_degrees,
        gr_route,
        bounds,
    })
}

/// `Ě(M) = ⊕ H^i GD(M)⟨i⟩` with its `Γ`-structure.
#[derive(Clone, Debug)]
pub struct HatE<F: Field> {
    pub module: GradedModule<F>,
    /// Degrees `<= valid_top` are exact. Each `H^i⟨i⟩` is known through
    /// `d_max + i`, so the lowest nonzero index bounds the whole sum.
    pub valid_top: i64,
    /// `H^0 GD(M)`, present when it was verified to be Koszul.
    pub koszul_summand: Option<GradedModule<F>>,
}

pub fn hat_e<F: Field>(m: &GradedModule<F>, bounds: Bounds) -> Result<HatE<F>, KDualError> {
    let gamma = Arc::new(m.algebra().quadratic_dual());
    hat_e_over(m, gamma, bounds)
}

pub fn hat_e_over<F: Field>(
    m: &GradedModule<F>,
    gamma: Arc<QuadraticAlgebra<F>>,
    bounds: Bounds,
) -> Result<HatE<F>, KDualError> {
    let h = dual_homology(m, Arc::clone(&gamma), bounds.d_max)?;
    let lowest = h.nonzero().map(|e| e.i).min();
    let Some(lowest) = lowest else {
        return Ok(HatE {
            module: GradedModule::zero(gamma, 0, 0),
            valid_top: h.valid_top,
            koszul_summand: None,
        });
    };
    let valid_top = (h.valid_top + lowest).max(0);
    let parts: Vec<GradedModule<F>> = h
        .nonzero()
        .map(|e| e.module.shift(e.i).with_window(0, valid_top))
        .collect();
    let mut module = GradedModule::direct_sum(&parts).expect("same algebra");
    module.set_truncation(true, false);
    let koszul_summand = match h.module(0) {
        Some(h0) if !h0.is_zero() && is_weakly_koszul_gr(&module, bounds.j_max, valid_top)?.is_yes() => {
            is_koszul_module(h0, bounds.j_max, bounds.d_max)?
                .is_yes()
                .then(|| h0.clone())
        }
        _ => None,
    };
    Ok(HatE {
        module,
        valid_top,
        koszul_summand,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaCheck {
    pub description: String,
    pub holds: bool,
    /// False when an isomorphism search fell back to sampling.
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct FormulaReport {
    /// Whether `M` was classified weakly Koszul; the formulas are only
    /// claimed under that hypothesis.
    pub hypothesis: bool,
    pub checks: Vec<FormulaCheck>,
}

impl FormulaReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn compare<F: Field>(a: &GradedModule<F>, b: &GradedModule<F>, lo: i64, top: i64) -> (bool, bool) {
    let r = is_isomorphic(&a.with_window(lo, top), &b.with_window(lo, top));
    (r.isomorphic, r.exact)
}

/// For weakly Koszul `M` generated in degrees `J`:
/// `H^{-n} GD(M) ≅ Ě(K^{(s)})⟨n⟩` when `n = j_s ∈ J` and zero otherwise, and
/// `H^n GD(M) ≅ H^n GD(g̃r(M))` for every `n`.
pub fn check_homology_formulas<F: Field>(m: &GradedModule<F>, bounds: Bounds) -> Result<FormulaReport, KDualError> {
    let gamma = Arc::new(m.algebra().quadratic_dual());
    let class = classify_over(m, Arc::clone(&gamma), bounds)?;
    let h = &class.homology;
    let (lo, top) = (h.lo, h.valid_top);
    let (gr, filtration) = adjusted_assoc_graded(m);
    let mut checks = Vec::new();
    for e in &h.entries {
        let n = -e.i;
        let (holds, exact, what) = match filtration.index_of(n) {
            Some(s) => {
                let k = filtration.k(s).shift(-n);
                let hk = hat_e_over(
                    &k,
                    Arc::clone(&gamma),
                    Bounds {
                        d_max: top - n,
                        ..bounds
                    },
                )?;
                let (ok, exact) = compare(&e.module, &hk.module.shift(n), lo, top);
                (ok, exact, format!("H^{} = hatE(K({s}))<{n}>", e.i))
            }
            None => (e.module.is_zero(), true, format!("H^{} = 0", e.i)),
        };
        checks.push(FormulaCheck {
            description: what,
            holds,
            exact,
        });
    }
    let hg = dual_homology(&gr, Arc::clone(&gamma), top)?;
    for e in &h.entries {
        let (holds, exact) = match hg.module(e.i) {
            Some(other) => compare(&e.module, other, lo, top),
            None => (e.module.is_zero(), true),
        };
        checks.push(FormulaCheck {
            description: format!("H^{} GD(M) = H^{} GD(adjusted gr M)", e.i, e.i),
            holds,
            exact,
        });
    }
    Ok(FormulaReport {
        hypothesis: class.class >= Classification::WeaklyKoszul,
        checks,
    })
}
