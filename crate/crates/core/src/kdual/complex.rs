use std::fmt;
use std::sync::Arc;

use crate::exactlin::{Field, Matrix};
use crate::grmod::{GradedModule, ModuleMap};
use crate::quiver::{Path, QuadraticAlgebra};

use super::KDualError;

/// `GD(M)` as a complex of free graded modules over `Γ`.
///
/// Term `i` is `⊕_v P_{v*}⟨-i⟩^{n(v, i)}` with `n(v, i) = dim e_v M_{-i}`.
/// The part of `d^i` from the `(b, r)` copy to the `(a, c)` copy is
/// `Σ_α A(α, i)[c, r] · (right multiplication by α*)` over arrows
/// `α: a -> b`, where `A(α, i)` is the transpose of `α: M_{-i-1} -> M_{-i}`.
#[derive(Clone, Debug)]
pub struct GradedComplex<F: Field> {
    pub algebra: Arc<QuadraticAlgebra<F>>,
    pub i_min: i64,
    pub i_max: i64,
    /// `terms[i - i_min][v]`
    pub terms: Vec<Vec<usize>>,
    /// `coefficients[i - i_min][arrow] = A(arrow, i)` for `i_min <= i < i_max`.
    pub coefficients: Vec<Vec<Matrix<F>>>,
    /// Internal degree up to which the terms are known; `None` when the
    /// module was given in full.
    pub known_through: Option<i64>,
}

/// The complex written out degreewise on `[lo, top]`.
#[derive(Clone, Debug)]
pub struct ExpandedComplex<F: Field> {
    pub i_min: i64,
    pub lo: i64,
    pub top: i64,
    pub terms: Vec<GradedModule<F>>,
    /// `diffs[k]` maps `terms[k]` to `terms[k + 1]`.
    pub diffs: Vec<ModuleMap<F>>,
}

impl<F: Field> ExpandedComplex<F> {
    pub fn i_max(&self) -> i64 {
        self.i_min + self.terms.len() as i64 - 1
    }

    pub fn term(&self, i: i64) -> Option<&GradedModule<F>> {
        usize::try_from(i - self.i_min).ok().and_then(|k| self.terms.get(k))
    }

    pub fn diff(&self, i: i64) -> Option<&ModuleMap<F>> {
        usize::try_from(i - self.i_min).ok().and_then(|k| self.diffs.get(k))
    }

    /// Every composite `d^{i+1} d^i` vanishes.
    pub fn squares_to_zero(&self) -> bool {
        self.diffs.windows(2).all(|w| w[1].compose(&w[0]).is_zero())
    }
}

/// `GD(M)` over `Γ = Λ^!`, read off the graded parts of `M`.
pub fn koszul_dual_complex<F: Field>(m: &GradedModule<F>) -> Result<GradedComplex<F>, KDualError> {
    let gamma = Arc::new(m.algebra().quadratic_dual());
    koszul_dual_complex_over(m, gamma)
}

/// [`koszul_dual_complex`] with a caller-supplied copy of the quadratic dual.
pub fn koszul_dual_complex_over<F: Field>(
    m: &GradedModule<F>,
    gamma: Arc<QuadraticAlgebra<F>>,
) -> Result<GradedComplex<F>, KDualError> {
    if m.truncated_below() {
        return Err(KDualError::UnboundedBelow);
    }
    let (lo, hi) = m.window();
    let nv = m.vertex_count();
    let q = m.algebra().quiver();
    let (i_min, i_max) = (-hi, -lo);
    let terms: Vec<Vec<usize>> = (i_min..=i_max)
        .map(|i| (0..nv).map(|v| m.dim(-i, v)).collect())
        .collect();
    let coefficients = (i_min..i_max)
        .map(|i| (0..q.arrow_count()).map(|a| m.act(a, -i - 1).transpose()).collect())
        .collect();
    Ok(GradedComplex {
        algebra: gamma,
        i_min,
        i_max,
        terms,
        coefficients,
        known_through: m.truncated_above().then_some(hi),
    })
}

impl<F: Field> GradedComplex<F> {
    pub fn multiplicity(&self, i: i64, v: usize) -> usize {
        if i < self.i_min || i > self.i_max {
            return 0;
        }
        self.terms[(i - self.i_min) as usize][v]
    }

    /// Lowest generation degree of any term, i.e. `-i_max`.
    pub fn lowest_degree(&self) -> i64 {
        -self.i_max
    }

    /// Expansion on internal degrees `[-i_max, top]`.
    pub fn expand(&self, top: i64) -> Result<ExpandedComplex<F>, KDualError> {
        if let Some(k) = self.known_through {
            if top > k {
                return Err(KDualError::WindowTooSmall(k + 1));
            }
        }
        let g = &self.algebra;
        let f = g.field().clone();
        let nv = g.vertex_count();
        let lo = self.lowest_degree();
        let top = top.max(lo);
        let first = self.i_min.max(-top);
        let layout = |i: i64| -> Vec<usize> {
            (0..nv)
                .flat_map(|v| std::iter::repeat(v).take(self.multiplicity(i, v)))
                .collect()
        };
        let terms: Vec<GradedModule<F>> = (first..=self.i_max)
            .map(|i| {
                let parts: Vec<GradedModule<F>> = layout(i)
                    .into_iter()
                    .map(|v| {
                        GradedModule::projective(Arc::clone(g), v, -i, top)
                            .expect("vertex exists")
                            .with_window(lo, top)
                    })
                    .collect();
                if parts.is_empty() {
                    GradedModule::zero(Arc::clone(g), lo, top)
                } else {
                    GradedModule::direct_sum(&parts).expect("same algebra")
                }
            })
            .collect();
        let q = g.quiver();
        let mut diffs = Vec::new();
        for i in first..self.i_max {
            let (src, dst) = (&terms[(i - first) as usize], &terms[(i + 1 - first) as usize]);
            let (src_layout, dst_layout) = (layout(i), layout(i + 1));
            let coeffs = &self.coefficients[(i - self.i_min) as usize];
            let mut map = ModuleMap::zero(src, dst, lo, top);
            for e in lo..=top {
                let (ls, lt) = (e + i, e + i + 1);
                if ls < 0 {
                    continue;
                }
                let cs = g.component(ls as usize);
                let ct = g.component(lt as usize);
                for w in 0..nv {
                    let block = map.block_mut(e, w);
                    let target_basis: Vec<Vec<usize>> = (0..nv).map(|a| ct.basis_between(a, w)).collect();
                    let row_offsets = offsets(&dst_layout, |a| target_basis[a].len());
                    let mut col = 0;
                    for (r_global, &b) in src_layout.iter().enumerate() {
                        let r = copy_index(&src_layout, r_global);
                        for k in cs.basis_between(b, w) {
                            let x = g.basis_element(ls as usize, k);
                            for alpha in 0..q.arrow_count() {
                                if q.arrow(alpha).target != b {
                                    continue;
                                }
                                let a = q.arrow(alpha).source;
                                let prod = g.multiply(&x, &g.arrow_element(alpha));
                                for (c_global, &a2) in dst_layout.iter().enumerate() {
                                    if a2 != a {
                                        continue;
                                    }
                                    let c = copy_index(&dst_layout, c_global);
                                    let coef = coeffs[alpha].get(c, r);
                                    if f.is_zero(coef) {
                                        continue;
                                    }
                                    for (pos, &j) in target_basis[a].iter().enumerate() {
                                        let row = row_offsets[c_global] + pos;
                                        let v = f.add(block.get(row, col), &f.mul(coef, &prod.coords[j]));
                                        block.set(row, col, v);
                                    }
                                }
                            }
                            col += 1;
                        }
                    }
                }
            }
            diffs.push(map);
        }
        Ok(ExpandedComplex {
            i_min: first,
            lo,
            top,
            terms,
            diffs,
        })
    }

    /// The complex with every index moved: term `i` of the result is term
    /// `i + s` of `self`. This is `GD(M⟨s⟩)` when `self = GD(M)`.
    pub fn reindexed(&self, s: i64) -> Self {
        Self {
            algebra: Arc::clone(&self.algebra),
            i_min: self.i_min - s,
            i_max: self.i_max - s,
            terms: self.terms.clone(),
            coefficients: self.coefficients.clone(),
            known_through: self.known_through.map(|k| k + s),
        }
    }

    /// Label of an entry of `d^i`: the combination of arrows `α*` from the
    /// `(b, r)` copy in term `i` to the `(a, c)` copy in term `i + 1`.
    fn entry_label(&self, i: i64, a: usize, c: usize, b: usize, r: usize) -> String {
        let q = self.algebra.quiver();
        let coeffs = &self.coefficients[(i - self.i_min) as usize];
        let paths: Vec<(usize, Path)> = (0..q.arrow_count())
            .filter(|&al| q.arrow(al).source == a && q.arrow(al).target == b)
            .map(|al| (al, Path::arrow(q, al)))
            .collect();
        let terms: Vec<(F::Elem, &Path)> = paths
            .iter()
            .filter(|(al, _)| !self.algebra.field().is_zero(coeffs[*al].get(c, r)))
            .map(|(al, p)| (coeffs[*al].get(c, r).clone(), p))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            self.algebra.format_relation(&terms)
        }
    }

    fn term_label(&self, i: i64) -> String {
        let q = self.algebra.quiver();
        let parts: Vec<String> = (0..q.vertex_count())
            .filter(|&v| self.multiplicity(i, v) > 0)
            .map(|v| match self.multiplicity(i, v) {
                1 => format!("P{}", q.vertex_name(v)),
                n => format!("P{}^{n}", q.vertex_name(v)),
            })
            .collect();
        let body = match parts.len() {
            0 => return "0".to_string(),
            1 => parts[0].clone(),
            _ => format!("({})", parts.join(" + ")),
        };
        if i == 0 {
            body
        } else {
            format!("{body}<{}>", -i)
        }
    }
}

fn offsets(layout: &[usize], size: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(layout.len());
    let mut acc = 0;
    for &v in layout {
        out.push(acc);
        acc += size(v);
    }
    out
}

/// Position of summand `k` among the copies of its own vertex.
fn copy_index(layout: &[usize], k: usize) -> usize {
    layout[..k].iter().filter(|&&v| v == layout[k]).count()
}

impl<F: Field> fmt::Display for GradedComplex<F> {
    /// One line per term from the lowest index up, each followed by the
    /// rows of the differential leaving it (one row per summand of the
    /// next term).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nv = self.algebra.vertex_count();
        let layout = |i: i64| -> Vec<(usize, usize)> {
            (0..nv)
                .flat_map(|v| (0..self.multiplicity(i, v)).map(move |c| (v, c)))
                .collect()
        };
        let live: Vec<i64> = (self.i_min..=self.i_max)
            .filter(|&i| (0..nv).any(|v| self.multiplicity(i, v) > 0))
            .collect();
        if live.is_empty() {
            return writeln!(f, "0");
        }
        let (first, last) = (live[0], *live.last().expect("nonempty"));
        for i in first..=last {
            writeln!(f, "{i:>4}  {}", self.term_label(i))?;
            if i == last {
                break;
            }
            let (src, dst) = (layout(i), layout(i + 1));
            if src.is_empty() || dst.is_empty() {
                writeln!(f, "      |")?;
                continue;
            }
            let rows: Vec<Vec<String>> = dst
                .iter()
                .map(|&(a, c)| src.iter().map(|&(b, r)| self.entry_label(i, a, c, b, r)).collect())
                .collect();
            let widths: Vec<usize> = (0..src.len())
                .map(|k| rows.iter().map(|row| row[k].chars().count()).max().unwrap_or(1))
                .collect();
            for row in rows {
                let cells: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:<w$}", w = *w))
                    .collect();
                writeln!(f, "      | [{}]", cells.join("  ").trim_end())?;
            }
        }
        if let Some(k) = self.known_through {
            writeln!(f, "(terms known for internal degrees <= {k})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rationals;
    use crate::samples;

    #[test]
    fn branch_complex_terms_and_blocks() {
        let m = samples::branch_module(Rationals);
        let c = koszul_dual_complex(&m).unwrap();
        assert_eq!((c.i_min, c.i_max), (-2, 0));
        assert_eq!(
            c.to_string(),
            "  -2  P3*<2>\n      | [beta*]\n      | [delta*]\n  -1  (P2* + P5*)<1>\n      | [alpha*  0]\n   0  P1*\n"
        );
        let e = c.expand(6).unwrap();
        assert!(e.squares_to_zero());
    }

    #[test]
    fn strand_complex_display() {
        let m = samples::three_top_strand(Rationals, 4);
        let c = koszul_dual_complex(&m).unwrap();
        let text = c.to_string();
        assert!(
            text.starts_with("  -4  P2*<4>\n      | [beta*]\n  -3  P2*<3>\n"),
            "{text}"
        );
        assert!(
            text.contains("  -1  (P1* + P2*)<1>\n      | [0  alpha*]\n   0  P1*\n"),
            "{text}"
        );
        assert!(text.ends_with("(terms known for internal degrees <= 4)\n"));
    }

    #[test]
    fn simple_gives_single_term() {
        let a = Arc::new(samples::commuting_square(Rationals));
        let s = GradedModule::simple(a, 2, 0).unwrap();
        let c = koszul_dual_complex(&s).unwrap();
        assert_eq!(c.to_string(), "   0  P3*\n");
        let e = c.expand(4).unwrap();
        assert_eq!(e.terms.len(), 1);
        assert!(e.diffs.is_empty());
    }

    #[test]
    fn expanded_differential_sends_generator_to_arrow() {
        // d^{-1} at internal degree 1: the P2*<1> generator goes to alpha* in P1*
        let m = samples::three_top_strand(Rationals, 4);
        let e = koszul_dual_complex(&m).unwrap().expand(4).unwrap();
        let d = e.diff(-1).unwrap();
        let block = d.block(1, 1);
        // source at (1, 2*): the P2*<1> generator; P1*<1> contributes nothing at 2*
        assert_eq!(block.shape(), (1, 1));
        assert!(Rationals.is_one(block.get(0, 0)));
        assert!(e.squares_to_zero());
    }

    #[test]
    fn window_must_cover_expansion() {
        let m = samples::three_top_strand(Rationals, 4);
        let c = koszul_dual_complex(&m).unwrap();
        assert_eq!(c.expand(5).unwrap_err(), KDualError::WindowTooSmall(5));
    }
}
