//! Minimal graded projective resolutions, Betti tables, and the Koszul
//! tests built on them.
//!
//! Syzygies are computed degreewise as kernels of the expanded cover maps.
//! Betti numbers at internal degree `l` only depend on the module in
//! degrees `<= l`, so the table is exact up to the resolution's top degree
//! whatever the homological step.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exactlin::{quotient_basis, Field, Matrix};
use crate::grmod::{assoc_graded, kernel_family, subquotient, Family, GradedModule, ModuleMap};
use crate::quiver::QuadraticAlgebra;

pub const DEFAULT_JMAX: usize = 6;
pub const DEFAULT_DMAX: i64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("module is not bounded below (its window was cut from below)")]
    UnboundedBelow,
    #[error("module is generated in several degrees {0:?}")]
    NotSingleDegree(Vec<i64>),
}

/// `β(j, l, v)`: multiplicity of `P_v⟨l⟩` in step `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i64, usize), usize>,
    pub j_max: usize,
    /// Entries are exact for internal degrees `<= valid_top`.
    pub valid_top: i64,
    pub vertex_names: Vec<String>,
}

impl BettiTable {
    pub fn get(&self, j: usize, l: i64, v: usize) -> usize {
        self.entries.get(&(j, l, v)).copied().unwrap_or(0)
    }

    /// `Σ_v β(j, l, v)`.
    pub fn total(&self, j: usize, l: i64) -> usize {
        (0..self.vertex_names.len()).map(|v| self.get(j, l, v)).sum()
    }

    /// Nonzero entries with `l - j != offset`, in order.
    pub fn off_diagonal(&self, offset: i64) -> Vec<(usize, i64, usize, usize)> {
        self.entries
            .iter()
            .filter(|(&(j, l, _), &n)| n > 0 && l - j as i64 != offset)
            .map(|(&(j, l, v), &n)| (j, l, v, n))
            .collect()
    }

    fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.entries.keys().map(|k| k.1).min()?;
        let hi = self.entries.keys().map(|k| k.1).max()?;
        Some((lo, hi))
    }
}

impl fmt::Display for BettiTable {
    /// Rows are homological steps, columns internal degrees; each cell lists
    /// `vertex^multiplicity` summands, `.` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some((lo, hi)) = self.degree_range() else {
            return writeln!(f, "(zero table, valid for degrees <= {})", self.valid_top);
        };
        let cell = |j: usize, l: i64| -> String {
            let parts: Vec<String> = (0..self.vertex_names.len())
                .filter_map(|v| {
                    let n = self.get(j, l, v);
                    match n {
                        0 => None,
                        1 => Some(self.vertex_names[v].clone()),
                        _ => Some(format!("{}^{n}", self.vertex_names[v])),
                    }
                })
                .collect();
            if parts.is_empty() {
                ".".to_string()
            } else {
                parts.join("+")
            }
        };
        let mut grid = vec![vec!["j\\l".to_string()]];
        grid[0].extend((lo..=hi).map(|l| l.to_string()));
        for j in 0..=self.j_max {
            let mut row = vec![j.to_string()];
            row.extend((lo..=hi).map(|l| cell(j, l)));
            grid.push(row);
        }
        let ncols = grid[0].len();
        let widths: Vec<usize> = (0..ncols)
            .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        for row in &grid {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}", w = *w))
                .collect();
            writeln!(f, "{}", line.join("  ").trim_end())?;
        }
        writeln!(f, "(steps <= {}, degrees <= {})", self.j_max, self.valid_top)
    }
}

/// One step: the projective cover `⊕ P_v⟨d⟩ -> Ω` and the next syzygy.
#[derive(Clone, Debug)]
pub struct ResolutionStep<F: Field> {
    /// `(vertex, shift)` of each summand, in summand order.
    pub cover: Vec<(usize, i64)>,
    pub cover_module: GradedModule<F>,
    pub cover_map: ModuleMap<F>,
    pub syzygy: GradedModule<F>,
    /// The kernel lies in the radical of the cover, so the cover induces
    /// an isomorphism on tops.
    pub minimal: bool,
}

#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub betti: BettiTable,
    pub steps: Vec<ResolutionStep<F>>,
}

/// Minimal resolution up to step `j_max` and internal degree `d_max`
/// (further capped by the module's window when it is truncated above).
pub fn minimal_resolution<F: Field>(
    m: &GradedModule<F>,
    j_max: usize,
    d_max: i64,
) -> Result<Resolution<F>, ResolveError> {
    if m.truncated_below() {
        return Err(ResolveError::UnboundedBelow);
    }
    let algebra = Arc::clone(m.algebra());
    let (lo, hi) = m.window();
    let top = if m.truncated_above() { d_max.min(hi) } else { d_max };
    let mut betti = BettiTable {
        entries: BTreeMap::new(),
        j_max,
        valid_top: top,
        vertex_names: algebra.quiver().vertices().to_vec(),
    };
    let mut steps = Vec::new();
    if top < lo {
        return Ok(Resolution { betti, steps });
    }
    let mut current = m.with_window(lo, top);
    for j in 0..=j_max {
        let tops = current.top_degrees();
        for (&(d, v), &n) in &tops {
            betti.entries.insert((j, d, v), n);
        }
        if j == j_max || tops.is_empty() {
            break;
        }
        let step = cover_step(&algebra, &current, lo, top);
        current = step.syzygy.clone();
        steps.push(step);
    }
    Ok(Resolution { betti, steps })
}

fn cover_step<F: Field>(
    algebra: &Arc<QuadraticAlgebra<F>>,
    module: &GradedModule<F>,
    lo: i64,
    top: i64,
) -> ResolutionStep<F> {
    let f = module.field().clone();
    let nv = module.vertex_count();
    // generators: (vertex, degree, representative vector)
    let mut gens: Vec<(usize, i64, Vec<F::Elem>)> = Vec::new();
    for d in lo..=top {
        for v in 0..nv {
            let n = module.dim(d, v);
            if n == 0 {
                continue;
            }
            let img = module.incoming_image(d, v).column_space();
            let comp = quotient_basis(&f, n, &img).expect("independent columns");
            for c in 0..comp.cols() {
                gens.push((v, d, comp.column(c)));
            }
        }
    }
    let parts: Vec<GradedModule<F>> = gens
        .iter()
        .map(|&(v, d, _)| GradedModule::projective(Arc::clone(algebra), v, d, top).expect("valid vertex"))
        .map(|p| p.with_window(lo, top))
        .collect();
    let cover_module = GradedModule::direct_sum(&parts).expect("same algebra");
    let mut map = ModuleMap::zero(&cover_module, module, lo, top);
    for e in lo..=top {
        for w in 0..nv {
            let mut cols: Vec<Vec<F::Elem>> = Vec::new();
            for (v, d, rep) in &gens {
                if e < *d {
                    continue;
                }
                let comp = algebra.component((e - d) as usize);
                for i in comp.basis_between(*v, w) {
                    cols.push(module.act_path(comp.basis_path(i), *d).mul_vec(rep));
                }
            }
            *map.block_mut(e, w) = Matrix::from_columns(&f, module.dim(e, w), &cols);
        }
    }
    let kernel = kernel_family(&map);
    let radical = Family::full(&cover_module).arrow_image(&cover_module);
    let minimal = (lo..=top).all(|d| {
        (0..nv).all(|v| {
            let r = radical.block(d, v);
            r.hstack(kernel.block(d, v)).rank() == r.rank()
        })
    });
    let syzygy = subquotient(&cover_module, &kernel, &Family::zero(&cover_module)).module;
    ResolutionStep {
        cover: gens.iter().map(|&(v, d, _)| (v, d)).collect(),
        cover_module,
        cover_map: map,
        syzygy,
        minimal,
    }
}

/// Verdicts are only ever "yes up to the stated bounds".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    YesUpTo {
        j_max: usize,
        d_max: i64,
    },
    /// An offending Betti entry `(j, l, vertex)`.
    No {
        j: usize,
        l: i64,
        vertex: usize,
    },
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::YesUpTo { .. })
    }
}

fn linear_verdict(betti: &BettiTable, offset: i64) -> Verdict {
    match betti.off_diagonal(offset).first() {
        Some(&(j, l, vertex, _)) => Verdict::No { j, l, vertex },
        None => Verdict::YesUpTo {
            j_max: betti.j_max,
            d_max: betti.valid_top,
        },
    }
}

/// `β(j, l, ·) = 0` for `l != j` within the bounds.
pub fn is_koszul_module<F: Field>(m: &GradedModule<F>, j_max: usize, d_max: i64) -> Result<Verdict, ResolveError> {
    let r = minimal_resolution(m, j_max, d_max)?;
    Ok(linear_verdict(&r.betti, 0))
}

/// For a module generated in the single degree `g`: `β(j, l, ·) = 0` unless
/// `l = j + g`. The zero module passes vacuously.
pub fn has_linear_resolution<F: Field>(m: &GradedModule<F>, j_max: usize, d_max: i64) -> Result<Verdict, ResolveError> {
    let gens = m.generation_degrees();
    match gens.as_slice() {
        [] => Ok(Verdict::YesUpTo { j_max, d_max }),
        [g] => {
            let r = minimal_resolution(m, j_max, d_max + g)?;
            Ok(match linear_verdict(&r.betti, *g) {
                Verdict::YesUpTo { j_max, d_max } => Verdict::YesUpTo {
                    j_max,
                    d_max: d_max - g,
                },
                no => no,
            })
        }
        _ => Err(ResolveError::NotSingleDegree(gens)),
    }
}

/// `Λ_0` is a Koszul module, checked with `d_max = j_max`.
pub fn is_koszul_algebra<F: Field>(a: &Arc<QuadraticAlgebra<F>>, j_max: usize) -> Verdict {
    let top = GradedModule::semisimple_top(Arc::clone(a));
    is_koszul_module(&top, j_max, j_max as i64).expect("bounded below")
}

/// `gr(M)` is a Koszul module.
pub fn is_weakly_koszul_gr<F: Field>(m: &GradedModule<F>, j_max: usize, d_max: i64) -> Result<Verdict, ResolveError> {
    is_koszul_module(&assoc_graded(m), j_max, d_max)
}
