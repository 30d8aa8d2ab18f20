use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::exactlin::{Field, Matrix};
use crate::quiver::{AlgebraElement, Path, QuadraticAlgebra};

use super::GrModError;

/// A graded module stored on the window `[lo, hi]` of internal degrees.
///
/// `dims[d - lo][v]` is `dim e_v M_d`; `action[a][d - lo]` maps the
/// `(d, source(a))` block to the `(d + 1, target(a))` block for
/// `lo <= d < hi`. The truncation flags record whether the represented
/// module continues beyond the window; when they are unset the window holds
/// the whole module.
#[derive(Clone)]
pub struct GradedModule<F: Field> {
    algebra: Arc<QuadraticAlgebra<F>>,
    lo: i64,
    hi: i64,
    dims: Vec<Vec<usize>>,
    action: Vec<Vec<Matrix<F>>>,
    truncated_above: bool,
    truncated_below: bool,
}

/// A relation composite that fails to vanish, or a matrix of the wrong shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape {
        arrow: String,
        degree: i64,
        expected: (usize, usize),
        found: (usize, usize),
    },
    Relation {
        relation: String,
        degree: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape {
                arrow,
                degree,
                expected,
                found,
            } => write!(
                f,
                "action of {arrow} at degree {degree} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Violation::Relation { relation, degree } => {
                write!(f, "relation {relation} does not vanish from degree {degree}")
            }
        }
    }
}

/// Incremental constructor; unset blocks are zero.
pub struct ModuleBuilder<F: Field> {
    algebra: Arc<QuadraticAlgebra<F>>,
    lo: i64,
    hi: i64,
    dims: BTreeMap<(i64, usize), usize>,
    actions: BTreeMap<(usize, i64), Matrix<F>>,
    truncated_above: bool,
}

impl<F: Field> ModuleBuilder<F> {
    pub fn new(algebra: Arc<QuadraticAlgebra<F>>, lo: i64, hi: i64) -> Self {
        ModuleBuilder {
            algebra,
            lo,
            hi,
            dims: BTreeMap::new(),
            actions: BTreeMap::new(),
            truncated_above: false,
        }
    }

    pub fn dim(mut self, degree: i64, vertex: usize, n: usize) -> Self {
        self.dims.insert((degree, vertex), n);
        self
    }

    pub fn action(mut self, arrow: usize, degree: i64, m: Matrix<F>) -> Self {
        self.actions.insert((arrow, degree), m);
        self
    }

    /// [`ModuleBuilder::action`] with an integer matrix.
    pub fn action_i64(self, arrow: usize, degree: i64, rows: &[&[i64]]) -> Self {
        let m = Matrix::from_i64_rows(self.algebra.field(), rows);
        self.action(arrow, degree, m)
    }

    pub fn truncated_above(mut self, yes: bool) -> Self {
        self.truncated_above = yes;
        self
    }

    pub fn build(self) -> Result<GradedModule<F>, GrModError> {
        let nv = self.algebra.vertex_count();
        if self.hi < self.lo {
            return Err(GrModError::EmptyWindow(self.lo, self.hi));
        }
        let mut m = GradedModule::zero(Arc::clone(&self.algebra), self.lo, self.hi);
        for (&(d, v), &n) in &self.dims {
            if v >= nv {
                return Err(GrModError::UnknownVertex(v.to_string()));
            }
            if d < self.lo || d > self.hi {
                return Err(GrModError::OutsideWindow(d));
            }
            m.dims[(d - self.lo) as usize][v] = n;
        }
        m.reset_zero_actions();
        for ((a, d), mat) in self.actions {
            if a >= self.algebra.quiver().arrow_count() {
                return Err(GrModError::UnknownArrow(a.to_string()));
            }
            if d < self.lo || d >= self.hi {
                return Err(GrModError::OutsideWindow(d));
            }
            let expected = m.action_shape(a, d);
            if mat.shape() != expected {
                return Err(GrModError::Shape {
                    arrow: self.algebra.quiver().arrow(a).name.clone(),
                    degree: d,
                    expected,
                    found: mat.shape(),
                });
            }
            m.action[a][(d - self.lo) as usize] = mat;
        }
        m.truncated_above = self.truncated_above;
        Ok(m)
    }
}

impl<F: Field> GradedModule<F> {
    pub fn zero(algebra: Arc<QuadraticAlgebra<F>>, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty window");
        let nv = algebra.vertex_count();
        let na = algebra.quiver().arrow_count();
        let len = (hi - lo + 1) as usize;
        let mut m = GradedModule {
            algebra,
            lo,
            hi,
            dims: vec![vec![0; nv]; len],
            action: vec![Vec::new(); na],
            truncated_above: false,
            truncated_below: false,
        };
        m.reset_zero_actions();
        m
    }

    /// Assembles a module from raw parts; shapes are checked, relations are not.
    pub fn from_parts(
        algebra: Arc<QuadraticAlgebra<F>>,
        lo: i64,
        hi: i64,
        dims: Vec<Vec<usize>>,
        action: Vec<Vec<Matrix<F>>>,
    ) -> Self {
        let m = GradedModule {
            algebra,
            lo,
            hi,
            dims,
            action,
            truncated_above: false,
            truncated_below: false,
        };
        assert_eq!(m.dims.len(), (hi - lo + 1) as usize);
        for a in 0..m.action.len() {
            assert_eq!(m.action[a].len(), (hi - lo) as usize);
            for d in lo..hi {
                assert_eq!(m.action[a][(d - lo) as usize].shape(), m.action_shape(a, d));
            }
        }
        m
    }

    fn reset_zero_actions(&mut self) {
        let na = self.algebra.quiver().arrow_count();
        let f = self.algebra.field().clone();
        self.action = (0..na)
            .map(|a| {
                (self.lo..self.hi)
                    .map(|d| {
                        let (r, c) = self.action_shape(a, d);
                        Matrix::zeros(&f, r, c)
                    })
                    .collect()
            })
            .collect();
    }

    pub fn algebra(&self) -> &Arc<QuadraticAlgebra<F>> {
        &self.algebra
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn truncated_above(&self) -> bool {
        self.truncated_above
    }

    pub fn truncated_below(&self) -> bool {
        self.truncated_below
    }

    pub fn set_truncation(&mut self, above: bool, below: bool) {
        self.truncated_above = above;
        self.truncated_below = below;
    }

    pub fn vertex_count(&self) -> usize {
        self.algebra.vertex_count()
    }

    /// `dim e_v M_d`, zero outside the window.
    pub fn dim(&self, d: i64, v: usize) -> usize {
        if d < self.lo || d > self.hi {
            0
        } else {
            self.dims[(d - self.lo) as usize][v]
        }
    }

    pub fn degree_dim(&self, d: i64) -> usize {
        (0..self.vertex_count()).map(|v| self.dim(d, v)).sum()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().flatten().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Nonzero entries of the dimension vector.
    pub fn dimension_vector(&self) -> BTreeMap<(i64, usize), usize> {
        let mut out = BTreeMap::new();
        for d in self.lo..=self.hi {
            for v in 0..self.vertex_count() {
                let n = self.dim(d, v);
                if n > 0 {
                    out.insert((d, v), n);
                }
            }
        }
        out
    }

    /// Lowest and highest degree with a nonzero part.
    pub fn support(&self) -> Option<(i64, i64)> {
        let ds: Vec<i64> = (self.lo..=self.hi).filter(|&d| self.degree_dim(d) > 0).collect();
        Some((*ds.first()?, *ds.last()?))
    }

    fn action_shape(&self, a: usize, d: i64) -> (usize, usize) {
        let ar = self.algebra.quiver().arrow(a);
        (self.dim(d + 1, ar.target), self.dim(d, ar.source))
    }

    /// Block of arrow `a` from `(d, source)` to `(d + 1, target)`; zero
    /// (correctly shaped) outside the window.
    pub fn act(&self, a: usize, d: i64) -> Matrix<F> {
        if d >= self.lo && d < self.hi {
            self.action[a][(d - self.lo) as usize].clone()
        } else {
            let (r, c) = self.action_shape(a, d);
            Matrix::zeros(self.field(), r, c)
        }
    }

    pub(crate) fn act_ref(&self, a: usize, d: i64) -> Option<&Matrix<F>> {
        if d >= self.lo && d < self.hi {
            Some(&self.action[a][(d - self.lo) as usize])
        } else {
            None
        }
    }

    /// Action of a path from `(d, source)` to `(d + len, target)`.
    pub fn act_path(&self, p: &Path, d: i64) -> Matrix<F> {
        let mut m = Matrix::identity(self.field(), self.dim(d, p.source));
        let mut deg = d;
        for &a in p.arrows.iter().rev() {
            m = self.act(a, deg).mul(&m);
            deg += 1;
        }
        m
    }

    /// Block `(d, source) -> (d + k, target)` of a homogeneous element of degree `k`.
    pub fn act_element(&self, x: &AlgebraElement<F>, d: i64, source: usize, target: usize) -> Matrix<F> {
        let f = self.field();
        let comp = self.algebra.component(x.degree);
        let mut out = Matrix::zeros(f, self.dim(d + x.degree as i64, target), self.dim(d, source));
        for i in comp.basis_between(source, target) {
            if f.is_zero(&x.coords[i]) {
                continue;
            }
            out = out.add(&self.act_path(comp.basis_path(i), d).scale(&x.coords[i]));
        }
        out
    }

    /// Empty iff shapes match and every relation acts as zero inside the window.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let q = self.algebra.quiver();
        for a in 0..q.arrow_count() {
            for d in self.lo..self.hi {
                let expected = self.action_shape(a, d);
                let found = self.action[a][(d - self.lo) as usize].shape();
                if expected != found {
                    out.push(Violation::Shape {
                        arrow: q.arrow(a).name.clone(),
                        degree: d,
                        expected,
                        found,
                    });
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        let f = self.field();
        for terms in self.algebra.relation_terms() {
            let (s, t) = (terms[0].1.source, terms[0].1.target);
            for d in self.lo..=self.hi - 2 {
                let mut acc = Matrix::zeros(f, self.dim(d + 2, t), self.dim(d, s));
                for (c, p) in &terms {
                    acc = acc.add(&self.act_path(p, d).scale(c));
                }
                if !acc.is_zero() {
                    out.push(Violation::Relation {
                        relation: self.algebra.format_relation(&terms),
                        degree: d,
                    });
                }
            }
        }
        out
    }

    /// `(M⟨i⟩)_n = M_{n-i}`.
    pub fn shift(&self, i: i64) -> Self {
        let mut m = self.clone();
        m.lo += i;
        m.hi += i;
        m
    }

    /// Same module on another window, padding with zeros or cutting.
    /// Cutting away nonzero parts marks the module as truncated.
    pub fn with_window(&self, lo: i64, hi: i64) -> Self {
        let mut m = GradedModule::zero(Arc::clone(&self.algebra), lo, hi);
        for d in lo..=hi {
            for v in 0..self.vertex_count() {
                m.dims[(d - lo) as usize][v] = self.dim(d, v);
            }
        }
        m.reset_zero_actions();
        for a in 0..self.algebra.quiver().arrow_count() {
            for d in lo..hi {
                if let Some(mat) = self.act_ref(a, d) {
                    m.action[a][(d - lo) as usize] = mat.clone();
                }
            }
        }
        let cut_above = (hi + 1..=self.hi).any(|d| self.degree_dim(d) > 0);
        let cut_below = (self.lo..lo).any(|d| self.degree_dim(d) > 0);
        m.truncated_above = self.truncated_above || cut_above;
        m.truncated_below = self.truncated_below || cut_below;
        m
    }

    /// Highest degree up to which the stored data agrees with the module it
    /// represents.
    pub fn valid_top(&self) -> Option<i64> {
        self.truncated_above.then_some(self.hi)
    }

    /// Blockwise direct sum over the union of the windows.
    pub fn direct_sum(parts: &[Self]) -> Result<Self, GrModError> {
        let first = parts.first().ok_or(GrModError::EmptySum)?;
        for p in parts {
            if *p.algebra != *first.algebra {
                return Err(GrModError::AlgebraMismatch);
            }
        }
        let lo = parts.iter().map(|p| p.lo).min().expect("nonempty");
        let hi = parts.iter().map(|p| p.hi).max().expect("nonempty");
        let parts: Vec<Self> = parts.iter().map(|p| p.with_window(lo, hi)).collect();
        let f = first.field().clone();
        let mut m = GradedModule::zero(Arc::clone(&first.algebra), lo, hi);
        for d in lo..=hi {
            for v in 0..m.vertex_count() {
                m.dims[(d - lo) as usize][v] = parts.iter().map(|p| p.dim(d, v)).sum();
            }
        }
        m.reset_zero_actions();
        for a in 0..m.action.len() {
            for d in lo..hi {
                let (r, c) = m.action_shape(a, d);
                let mut block = Matrix::zeros(&f, r, c);
                let (mut r0, mut c0) = (0, 0);
                for p in &parts {
                    let pb = p.act(a, d);
                    block.set_block(r0, c0, &pb);
                    r0 += pb.rows();
                    c0 += pb.cols();
                }
                m.action[a][(d - lo) as usize] = block;
            }
        }
        m.truncated_above = parts.iter().any(|p| p.truncated_above);
        m.truncated_below = parts.iter().any(|p| p.truncated_below);
        Ok(m)
    }

    /// Graded dual over the opposite algebra: `(DM)_{-d} = Hom(M_d, k)`,
    /// with transposed action blocks.
    pub fn graded_dual(&self) -> Self {
        let op = Arc::new(self.algebra.opposite());
        self.graded_dual_over(op)
    }

    /// [`GradedModule::graded_dual`] over a caller-supplied copy of the opposite algebra.
    pub fn graded_dual_over(&self, op: Arc<QuadraticAlgebra<F>>) -> Self {
        let (lo, hi) = (-self.hi, -self.lo);
        let mut m = GradedModule::zero(op, lo, hi);
        for d in self.lo..=self.hi {
            for v in 0..self.vertex_count() {
                m.dims[(-d - lo) as usize][v] = self.dim(d, v);
            }
        }
        m.reset_zero_actions();
        for a in 0..self.action.len() {
            for d in self.lo..self.hi {
                // reversed arrow goes from degree -d-1 to -d
                m.action[a][(-d - 1 - lo) as usize] = self.act(a, d).transpose();
            }
        }
        m.truncated_above = self.truncated_below;
        m.truncated_below = self.truncated_above;
        m
    }

    /// Multiplicity of each `(degree, vertex)` in `M / JM`.
    pub fn top_degrees(&self) -> BTreeMap<(i64, usize), usize> {
        let mut out = BTreeMap::new();
        for d in self.lo..=self.hi {
            for v in 0..self.vertex_count() {
                let n = self.dim(d, v);
                if n == 0 {
                    continue;
                }
                let r = self.incoming_image(d, v).rank();
                if n > r {
                    out.insert((d, v), n - r);
                }
            }
        }
        out
    }

    /// Distinct degrees carrying generators, ascending.
    pub fn generation_degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.top_degrees().keys().map(|&(d, _)| d).collect();
        ds.dedup();
        ds
    }

    /// `[act(a1) | act(a2) | ...]` over arrows into `v`, from degree `d - 1`.
    pub(crate) fn incoming_image(&self, d: i64, v: usize) -> Matrix<F> {
        let q = self.algebra.quiver();
        let mut img = Matrix::zeros(self.field(), self.dim(d, v), 0);
        for a in 0..q.arrow_count() {
            if q.arrow(a).target == v {
                img = img.hstack(&self.act(a, d - 1));
            }
        }
        img
    }

    /// Structural equality on the common window (zeros outside each window).
    pub fn same_data(&self, other: &Self) -> bool {
        if *self.algebra != *other.algebra {
            return false;
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi.max(other.hi);
        let a = self.with_window(lo, hi);
        let b = other.with_window(lo, hi);
        a.dims == b.dims && a.action == b.action
    }

    /// One-line description of the dimension vector, e.g. `(0,1):1 (1,2):1`.
    pub fn dims_string(&self) -> String {
        let q = self.algebra.quiver();
        let parts: Vec<String> = self
            .dimension_vector()
            .iter()
            .map(|(&(d, v), n)| format!("({d},{}):{n}", q.vertex_name(v)))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl<F: Field> fmt::Debug for GradedModule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedModule[{}, {}]{{{}}}", self.lo, self.hi, self.dims_string())
    }
}
