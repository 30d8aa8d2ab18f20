use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::exactlin::{annihilator, same_span, Field, Matrix};

use super::paths::{Path, Quiver};
use super::QuiverError;

/// Suffix marking arrows and vertices of the quadratic dual.
pub const DUAL_SUFFIX: &str = "*";
/// Suffix marking arrows and vertices of the opposite algebra.
pub const OPPOSITE_SUFFIX: &str = "^op";

fn toggle_suffix(name: &str, suffix: &str) -> String {
    match name.strip_suffix(suffix) {
        Some(base) if !base.is_empty() => base.to_string(),
        _ => format!("{name}{suffix}"),
    }
}

/// `kQ/(R)` with `R` a subspace of the span of length-2 paths.
///
/// The relation subspace is stored in canonical form (columns are the
/// transposed rows of its reduced echelon form), so two algebras with the
/// same quiver and relation subspace compare equal. Graded components are
/// computed on demand and memoized; the memo is the only interior
/// mutability and is safe to fill from several threads.
#[derive(Debug)]
pub struct QuadraticAlgebra<F: Field> {
    field: F,
    quiver: Quiver,
    quadratic_paths: Vec<Path>,
    relations: Matrix<F>,
    components: RwLock<HashMap<usize, Arc<GradedComponent<F>>>>,
}

/// Basis of `Λ_d`: normal-form paths (the non-pivot paths of the reduced
/// degree-d relation span) and the projection from path space onto it.
#[derive(Clone, Debug)]
pub struct GradedComponent<F: Field> {
    pub degree: usize,
    /// All paths of length `degree`; the ambient basis.
    pub paths: Vec<Path>,
    /// Indices into `paths` of the basis paths of the quotient.
    pub basis: Vec<usize>,
    /// `dim × paths.len()`; column `j` is the image of `paths[j]`.
    pub projection: Matrix<F>,
    /// Columns span the degree-`degree` part of the two-sided ideal.
    pub relation_span: Matrix<F>,
    index: HashMap<Path, usize>,
}

impl<F: Field> GradedComponent<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_path(&self, i: usize) -> &Path {
        &self.paths[self.basis[i]]
    }

    pub fn path_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Coordinates of a path of this length in the quotient basis.
    pub fn project_path(&self, p: &Path) -> Vec<F::Elem> {
        let j = self.path_index(p).expect("path of matching length");
        self.projection.column(j)
    }

    /// Basis indices with the given endpoints.
    pub fn basis_between(&self, source: usize, target: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| {
                let p = self.basis_path(i);
                p.source == source && p.target == target
            })
            .collect()
    }

    /// Basis indices starting at `source`.
    pub fn basis_from(&self, source: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis_path(i).source == source)
            .collect()
    }
}

/// A homogeneous element, in the basis of its graded component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement<F: Field> {
    pub degree: usize,
    pub coords: Vec<F::Elem>,
}

impl<F: Field> AlgebraElement<F> {
    pub fn is_zero(&self, field: &F) -> bool {
        self.coords.iter().all(|c| field.is_zero(c))
    }
}

impl<F: Field> QuadraticAlgebra<F> {
    /// `relations` has one column per relation, written in the basis of
    /// length-2 paths (see [`QuadraticAlgebra::quadratic_paths`]).
    pub fn new(field: F, quiver: Quiver, relations: Matrix<F>) -> Result<Self, QuiverError> {
        let quadratic_paths = quiver.paths(2, None, None);
        if relations.rows() != quadratic_paths.len() {
            return Err(QuiverError::RelationShape {
                expected: quadratic_paths.len(),
                found: relations.rows(),
            });
        }
        let rank = relations.rank();
        if rank != relations.cols() {
            return Err(QuiverError::DependentRelations {
                rank,
                columns: relations.cols(),
            });
        }
        for j in 0..relations.cols() {
            let mut ends = (0..relations.rows())
                .filter(|&i| !field.is_zero(relations.get(i, j)))
                .map(|i| (quadratic_paths[i].source, quadratic_paths[i].target));
            let first = ends.next();
            if ends.any(|e| Some(e) != first) {
                return Err(QuiverError::MixedEndpoints(j));
            }
        }
        let relations = canonical_columns(&relations);
        Ok(QuadraticAlgebra {
            field,
            quiver,
            quadratic_paths,
            relations,
            components: RwLock::new(HashMap::new()),
        })
    }

    /// Builds the relation matrix from named terms `(coefficient, left arrow,
    /// right arrow)`, where `(c, "beta", "alpha")` stands for `c·βα`.
    pub fn from_named_relations(
        field: F,
        quiver: Quiver,
        relations: &[Vec<(F::Elem, &str, &str)>],
    ) -> Result<Self, QuiverError> {
        let paths = quiver.paths(2, None, None);
        let mut cols = Vec::new();
        for rel in relations {
            let mut col = vec![field.zero(); paths.len()];
            for (c, left, right) in rel {
                let l = quiver.arrow_index(left)?;
                let r = quiver.arrow_index(right)?;
                let p = Path::arrow(&quiver, l)
                    .compose(&Path::arrow(&quiver, r))
                    .ok_or_else(|| QuiverError::NotComposable(format!("{left} {right}")))?;
                let i = paths.iter().position(|q| *q == p).expect("length-2 path");
                col[i] = field.add(&col[i], c);
            }
            cols.push(col);
        }
        let m = Matrix::from_columns(&field, paths.len(), &cols);
        Self::new(field, quiver, m)
    }

    /// Path algebra without relations.
    pub fn free(field: F, quiver: Quiver) -> Self {
        let n = quiver.paths(2, None, None).len();
        let m = Matrix::zeros(&field, n, 0);
        Self::new(field, quiver, m).expect("empty relation set is valid")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn quadratic_paths(&self) -> &[Path] {
        &self.quadratic_paths
    }

    /// Canonical basis of the relation subspace, one relation per column.
    pub fn relations(&self) -> &Matrix<F> {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    /// Relations as `(coefficient, path)` term lists, in canonical order.
    pub fn relation_terms(&self) -> Vec<Vec<(F::Elem, &Path)>> {
        (0..self.relations.cols())
            .map(|j| {
                (0..self.relations.rows())
                    .filter(|&i| !self.field.is_zero(self.relations.get(i, j)))
                    .map(|i| (self.relations.get(i, j).clone(), &self.quadratic_paths[i]))
                    .collect()
            })
            .collect()
    }

    /// Same quiver and relation subspace.
    pub fn same_presentation(&self, other: &Self) -> bool {
        self.field == other.field && self.quiver == other.quiver && same_span(&self.relations, &other.relations)
    }

    /// Basis and projection for `Λ_d`, memoized.
    pub fn component(&self, d: usize) -> Arc<GradedComponent<F>> {
        if let Some(c) = self.components.read().expect("memo lock").get(&d) {
            return Arc::clone(c);
        }
        let built = Arc::new(self.build_component(d));
        let mut memo = self.components.write().expect("memo lock");
        Arc::clone(memo.entry(d).or_insert(built))
    }

    pub fn dim(&self, d: usize) -> usize {
        self.component(d).dim()
    }

    fn build_component(&self, d: usize) -> GradedComponent<F> {
        let f = &self.field;
        let paths = self.quiver.paths(d, None, None);
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut generators: Vec<Vec<F::Elem>> = Vec::new();
        if d >= 2 {
            let terms = self.relation_terms();
            for rel in &terms {
                let (rs, rt) = (rel[0].1.source, rel[0].1.target);
                for left_len in 0..=d - 2 {
                    let lefts = self.quiver.paths(left_len, Some(rt), None);
                    let rights = self.quiver.paths(d - 2 - left_len, None, Some(rs));
                    for l in &lefts {
                        for r in &rights {
                            let mut v = vec![f.zero(); paths.len()];
                            for (c, p) in rel {
                                let full = l.compose(p).and_then(|lp| lp.compose(r)).expect("endpoints match");
                                let i = index[&full];
                                v[i] = f.add(&v[i], c);
                            }
                            generators.push(v);
                        }
                    }
                }
            }
        }
        let gen_rows = Matrix::from_vec(
            f,
            generators.len(),
            paths.len(),
            generators.into_iter().flatten().collect(),
        );
        let rr = gen_rows.rref();
        let reduced = rr.reduced.select_rows(&(0..rr.rank).collect::<Vec<_>>());
        let basis: Vec<usize> = (0..paths.len()).filter(|j| !rr.pivots.contains(j)).collect();
        let mut projection = Matrix::zeros(f, basis.len(), paths.len());
        for (k, &b) in basis.iter().enumerate() {
            projection.set(k, b, f.one());
        }
        for (r, &pc) in rr.pivots.iter().enumerate() {
            for (k, &b) in basis.iter().enumerate() {
                projection.set(k, pc, f.neg(reduced.get(r, b)));
            }
        }
        GradedComponent {
            degree: d,
            paths,
            basis,
            projection,
            relation_span: reduced.transpose(),
            index,
        }
    }

    pub fn zero_element(&self, d: usize) -> AlgebraElement<F> {
        AlgebraElement {
            degree: d,
            coords: vec![self.field.zero(); self.dim(d)],
        }
    }

    pub fn basis_element(&self, d: usize, i: usize) -> AlgebraElement<F> {
        let mut e = self.zero_element(d);
        e.coords[i] = self.field.one();
        e
    }

    /// Image of a path in `Λ_{len}`.
    pub fn path_element(&self, p: &Path) -> AlgebraElement<F> {
        AlgebraElement {
            degree: p.len(),
            coords: self.component(p.len()).project_path(p),
        }
    }

    pub fn idempotent(&self, v: usize) -> AlgebraElement<F> {
        self.path_element(&Path::trivial(v))
    }

    pub fn arrow_element(&self, a: usize) -> AlgebraElement<F> {
        self.path_element(&Path::arrow(&self.quiver, a))
    }

    /// `x · y` (apply `y` first), reduced to normal form.
    pub fn multiply(&self, x: &AlgebraElement<F>, y: &AlgebraElement<F>) -> AlgebraElement<F> {
        let f = &self.field;
        let cx = self.component(x.degree);
        let cy = self.component(y.degree);
        let cxy = self.component(x.degree + y.degree);
        let mut raw = vec![f.zero(); cxy.paths.len()];
        for (i, a) in x.coords.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in y.coords.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                if let Some(p) = cx.basis_path(i).compose(cy.basis_path(j)) {
                    let k = cxy.path_index(&p).expect("length adds up");
                    raw[k] = f.add(&raw[k], &f.mul(a, b));
                }
            }
        }
        AlgebraElement {
            degree: x.degree + y.degree,
            coords: cxy.projection.mul_vec(&raw),
        }
    }

    /// Arrows reversed, relation paths reversed, names toggled with `^op`.
    pub fn opposite(&self) -> Self {
        let quiver = self.quiver.reversed_renamed(|n| toggle_suffix(n, OPPOSITE_SUFFIX));
        let op_paths = quiver.paths(2, None, None);
        let f = &self.field;
        let mut m = Matrix::zeros(f, op_paths.len(), self.relations.cols());
        for (i, p) in self.quadratic_paths.iter().enumerate() {
            let rp = p.reversed();
            let k = op_paths.iter().position(|q| *q == rp).expect("reversed path exists");
            for j in 0..self.relations.cols() {
                m.set(k, j, self.relations.get(i, j).clone());
            }
        }
        Self::new(f.clone(), quiver, m).expect("reversal preserves validity")
    }

    /// Same quiver (names toggled with `*`) with relations the annihilator of
    /// `R` under the Kronecker pairing of length-2 paths.
    pub fn quadratic_dual(&self) -> Self {
        let quiver = self.quiver.renamed(|n| toggle_suffix(n, DUAL_SUFFIX));
        let perp = annihilator(&self.field, &self.relations, self.quadratic_paths.len());
        Self::new(self.field.clone(), quiver, perp).expect("annihilator of a bimodule is a bimodule")
    }

    /// Same presentation with the quiver's names passed through `rename`.
    pub fn with_quiver_names(&self, rename: impl Fn(&str) -> String) -> Self {
        Self::new(self.field.clone(), self.quiver.renamed(rename), self.relations.clone())
            .expect("renaming preserves validity")
    }

    /// Human-readable relation, e.g. `eps* gamma* + zeta* delta*`.
    pub fn format_relation(&self, terms: &[(F::Elem, &Path)]) -> String {
        format_terms(&self.field, &self.quiver, terms)
    }
}

pub(crate) fn format_terms<F: Field>(field: &F, quiver: &Quiver, terms: &[(F::Elem, &Path)]) -> String {
    use crate::exactlin::{format_elem, is_negative};
    let mut out = String::new();
    for (n, (c, p)) in terms.iter().enumerate() {
        let neg = is_negative(field, c);
        let mag = if neg { field.neg(c) } else { c.clone() };
        if n == 0 {
            if neg {
                out.push_str("- ");
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !field.is_one(&mag) {
            out.push_str(&format_elem(field, &mag));
            out.push(' ');
        }
        out.push_str(&quiver.format_path(p));
    }
    out
}

impl<F: Field> Clone for QuadraticAlgebra<F> {
    fn clone(&self) -> Self {
        Self {
            field: self.field.clone(),
            quiver: self.quiver.clone(),
            quadratic_paths: self.quadratic_paths.clone(),
            relations: self.relations.clone(),
            components: RwLock::new(self.components.read().expect("memo lock").clone()),
        }
    }
}

impl<F: Field> PartialEq for QuadraticAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.quiver == other.quiver && self.relations == other.relations
    }
}

/// Columns spanning the same space, in reduced echelon order.
fn canonical_columns<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let rr = m.transpose().rref();
    rr.reduced.select_rows(&(0..rr.rank).collect::<Vec<_>>()).transpose()
}
