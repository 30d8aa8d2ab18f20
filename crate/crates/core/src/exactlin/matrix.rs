use std::fmt;

use super::field::{format_elem, Field};
use super::LinAlgError;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<F: Field> {
    pub reduced: Matrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Shape-explicit constructor, so that `0 × n` and `n × 0` matrices keep their shape.
    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_i64_rows(field: &F, rows: &[&[i64]]) -> Self {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F::Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols,
            other.rows,
            "shape mismatch in product: {:?} * {:?}",
            self.shape(),
            other.shape()
        );
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut out = Self::zeros(&self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(&self.field, self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.row(i).iter().cloned());
        }
        Matrix {
            field: self.field.clone(),
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Block `[r0, r0+nr) × [c0, c0+nc)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        let mut out = Self::zeros(&self.field, nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// Reduced row echelon form with pivots chosen as the first nonzero
    /// entry in column order.
    pub fn rref(&self) -> Rref<F> {
        let (reduced, pivots) = self.rref_with(None);
        Rref {
            rank: pivots.len(),
            reduced,
            pivots,
        }
    }

    /// Row reduction, optionally recording the row operations in `track`
    /// (which must have `self.rows` rows).
    fn rref_with(&self, mut track: Option<&mut Self>) -> (Self, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            if let Some(t) = track.as_deref_mut() {
                t.swap_rows(r, p);
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            m.scale_row(r, &inv);
            if let Some(t) = track.as_deref_mut() {
                t.scale_row(r, &inv);
            }
            for i in 0..m.rows {
                if i != r && !f.is_zero(m.get(i, c)) {
                    let factor = m.get(i, c).clone();
                    m.add_row_multiple(i, r, &f.neg(&factor));
                    if let Some(t) = track.as_deref_mut() {
                        t.add_row_multiple(i, r, &f.neg(&factor));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &F::Elem) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = self.field.mul(&self.data[idx], c);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &F::Elem) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if self.field.is_zero(s) {
                continue;
            }
            let term = self.field.mul(s, c);
            let idx = dst * self.cols + j;
            self.data[idx] = self.field.add(&self.data[idx], &term);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Columns form a basis of the null space; free variables are set to
    /// unit vectors in increasing column order.
    pub fn kernel_basis(&self) -> Self {
        let Rref { reduced, pivots, .. } = self.rref();
        kernel_from_rref(&self.field, &reduced, &pivots, self.cols)
    }

    /// Columns form a basis of the column space, chosen among the original columns.
    pub fn column_space(&self) -> Self {
        let pivots = self.rref().pivots;
        self.select_columns(&pivots)
    }

    /// Some `X` with `self · X = rhs`, if one exists.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        LinearSolver::new(self).solve_particular(rhs)
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let mut t = Self::identity(&self.field, self.rows);
        let (reduced, pivots) = self.rref_with(Some(&mut t));
        if pivots.len() == self.rows && reduced == Self::identity(&self.field, self.rows) {
            Some(t)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `L` with `L · self = I` for a matrix of full column rank.
    pub fn left_inverse(&self) -> Option<Self> {
        let mut t = Self::identity(&self.field, self.rows);
        let (_, pivots) = self.rref_with(Some(&mut t));
        if pivots.len() != self.cols {
            return None;
        }
        let idx: Vec<usize> = (0..self.cols).collect();
        Some(t.select_rows(&idx))
    }
}

fn kernel_from_rref<F: Field>(field: &F, reduced: &Matrix<F>, pivots: &[usize], cols: usize) -> Matrix<F> {
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut k = Matrix::zeros(field, cols, free.len());
    for (jj, &fc) in free.iter().enumerate() {
        k.set(fc, jj, field.one());
        for (r, &pc) in pivots.iter().enumerate() {
            k.set(pc, jj, field.neg(reduced.get(r, fc)));
        }
    }
    k
}

/// Row-reduction of a fixed coefficient matrix, reusable for many right-hand sides.
#[derive(Clone, Debug)]
pub struct LinearSolver<F: Field> {
    transform: Matrix<F>,
    reduced: Matrix<F>,
    pivots: Vec<usize>,
    cols: usize,
}

impl<F: Field> LinearSolver<F> {
    pub fn new(a: &Matrix<F>) -> Self {
        let mut t = Matrix::identity(a.field(), a.rows());
        let (reduced, pivots) = a.rref_with(Some(&mut t));
        LinearSolver {
            transform: t,
            reduced,
            pivots,
            cols: a.cols(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the solution space of the homogeneous system.
    pub fn kernel(&self) -> Matrix<F> {
        kernel_from_rref(self.reduced.field(), &self.reduced, &self.pivots, self.cols)
    }

    /// Particular solution of `A x = b` for a single vector `b`.
    pub fn solve_vec(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = self.reduced.field();
        let tb = self.transform.mul_vec(b);
        if tb[self.rank()..].iter().any(|x| !f.is_zero(x)) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &pc) in self.pivots.iter().enumerate() {
            x[pc] = tb[r].clone();
        }
        Some(x)
    }

    pub fn solve_particular(&self, rhs: &Matrix<F>) -> Option<Matrix<F>> {
        let f = rhs.field();
        let mut cols = Vec::with_capacity(rhs.cols());
        for j in 0..rhs.cols() {
            cols.push(self.solve_vec(&rhs.column(j))?);
        }
        Some(Matrix::from_columns(f, self.cols, &cols))
    }
}

/// Columns completing the column space of `sub` to the ambient space,
/// chosen as the standard basis vectors at the non-pivot coordinates of
/// `sub`'s row-reduced transpose.
pub fn quotient_basis<F: Field>(field: &F, ambient_dim: usize, sub: &Matrix<F>) -> Result<Matrix<F>, LinAlgError> {
    assert_eq!(sub.rows(), ambient_dim, "subspace has wrong ambient dimension");
    let Rref { rank, pivots, .. } = sub.transpose().rref();
    if rank != sub.cols() {
        return Err(LinAlgError::DependentSubspace {
            rank,
            columns: sub.cols(),
        });
    }
    let complement: Vec<usize> = (0..ambient_dim).filter(|c| !pivots.contains(c)).collect();
    Ok(Matrix::identity(field, ambient_dim).select_columns(&complement))
}

/// Basis of the functionals vanishing on the column space of `sub`,
/// written as column vectors under the standard pairing.
pub fn annihilator<F: Field>(field: &F, sub: &Matrix<F>, ambient_dim: usize) -> Matrix<F> {
    assert_eq!(sub.rows(), ambient_dim, "subspace has wrong ambient dimension");
    if sub.cols() == 0 {
        return Matrix::identity(field, ambient_dim);
    }
    sub.transpose().kernel_basis()
}

/// Column-space equality.
pub fn same_span<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> bool {
    assert_eq!(a.rows(), b.rows());
    let ra = a.rank();
    ra == b.rank() && a.hstack(b).rank() == ra
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{}", self.rows, self.cols, self)
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    /// `[a b; c d]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| format_elem(&self.field, x)).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
