use num_traits::Zero;

use super::field::{Field, Rational, Rationals, Q};
use super::sparse::{Accumulator, SparseVec};
use super::LinearError;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

/// Dense matrix over ℚ.
pub type RatMatrix = Matrix<Rational>;

impl<T: Clone + PartialEq> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, LinearError> {
        if entries.len() != rows * cols {
            return Err(LinearError::Shape(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(Matrix { rows, cols, entries })
    }

    /// Builds from row vectors; an empty list gives a `0 x 0` matrix.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinearError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinearError::Shape("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn zeros_in<F: Field<Elem = T>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity_in<F: Field<Elem = T>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros_in(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn diagonal_in<F: Field<Elem = T>>(field: &F, diag: &[T]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros_in(field, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&T) -> G::Elem) -> Matrix<G::Elem> {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn mul_in<F: Field<Elem = T>>(&self, field: &F, rhs: &Self) -> Result<Self, LinearError> {
        if self.cols != rhs.rows {
            return Err(LinearError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros_in(field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if field.is_zero(b) {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = field.add(&out.entries[idx], &field.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn apply_in<F: Field<Elem = T>>(&self, field: &F, v: &[T]) -> Result<Vec<T>, LinearError> {
        if v.len() != self.cols {
            return Err(LinearError::Shape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
            })
            .collect())
    }

    pub fn is_identity_in<F: Field<Elem = T>>(&self, field: &F) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        field.is_one(e)
                    } else {
                        field.is_zero(e)
                    }
                })
            })
    }

    pub fn is_diagonal_in<F: Field<Elem = T>>(&self, field: &F) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || field.is_zero(self.get(i, j))))
    }

    /// Reduced row echelon form and pivot columns (pivot-leftmost convention).
    pub fn rref_in<F: Field<Elem = T>>(&self, field: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !field.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.entries.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = field.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = field.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if field.is_zero(&f) {
                    continue;
                }
                for j in c..m.cols {
                    let v = field.sub(m.get(i, j), &field.mul(&f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank_in<F: Field<Elem = T>>(&self, field: &F) -> usize {
        self.rref_in(field).1.len()
    }

    /// Right null space basis read off the RREF: one vector per free column,
    /// with a 1 in that column. The list is itself in RREF.
    pub fn kernel_basis_in<F: Field<Elem = T>>(&self, field: &F) -> Vec<Vec<T>> {
        let (rref, pivots) = self.rref_in(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![field.zero(); self.cols];
                v[f] = field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = field.neg(rref.get(r, f));
                }
                v
            })
            .collect()
    }

    pub fn inverse_in<F: Field<Elem = T>>(&self, field: &F) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros_in(field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, field.one());
        }
        let (r, pivots) = aug.rref_in(field);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros_in(field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::zeros_in(&Q, rows, cols)
    }

    pub fn identity(n: usize) -> Self {
        Self::identity_in(&Q, n)
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        Self::diagonal_in(&Q, diag)
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinearError> {
        self.mul_in(&Q, rhs)
    }

    pub fn inverse(&self) -> Option<Self> {
        self.inverse_in(&Q)
    }

    pub fn is_identity(&self) -> bool {
        self.is_identity_in(&Q)
    }

    pub fn rank(&self) -> usize {
        self.rank_in(&Q)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, LinearError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinearError::Shape("dimension mismatch in subtraction".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn to_sparse(&self) -> SparseMatrix<Rational> {
        SparseMatrix::from_dense(&Q, self)
    }
}

/// Column-sparse matrix: column `j` is the image of the `j`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix<T> {
    rows: usize,
    columns: Vec<SparseVec<T>>,
}

impl<T: Clone + PartialEq> SparseMatrix<T> {
    pub fn from_columns(rows: usize, columns: Vec<SparseVec<T>>) -> Result<Self, LinearError> {
        if let Some(bad) = columns.iter().find(|c| c.max_index().is_some_and(|m| m >= rows)) {
            return Err(LinearError::Shape(format!("column entry {:?} exceeds {rows} rows", bad.max_index())));
        }
        Ok(SparseMatrix { rows, columns })
    }

    pub fn identity<F: Field<Elem = T>>(field: &F, n: usize) -> Self {
        SparseMatrix { rows: n, columns: (0..n).map(|i| SparseVec::unit(field, i)).collect() }
    }

    pub fn diagonal<F: Field<Elem = T>>(field: &F, diag: &[T]) -> Self {
        SparseMatrix {
            rows: diag.len(),
            columns: diag
                .iter()
                .enumerate()
                .map(|(i, d)| SparseVec::from_entries(field, [(i, d.clone())]))
                .collect(),
        }
    }

    pub fn from_dense<F: Field<Elem = T>>(field: &F, m: &Matrix<T>) -> Self {
        SparseMatrix {
            rows: m.rows(),
            columns: (0..m.cols()).map(|j| SparseVec::from_dense(field, &m.column(j))).collect(),
        }
    }

    pub fn to_dense<F: Field<Elem = T>>(&self, field: &F) -> Matrix<T> {
        let mut m = Matrix::zeros_in(field, self.rows, self.columns.len());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col.iter() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec<T> {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec<T>] {
        &self.columns
    }

    pub fn entry<F: Field<Elem = T>>(&self, field: &F, i: usize, j: usize) -> T {
        self.columns[j].get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn apply<F: Field<Elem = T>>(&self, field: &F, v: &SparseVec<T>) -> SparseVec<T> {
        let mut acc = Accumulator::new();
        for (j, c) in v.iter() {
            acc.add_scaled(field, c, &self.columns[j]);
        }
        acc.finish(field)
    }

    /// Composition `self ∘ rhs`.
    pub fn compose<F: Field<Elem = T>>(&self, field: &F, rhs: &Self) -> Result<Self, LinearError> {
        if self.cols() != rhs.rows {
            return Err(LinearError::Shape(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows,
                self.cols(),
                rhs.rows,
                rhs.cols()
            )));
        }
        Ok(SparseMatrix { rows: self.rows, columns: rhs.columns.iter().map(|c| self.apply(field, c)).collect() })
    }

    pub fn is_identity<F: Field<Elem = T>>(&self, field: &F) -> bool {
        self.rows == self.cols()
            && self.columns.iter().enumerate().all(|(j, c)| c.nnz() == 1 && c.get(j).is_some_and(|v| field.is_one(v)))
    }

    pub fn is_diagonal(&self) -> bool {
        self.columns.iter().enumerate().all(|(j, c)| c.iter().all(|(i, _)| i == j))
    }

    pub fn map<G: Field>(&self, target: &G, f: impl Fn(&T) -> G::Elem) -> SparseMatrix<G::Elem> {
        SparseMatrix { rows: self.rows, columns: self.columns.iter().map(|c| c.map(target, &f)).collect() }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::nnz).sum()
    }

    pub fn transpose<F: Field<Elem = T>>(&self, field: &F) -> Self {
        let mut cols: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.iter() {
                cols[i].push((j, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols(), columns: cols.into_iter().map(|e| SparseVec::from_entries(field, e)).collect() }
    }

    /// `self - c·I` for a square matrix.
    pub fn sub_scalar<F: Field<Elem = T>>(&self, field: &F, c: &T) -> Self {
        let columns = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, col)| col.sub(field, &SparseVec::from_entries(field, [(j, c.clone())])))
            .collect();
        SparseMatrix { rows: self.rows, columns }
    }

    /// Basis of the null space, one vector per non-pivot column of the RREF.
    pub fn kernel<F: Field<Elem = T>>(&self, field: &F) -> Vec<SparseVec<T>> {
        let mut ech = super::subspace::Echelon::new(field.clone(), self.cols());
        for row in self.transpose(field).columns {
            ech.insert(&row);
        }
        let rref = ech.into_rref();
        let pivots: Vec<usize> = rref.iter().map(|r| r.leading().expect("nonzero row").0).collect();
        let is_pivot: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut entries: std::collections::BTreeMap<usize, Vec<(usize, T)>> =
            (0..self.cols()).filter(|j| !is_pivot.contains(j)).map(|j| (j, vec![(j, field.one())])).collect();
        for (r, &p) in rref.iter().zip(&pivots) {
            for (f, c) in r.iter() {
                if let Some(e) = entries.get_mut(&f) {
                    e.push((p, field.neg(c)));
                }
            }
        }
        entries.into_values().map(|e| SparseVec::from_entries(field, e)).collect()
    }
}

impl SparseMatrix<Rational> {
    pub fn embed<G: Field>(&self, target: &G) -> SparseMatrix<G::Elem> {
        self.map(target, |q| target.from_rational(q))
    }

    pub fn to_rat_matrix(&self) -> RatMatrix {
        self.to_dense(&Rationals)
    }
}
