use std::collections::HashMap;

use super::field::{Field, Rational, Rationals, Q};
use super::matrix::RatMatrix;
use super::sparse::{Accumulator, QVec, SparseVec};
use super::LinearError;

/// Incremental row echelon form over sparse vectors.
///
/// Rows are kept in semi-echelon form (leading entry 1, distinct leading
/// indices) while vectors are inserted, and fully reduced on
/// [`Echelon::into_rref`].
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_of: HashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Echelon { field, dim, rows: Vec::new(), pivot_of: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the current rows; zero iff `v` is in the span.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let field = &self.field;
        let mut w = v.clone();
        let mut start = 0;
        loop {
            let hit = w.iter().find(|(j, _)| *j >= start && self.pivot_of.contains_key(j)).map(|(j, c)| (j, c.clone()));
            let Some((j, c)) = hit else { break };
            w = w.add_scaled(field, &field.neg(&c), &self.rows[self.pivot_of[&j]]);
            start = j + 1;
        }
        w
    }

    /// Inserts `v`; returns the normalized new row when it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> Option<&SparseVec<F::Elem>> {
        debug_assert!(v.max_index().is_none_or(|m| m < self.dim));
        let w = self.reduce(v);
        let (p, lead) = w.leading()?;
        let inv = self.field.inv(lead).expect("nonzero leading entry");
        let w = w.scale(&self.field, &inv);
        self.pivot_of.insert(p, self.rows.len());
        self.rows.push(w);
        self.rows.last()
    }

    /// Fully reduced rows sorted by pivot.
    pub fn into_rref(self) -> Vec<SparseVec<F::Elem>> {
        let field = self.field;
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.leading().expect("nonzero row").0);
        let pivots: Vec<usize> = rows.iter().map(|r| r.leading().expect("nonzero row").0).collect();
        let index_of: HashMap<usize, usize> = pivots.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        for k in (0..rows.len()).rev() {
            let own = pivots[k];
            let targets: Vec<(usize, F::Elem)> = rows[k]
                .iter()
                .filter(|(j, _)| *j != own && index_of.contains_key(j))
                .map(|(j, c)| (j, c.clone()))
                .collect();
            if targets.is_empty() {
                continue;
            }
            let mut acc = Accumulator::new();
            acc.add_scaled(&field, &field.one(), &rows[k]);
            for (j, c) in targets {
                acc.add_scaled(&field, &field.neg(&c), &rows[index_of[&j]]);
            }
            rows[k] = acc.finish(&field);
        }
        rows
    }
}

/// Subspace of ℚⁿ stored by its unique reduced row echelon basis, so equal
/// subspaces compare equal field by field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Vec<QVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, rows: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::coordinate(ambient_dim, 0..ambient_dim)
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        Subspace { ambient_dim, rows: idx.into_iter().map(|i| QVec::unit(&Q, i)).collect() }
    }

    pub fn from_vectors<'a>(ambient_dim: usize, vectors: impl IntoIterator<Item = &'a QVec>) -> Result<Self, LinearError> {
        let mut ech = Echelon::new(Rationals, ambient_dim);
        for v in vectors {
            if v.max_index().is_some_and(|m| m >= ambient_dim) {
                return Err(LinearError::Shape(format!("vector index {:?} outside dimension {ambient_dim}", v.max_index())));
            }
            ech.insert(v);
        }
        Ok(Self::from_echelon(ech))
    }

    pub fn from_echelon(ech: Echelon<Rationals>) -> Self {
        let ambient_dim = ech.dim();
        Subspace { ambient_dim, rows: ech.into_rref() }
    }

    /// Row space of a matrix.
    pub fn row_space(m: &RatMatrix) -> Self {
        let rows: Vec<QVec> = (0..m.rows()).map(|i| QVec::from_dense(&Q, m.row(i))).collect();
        Self::from_vectors(m.cols(), &rows).expect("rows fit the column count")
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// RREF basis rows, sorted by pivot.
    pub fn rows(&self) -> &[QVec] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.leading().expect("nonzero row").0).collect()
    }

    /// Indices that are not pivot columns, ascending; the matching standard
    /// basis vectors span a complement.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for p in self.pivots() {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&i| !is_pivot[i]).collect()
    }

    pub fn basis_matrix(&self) -> RatMatrix {
        let rows = self.rows.iter().map(|r| r.to_dense(&Q, self.ambient_dim)).collect();
        RatMatrix::from_rows(rows).expect("rectangular")
    }

    /// Canonical representative of `v` modulo this subspace: the unique vector
    /// congruent to `v` with zero pivot coordinates.
    pub fn reduce(&self, v: &QVec) -> QVec {
        self.reduce_in(&Q, v, |q| q.clone())
    }

    /// [`Subspace::reduce`] for a vector with coefficients in an extension field.
    pub fn reduce_in<F: Field>(&self, field: &F, v: &SparseVec<F::Elem>, embed: impl Fn(&Rational) -> F::Elem) -> SparseVec<F::Elem> {
        let pivots = self.pivots();
        let mut acc = Accumulator::new();
        for (j, c) in v.iter() {
            acc.add_term(field, j, c.clone());
            if let Ok(k) = pivots.binary_search(&j) {
                for (i, q) in self.rows[k].iter() {
                    acc.add_term(field, i, field.neg(&field.mul(c, &embed(q))));
                }
            }
        }
        acc.finish(field)
    }

    pub fn contains(&self, v: &QVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::from_vectors(self.ambient_dim, self.rows.iter().chain(other.rows.iter())).expect("same ambient dimension")
    }

    /// Intersection via the Zassenhaus construction.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let n = self.ambient_dim;
        let mut ech = Echelon::new(Rationals, 2 * n);
        for r in &self.rows {
            let doubled = SparseVec::from_sorted_unchecked(
                r.iter().map(|(i, c)| (i, c.clone())).chain(r.iter().map(|(i, c)| (i + n, c.clone()))).collect(),
            );
            ech.insert(&doubled);
        }
        for r in &other.rows {
            ech.insert(r);
        }
        let rows: Vec<QVec> = ech
            .into_rref()
            .into_iter()
            .filter(|r| r.leading().is_some_and(|(p, _)| p >= n))
            .map(|r| r.reindex(&Q, |i| i.checked_sub(n)))
            .collect();
        Self::from_vectors(n, &rows).expect("indices shifted into range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::field::{int, rat};

    #[test]
    fn rref_is_canonical() {
        let a = Subspace::from_vectors(3, &[QVec::from_ints(&[(0, 1), (1, 1)]), QVec::from_ints(&[(1, 1), (2, 1)])]).unwrap();
        let b = Subspace::from_vectors(3, &[QVec::from_ints(&[(0, 1), (2, -1)]), QVec::from_ints(&[(0, 2), (1, 1), (2, -1)])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows()[0], QVec::from_ints(&[(0, 1), (2, -1)]));
        assert_eq!(a.complement_coordinates(), vec![2]);
    }

    #[test]
    fn reduce_gives_complement_representative() {
        let s = Subspace::from_vectors(3, &[QVec::from_ints(&[(0, 2), (2, 1)])]).unwrap();
        assert_eq!(s.rows()[0], SparseVec::from_entries(&Q, vec![(0, int(1)), (2, rat(1, 2))]));
        let r = s.reduce(&QVec::from_ints(&[(0, 1), (1, 1)]));
        assert_eq!(r, SparseVec::from_entries(&Q, vec![(1, int(1)), (2, rat(-1, 2))]));
        assert!(s.contains(&QVec::from_ints(&[(0, -4), (2, -2)])));
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::coordinate(3, [0, 1]);
        let b = Subspace::from_vectors(3, &[QVec::from_ints(&[(1, 1), (2, 1)]), QVec::from_ints(&[(0, 1)])]).unwrap();
        assert_eq!(a.intersection(&b), Subspace::coordinate(3, [0]));
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert_eq!(a.intersection(&Subspace::zero(3)), Subspace::zero(3));
    }
}
