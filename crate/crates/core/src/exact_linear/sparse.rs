use std::collections::BTreeMap;

use super::field::{Field, Rational, Q};

/// Sparse coordinate vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<T> {
    entries: Vec<(usize, T)>,
}

/// Sparse rational vector.
pub type QVec = SparseVec<Rational>;

impl<T> Default for SparseVec<T> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<T: Clone + PartialEq> SparseVec<T> {
    pub fn zero() -> Self {
        SparseVec::default()
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates and
    /// dropping zeros.
    pub fn from_entries<F: Field<Elem = T>>(field: &F, entries: impl IntoIterator<Item = (usize, T)>) -> Self {
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for (i, v) in entries {
            match acc.get_mut(&i) {
                Some(slot) => *slot = field.add(slot, &v),
                None => {
                    acc.insert(i, v);
                }
            }
        }
        SparseVec {
            entries: acc.into_iter().filter(|(_, v)| !field.is_zero(v)).collect(),
        }
    }

    /// Trusts the caller: entries must be sorted, unique and nonzero.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, T)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries }
    }

    pub fn from_dense<F: Field<Elem = T>>(field: &F, dense: &[T]) -> Self {
        SparseVec {
            entries: dense
                .iter()
                .enumerate()
                .filter(|(_, v)| !field.is_zero(v))
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn unit<F: Field<Elem = T>>(field: &F, index: usize) -> Self {
        SparseVec { entries: vec![(index, field.one())] }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, T)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, T)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &T)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, index: usize) -> Option<&T> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    /// Smallest index with a nonzero entry.
    pub fn leading(&self) -> Option<(usize, &T)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn to_dense<F: Field<Elem = T>>(&self, field: &F, dim: usize) -> Vec<T> {
        let mut out = vec![field.zero(); dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn scale<F: Field<Elem = T>>(&self, field: &F, c: &T) -> Self {
        if field.is_zero(c) {
            return SparseVec::zero();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, field.mul(v, c)))
                .filter(|(_, v)| !field.is_zero(v))
                .collect(),
        }
    }

    pub fn neg<F: Field<Elem = T>>(&self, field: &F) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, field.neg(v))).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled<F: Field<Elem = T>>(&self, field: &F, c: &T, other: &Self) -> Self {
        if field.is_zero(c) || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, va)), Some((ib, vb))) => {
                    if ia < ib {
                        out.push((*ia, va.clone()));
                        a.next();
                    } else if ib < ia {
                        out.push((*ib, field.mul(c, vb)));
                        b.next();
                    } else {
                        let s = field.add(va, &field.mul(c, vb));
                        if !field.is_zero(&s) {
                            out.push((*ia, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ia, va)), None) => {
                    out.push((*ia, va.clone()));
                    a.next();
                }
                (None, Some((ib, vb))) => {
                    out.push((*ib, field.mul(c, vb)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Self {
        self.add_scaled(field, &field.one(), other)
    }

    pub fn sub<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> Self {
        self.add_scaled(field, &field.neg(&field.one()), other)
    }

    pub fn dot<F: Field<Elem = T>>(&self, field: &F, other: &Self) -> T {
        let mut acc = field.zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((ia, va)), Some((ib, vb))) = (a.peek(), b.peek()) {
            if ia < ib {
                a.next();
            } else if ib < ia {
                b.next();
            } else {
                acc = field.add(&acc, &field.mul(va, vb));
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Renames indices through `f`; entries mapped to `None` are dropped.
    /// `f` must be injective on the support.
    pub fn reindex<F: Field<Elem = T>>(&self, field: &F, f: impl Fn(usize) -> Option<usize>) -> Self {
        SparseVec::from_entries(field, self.entries.iter().filter_map(|(i, v)| f(*i).map(|j| (j, v.clone()))))
    }

    /// Applies a scalar map entrywise (e.g. a field embedding).
    pub fn map<G: Field>(&self, target: &G, f: impl Fn(&T) -> G::Elem) -> SparseVec<G::Elem> {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, f(v)))
                .filter(|(_, v)| !target.is_zero(v))
                .collect(),
        }
    }
}

impl QVec {
    /// Sparse rational vector from integer entries, dropping zeros.
    pub fn from_ints(entries: &[(usize, i64)]) -> Self {
        SparseVec::from_entries(&Q, entries.iter().map(|&(i, v)| (i, Rational::from_integer(v.into()))))
    }
}

/// Accumulates a linear combination of sparse vectors without intermediate
/// re-sorting.
pub(crate) struct Accumulator<F: Field> {
    acc: BTreeMap<usize, F::Elem>,
}

impl<F: Field> Accumulator<F> {
    pub(crate) fn new() -> Self {
        Accumulator { acc: BTreeMap::new() }
    }

    pub(crate) fn add_term(&mut self, field: &F, index: usize, value: F::Elem) {
        match self.acc.get_mut(&index) {
            Some(slot) => *slot = field.add(slot, &value),
            None => {
                self.acc.insert(index, value);
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, field: &F, c: &F::Elem, v: &SparseVec<F::Elem>) {
        for (i, x) in v.iter() {
            self.add_term(field, i, field.mul(c, x));
        }
    }

    pub(crate) fn finish(self, field: &F) -> SparseVec<F::Elem> {
        SparseVec {
            entries: self.acc.into_iter().filter(|(_, v)| !field.is_zero(v)).collect(),
        }
    }
}
