use std::sync::OnceLock;

use crate::exact_linear::sparse::Accumulator;
use crate::exact_linear::{Echelon, Field, QVec, Rational, Rationals, SparseVec, Subspace, Q};

use super::LieError;

/// Finite-dimensional Lie algebra over ℚ given by structure constants.
///
/// Brackets `[e_i, e_j]` are stored for `i < j` only. Extension-field
/// computations reuse the rational table through [`LieAlgebra::bracket_in`].
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    dim: usize,
    table: Vec<Vec<(usize, QVec)>>,
    labels: Option<Vec<String>>,
    multidegree: Option<Vec<Vec<u32>>>,
    generators: OnceLock<Vec<usize>>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.table == other.table && self.labels == other.labels && self.multidegree == other.multidegree
    }
}

impl LieAlgebra {
    /// Builds the table from brackets `[e_i, e_j] = v`; pairs with `i > j` are
    /// stored negated. Repeated pairs must agree.
    pub fn from_brackets(dim: usize, brackets: impl IntoIterator<Item = (usize, usize, QVec)>) -> Result<Self, LieError> {
        let mut table: Vec<Vec<(usize, QVec)>> = vec![Vec::new(); dim];
        for (i, j, v) in brackets {
            if i >= dim || j >= dim || v.max_index().is_some_and(|m| m >= dim) {
                return Err(LieError::Dimension { expected: dim, found: i.max(j).max(v.max_index().unwrap_or(0)) + 1 });
            }
            if i == j {
                if !v.is_zero() {
                    return Err(LieError::InvalidTable(format!("[e{i}, e{i}] must vanish")));
                }
                continue;
            }
            let (a, b, v) = if i < j { (i, j, v) } else { (j, i, v.neg(&Q)) };
            match table[a].binary_search_by_key(&b, |(k, _)| *k) {
                Ok(pos) => {
                    if table[a][pos].1 != v {
                        return Err(LieError::InvalidTable(format!("conflicting values for [e{a}, e{b}]")));
                    }
                }
                Err(pos) => {
                    if !v.is_zero() {
                        table[a].insert(pos, (b, v));
                    }
                }
            }
        }
        Ok(LieAlgebra { dim, table, labels: None, multidegree: None, generators: OnceLock::new() })
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_brackets(dim, []).expect("empty table")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LieError> {
        if labels.len() != self.dim {
            return Err(LieError::Dimension { expected: self.dim, found: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn with_multidegree(mut self, multidegree: Vec<Vec<u32>>) -> Result<Self, LieError> {
        if multidegree.len() != self.dim {
            return Err(LieError::Dimension { expected: self.dim, found: multidegree.len() });
        }
        self.multidegree = Some(multidegree);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        self.labels.as_ref().map_or_else(|| format!("e{}", i + 1), |l| l[i].clone())
    }

    pub fn multidegree(&self) -> Option<&[Vec<u32>]> {
        self.multidegree.as_deref()
    }

    /// Nonzero brackets `(i, j, [e_i, e_j])` with `i < j`, in index order.
    pub fn brackets(&self) -> impl Iterator<Item = (usize, usize, &QVec)> + '_ {
        self.table.iter().enumerate().flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn nonzero_brackets(&self) -> usize {
        self.table.iter().map(Vec::len).sum()
    }

    /// `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> QVec {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => QVec::zero(),
            std::cmp::Ordering::Less => self.lookup(i, j).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self.lookup(j, i).map(|v| v.neg(&Q)).unwrap_or_default(),
        }
    }

    fn lookup(&self, i: usize, j: usize) -> Option<&QVec> {
        let row = &self.table[i];
        row.binary_search_by_key(&j, |(k, _)| *k).ok().map(|p| &row[p].1)
    }

    fn check_dim<T: Clone + PartialEq>(&self, v: &SparseVec<T>) -> Result<(), LieError> {
        match v.max_index() {
            Some(m) if m >= self.dim => Err(LieError::Dimension { expected: self.dim, found: m + 1 }),
            _ => Ok(()),
        }
    }

    pub fn bracket(&self, u: &QVec, v: &QVec) -> Result<QVec, LieError> {
        self.bracket_in(&Q, u, v, |q| q.clone())
    }

    /// Bracket of vectors with coefficients in an extension of ℚ.
    pub fn bracket_in<F: Field>(&self, field: &F, u: &SparseVec<F::Elem>, v: &SparseVec<F::Elem>, embed: impl Fn(&Rational) -> F::Elem) -> Result<SparseVec<F::Elem>, LieError> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        let mut acc = Accumulator::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                let (vec, sign) = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => continue,
                    std::cmp::Ordering::Less => (self.lookup(i, j), false),
                    std::cmp::Ordering::Greater => (self.lookup(j, i), true),
                };
                let Some(vec) = vec else { continue };
                let mut c = field.mul(a, b);
                if sign {
                    c = field.neg(&c);
                }
                for (k, q) in vec.iter() {
                    acc.add_term(field, k, field.mul(&c, &embed(q)));
                }
            }
        }
        Ok(acc.finish(field))
    }

    /// `[e_i, v]`.
    pub fn ad_basis(&self, i: usize, v: &QVec) -> QVec {
        self.bracket(&QVec::unit(&Q, i), v).expect("index in range")
    }

    /// Common multidegree of the support of `v`, if it is multihomogeneous.
    pub fn multidegree_of<T: Clone + PartialEq>(&self, v: &SparseVec<T>) -> Option<Vec<u32>> {
        let md = self.multidegree.as_ref()?;
        let mut it = v.iter().map(|(i, _)| &md[i]);
        let first = it.next()?;
        it.all(|d| d == first).then(|| first.clone())
    }

    /// Total degree of each basis vector, when a multidegree is attached.
    pub fn degree(&self, i: usize) -> Option<u32> {
        self.multidegree.as_ref().map(|m| m[i].iter().sum())
    }

    /// The derived subalgebra `[L, L]`.
    pub fn derived_subspace(&self) -> Subspace {
        let mut ech = Echelon::new(Rationals, self.dim);
        for (_, _, v) in self.brackets() {
            ech.insert(v);
        }
        Subspace::from_echelon(ech)
    }

    /// Basis indices that generate the algebra as a Lie algebra.
    ///
    /// Uses the coordinates complementary to `[L, L]` when they generate
    /// (always the case for nilpotent algebras) and all indices otherwise.
    /// Closure under `ad` of these indices characterizes ideals and
    /// homomorphisms.
    pub fn generating_indices(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let candidates = self.derived_subspace().complement_coordinates();
            let seeds: Vec<QVec> = candidates.iter().map(|&i| QVec::unit(&Q, i)).collect();
            if ad_closure(self, &seeds, &candidates).rank() == self.dim {
                candidates
            } else {
                (0..self.dim).collect()
            }
        })
    }

    /// Assembles an algebra from a table already in canonical form.
    pub(crate) fn from_parts(dim: usize, table: Vec<Vec<(usize, QVec)>>, labels: Option<Vec<String>>, multidegree: Option<Vec<Vec<u32>>>) -> Self {
        LieAlgebra { dim, table, labels, multidegree, generators: OnceLock::new() }
    }
}

/// Smallest subspace containing `seeds` and stable under `ad(e_g)` for the
/// given indices, as an echelon basis.
pub(crate) fn ad_closure(alg: &LieAlgebra, seeds: &[QVec], ad: &[usize]) -> Echelon<Rationals> {
    let mut ech = Echelon::new(Rationals, alg.dim());
    let mut queue: Vec<QVec> = Vec::new();
    for s in seeds {
        if let Some(r) = ech.insert(s) {
            queue.push(r.clone());
        }
    }
    while let Some(w) = queue.pop() {
        for &g in ad {
            let b = alg.ad_basis(g, &w);
            if b.is_zero() {
                continue;
            }
            if let Some(r) = ech.insert(&b) {
                queue.push(r.clone());
            }
        }
    }
    ech
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::heisenberg;

    #[test]
    fn heisenberg_bracket() {
        let h = heisenberg();
        let x = QVec::unit(&Q, 0);
        let y = QVec::unit(&Q, 1);
        assert_eq!(h.bracket(&x, &y).unwrap(), QVec::unit(&Q, 2));
        assert_eq!(h.bracket(&y, &x).unwrap(), QVec::from_ints(&[(2, -1)]));
        assert!(h.bracket(&x, &QVec::unit(&Q, 3)).is_err());
        assert_eq!(h.generating_indices(), &[0, 1]);
    }

    #[test]
    fn table_validation() {
        assert!(LieAlgebra::from_brackets(2, [(0, 0, QVec::unit(&Q, 1))]).is_err());
        let conflict = [(0, 1, QVec::unit(&Q, 1)), (1, 0, QVec::unit(&Q, 1))];
        assert!(LieAlgebra::from_brackets(2, conflict).is_err());
        let ok = [(0, 1, QVec::unit(&Q, 1)), (1, 0, QVec::from_ints(&[(1, -1)]))];
        assert_eq!(LieAlgebra::from_brackets(2, ok).unwrap().nonzero_brackets(), 1);
    }
}
