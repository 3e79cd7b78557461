//! Automorphisms: verification, spectral classification and induced maps.

use serde::Serialize;

use crate::exact_linear::charpoly::diagonal_blocks;
use crate::exact_linear::{
    charpoly::sparse_rat_charpoly_factored, unit_disk_root_count, Field, Matrix, RatMatrix, RatPolynomial, Rationals, SparseMatrix, SparseVec,
    UnitDiskCount, Q,
};
use crate::lie_core::{abelianization, LieAlgebra, Projection};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutError {
    #[error("dimension mismatch: algebra has dimension {expected}, matrix is {rows}x{cols}")]
    Dimension { expected: usize, rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("bracket not preserved on basis pair ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("ideal is not invariant: the image of ideal basis row {row} leaves the ideal")]
    IdealNotInvariant { row: usize },
}

/// Result of [`is_automorphism`]: a failing pair is reported as witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismCheck {
    pub invertible: bool,
    pub violation: Option<(usize, usize)>,
}

impl AutomorphismCheck {
    pub fn holds(&self) -> bool {
        self.invertible && self.violation.is_none()
    }
}

/// Invertibility and bracket preservation of `m` (columns are images of the
/// basis vectors).
///
/// Invertibility is decided blockwise on the block-triangular form. Bracket
/// preservation is checked on pairs `(g, j)` with `g` in the algebra's
/// generating set: the `x` with `m[x, y] = [mx, my]` for all `y` form a
/// subalgebra, so this covers every pair.
pub fn is_automorphism<F: Field>(alg: &LieAlgebra, field: &F, m: &SparseMatrix<F::Elem>) -> Result<AutomorphismCheck, AutError> {
    let n = alg.dim();
    if m.rows() != n || m.cols() != n {
        return Err(AutError::Dimension { expected: n, rows: m.rows(), cols: m.cols() });
    }
    let invertible = diagonal_blocks(m).iter().all(|block| {
        let k = block.len();
        let mut sub = Matrix::zeros_in(field, k, k);
        for (bj, &j) in block.iter().enumerate() {
            for (bi, &i) in block.iter().enumerate() {
                if let Some(v) = m.column(j).get(i) {
                    sub.set(bi, bj, v.clone());
                }
            }
        }
        sub.rank_in(field) == k
    });
    let embed = |q: &crate::exact_linear::Rational| field.from_rational(q);
    let mut violation = None;
    'outer: for &g in alg.generating_indices() {
        for j in 0..n {
            let lhs = m.apply(field, &alg.basis_bracket(g, j).map(field, embed));
            let rhs = alg.bracket_in(field, m.column(g), m.column(j), embed).expect("columns fit the algebra");
            if lhs != rhs {
                violation = Some((g.min(j), g.max(j)));
                break 'outer;
            }
        }
    }
    Ok(AutomorphismCheck { invertible, violation })
}

/// Verified automorphism, stored as sparse columns over the field `F`.
#[derive(Clone, Debug)]
pub struct Automorphism<F: Field = Rationals> {
    field: F,
    matrix: SparseMatrix<F::Elem>,
}

impl<F: Field> PartialEq for Automorphism<F> {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl<F: Field> Automorphism<F> {
    pub fn new(alg: &LieAlgebra, field: F, matrix: SparseMatrix<F::Elem>) -> Result<Self, AutError> {
        let check = is_automorphism(alg, &field, &matrix)?;
        if !check.invertible {
            return Err(AutError::Singular);
        }
        if let Some((i, j)) = check.violation {
            return Err(AutError::NotHomomorphism(i, j));
        }
        Ok(Automorphism { field, matrix })
    }

    /// Wraps a matrix known to be an automorphism by construction.
    pub fn new_unchecked(field: F, matrix: SparseMatrix<F::Elem>) -> Self {
        Automorphism { field, matrix }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let matrix = SparseMatrix::identity(&field, n);
        Automorphism { field, matrix }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn matrix(&self) -> &SparseMatrix<F::Elem> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn apply(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.matrix.apply(&self.field, v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let matrix = self.matrix.compose(&self.field, &other.matrix).expect("same dimension");
        Automorphism { field: self.field.clone(), matrix }
    }

    pub fn power(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(self.field.clone(), self.dim()), |acc, _| acc.compose(self))
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity(&self.field)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Applies `f` to every matrix entry (for example a Galois action).
    pub fn twist(&self, f: impl Fn(&F::Elem) -> F::Elem) -> Self {
        Automorphism { field: self.field.clone(), matrix: self.matrix.map(&self.field, f) }
    }
}

impl Automorphism<Rationals> {
    pub fn from_rat_matrix(alg: &LieAlgebra, m: &RatMatrix) -> Result<Self, AutError> {
        Self::new(alg, Rationals, SparseMatrix::from_dense(&Q, m))
    }

    pub fn to_rat_matrix(&self) -> RatMatrix {
        self.matrix.to_rat_matrix()
    }

    /// The same map over an extension field.
    pub fn embed<G: Field>(&self, target: G) -> Automorphism<G> {
        let matrix = self.matrix.embed(&target);
        Automorphism { field: target, matrix }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    Expanding,
    PartiallyExpanding,
    Neither,
}

/// Spectral verdict with its witness: the characteristic polynomial as
/// distinct factors with multiplicities, the multiplicity of eigenvalue 1,
/// and the unit-disk partition of the remaining roots.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumClass {
    pub kind: SpectrumKind,
    pub charpoly_factors: Vec<(RatPolynomial, usize)>,
    pub eigenvalue_one_multiplicity: usize,
    pub partition: UnitDiskCount,
}

impl SpectrumClass {
    /// Expanded characteristic polynomial.
    pub fn charpoly(&self) -> RatPolynomial {
        self.charpoly_factors.iter().fold(RatPolynomial::one(), |acc, (f, k)| &acc * &f.pow(*k as u32))
    }
}

/// Classifies a characteristic polynomial given as factors (repeats allowed).
pub fn classify_charpoly(factors: Vec<RatPolynomial>) -> SpectrumClass {
    let mut factors = factors;
    factors.retain(|f| f.degree().is_some_and(|d| d > 0));
    factors.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    let mut grouped: Vec<(RatPolynomial, usize)> = Vec::new();
    for f in factors {
        match grouped.last_mut() {
            Some((g, k)) if *g == f => *k += 1,
            _ => grouped.push((f, 1)),
        }
    }
    let one = RatPolynomial::from_ints(&[-1, 1]);
    let mut ones = 0;
    let mut partition = UnitDiskCount::default();
    for (f, k) in &grouped {
        let m = f.root_multiplicity(&num_traits::One::one());
        ones += k * m;
        let rest = f.exact_div(&one.pow(m as u32)).expect("root factor divides");
        if rest.degree().is_some_and(|d| d > 0) {
            let c = unit_disk_root_count(&rest).expect("nonzero factor");
            partition = partition + UnitDiskCount { inside: k * c.inside, on_circle: k * c.on_circle, outside: k * c.outside };
        }
    }
    let rest_all_outside = partition.inside == 0 && partition.on_circle == 0;
    let kind = if rest_all_outside && ones == 0 && partition.outside > 0 {
        SpectrumKind::Expanding
    } else if rest_all_outside && partition.outside > 0 {
        SpectrumKind::PartiallyExpanding
    } else {
        SpectrumKind::Neither
    };
    SpectrumClass { kind, charpoly_factors: grouped, eigenvalue_one_multiplicity: ones, partition }
}

/// Expanding: every eigenvalue outside the closed unit disk. Partially
/// expanding: every eigenvalue is 1 or outside, and some eigenvalue is not 1.
pub fn classify_spectrum(a: &Automorphism<Rationals>) -> SpectrumClass {
    classify_charpoly(sparse_rat_charpoly_factored(a.matrix()).expect("square matrix"))
}

/// Map induced on the quotient behind `projection`; the ideal must be
/// invariant.
pub fn induce_on_quotient<F: Field>(a: &Automorphism<F>, projection: &Projection) -> Result<Automorphism<F>, AutError> {
    let field = a.field();
    let embed = |q: &crate::exact_linear::Rational| field.from_rational(q);
    if a.dim() != projection.source_dim() {
        return Err(AutError::Dimension { expected: projection.source_dim(), rows: a.dim(), cols: a.dim() });
    }
    for (r, row) in projection.ideal().rows().iter().enumerate() {
        let img = a.apply(&row.map(field, embed));
        if !projection.ideal().reduce_in(field, &img, embed).is_zero() {
            return Err(AutError::IdealNotInvariant { row: r });
        }
    }
    let columns = projection.kept().iter().map(|&k| projection.apply_in(field, a.matrix().column(k), embed)).collect();
    let matrix = SparseMatrix::from_columns(projection.target_dim(), columns).expect("projected columns fit");
    Ok(Automorphism::new_unchecked(field.clone(), matrix))
}

/// Induced map on `L/[L, L]` in the basis of coordinates complementary to
/// the derived subalgebra.
pub fn abelianization_matrix<F: Field>(alg: &LieAlgebra, a: &Automorphism<F>) -> Matrix<F::Elem> {
    let q = abelianization(alg);
    induce_on_quotient(a, &q.projection).expect("[L, L] is characteristic").matrix().to_dense(a.field())
}

/// Smallest `k <= bound` with `a^k = id`.
pub fn element_order<F: Field>(a: &Automorphism<F>, bound: usize) -> Option<usize> {
    let mut p = a.clone();
    for k in 1..=bound {
        if p.is_identity() {
            return Some(k);
        }
        p = p.compose(a);
    }
    None
}
