//! The tower `free(4, 6) → ñ = free(4, 6)/I → n = ñ/J` with its order-4
//! automorphism, and the checks of its structural claims.
//!
//! `I` is generated by `[X_i,X_1,X_3]`, `[X_i,X_2,X_4]` and
//! `[X_a,X_b,X_c,X_d]` for distinct `a, b, c, d` (brackets nest to the
//! right); `J` is spanned by the orbit of `p̃(v - [X_2,X_4])` under the
//! automorphism `α̃` induced by `X_i ↦ X_{i+1}`, where
//! `v = [[X_4,X_3,X_4],X_2,X_1,X_2]`.

mod claims;

use std::collections::HashMap;

use crate::automorphisms::{induce_on_quotient, AutError, Automorphism};
use crate::exact_linear::{Field, QVec, Rational, Rationals, SparseMatrix, SparseVec, Subspace, Q};
use crate::free_nilpotent::{HallBasis, HallShape};
use crate::lie_core::{ideal_closure, quotient, IdealDescriptor, LieAlgebra, LieError, Quotient};

pub use claims::{Claim, ClaimReport, OBSTRUCTION_BOUNDARY};

pub const GENERATORS: usize = 4;
pub const CLASS: usize = 6;
pub const V_EXPR: &str = "[[X4,X3,X4],X2,X1,X2]";

/// Generators of `H ⊂ GL(4, ℚ)`, as diagonal sign vectors.
pub const H_GENERATORS: [[i64; 4]; 2] = [[1, 1, -1, -1], [1, -1, 1, -1]];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TowerError {
    #[error("construction check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error("a weight is zero")]
    ZeroWeight,
    #[error("J is not invariant (weight product is {}one): image of its basis row {row} leaves J", if *product_is_one { "" } else { "not " })]
    NotInvariant { product_is_one: bool, row: usize },
}

#[derive(Debug)]
pub struct ExampleTower {
    pub hall: HallBasis,
    pub free: LieAlgebra,
    pub ideal_i: IdealDescriptor,
    /// `ñ` with the projection `p̃` from the free algebra.
    pub ntilde: Quotient,
    /// `v` in Hall coordinates.
    pub v: QVec,
    pub ideal_j: IdealDescriptor,
    /// `n` with the projection from `ñ`.
    pub n: Quotient,
    pub alpha: Automorphism,
    pub alpha_tilde: Automorphism,
    pub alpha_bar: Automorphism,
    /// Multidegree of each basis vector of `n`, read off the Hall word it
    /// comes from.
    pub n_weights: Vec<Vec<u32>>,
}

impl ExampleTower {
    pub fn build() -> Result<Self, TowerError> {
        let hall = HallBasis::generate(GENERATORS, CLASS).map_err(|e| TowerError::Check(e.to_string()))?;
        let free = hall.to_lie_algebra();
        let ideal_i = ideal_closure(&free, &i_generators(&hall))?;
        let ntilde = quotient(&free, &ideal_i)?;
        if ntilde.algebra.multidegree().is_none() {
            return Err(TowerError::Check("I is not multihomogeneous".into()));
        }
        let alpha = Automorphism::new(&free, Rationals, permutation_matrix(&hall, &[1, 2, 3, 0]))?;
        let alpha_tilde = induce_on_quotient(&alpha, &ntilde.projection)?;
        let v = hall.parse(V_EXPR).map_err(|e| TowerError::Check(e.to_string()))?;
        let u = ntilde.projection.apply(&v.sub(&Q, &hall.parse("[X2,X4]").expect("valid expression")));
        let mut orbit = vec![u];
        for _ in 1..4 {
            orbit.push(alpha_tilde.apply(orbit.last().expect("nonempty")));
        }
        let span = Subspace::from_vectors(ntilde.algebra.dim(), &orbit).expect("orbit lies in ñ");
        let ideal_j = IdealDescriptor::new(&ntilde.algebra, span)?;
        let n = quotient(&ntilde.algebra, &ideal_j)?;
        let alpha_bar = induce_on_quotient(&alpha_tilde, &n.projection)?;
        let md = ntilde.algebra.multidegree().expect("checked above");
        let n_weights = n.projection.kept().iter().map(|&k| md[k].clone()).collect();
        Ok(ExampleTower { hall, free, ideal_i, ntilde, v, ideal_j, n, alpha, alpha_tilde, alpha_bar, n_weights })
    }

    /// `p̃`: free algebra to `ñ`.
    pub fn p_tilde(&self, x: &QVec) -> QVec {
        self.ntilde.projection.apply(x)
    }

    /// `p`: free algebra to `n`.
    pub fn p(&self, x: &QVec) -> QVec {
        self.n.projection.apply(&self.p_tilde(x))
    }

    /// Diagonal automorphism of `ñ` scaling each basis vector of multidegree
    /// `d` by `Π λ_i^{d_i}`.
    pub fn diagonal_automorphism_on_ntilde<F: Field>(&self, field: F, lambda: &[F::Elem; 4]) -> Result<Automorphism<F>, TowerError> {
        if lambda.iter().any(|l| field.is_zero(l)) {
            return Err(TowerError::ZeroWeight);
        }
        let mut cache: HashMap<&[u32], F::Elem> = HashMap::new();
        let md = self.ntilde.algebra.multidegree().expect("multihomogeneous quotient");
        let diag: Vec<F::Elem> = md
            .iter()
            .map(|d| cache.entry(d.as_slice()).or_insert_with(|| monomial(&field, lambda, d)).clone())
            .collect();
        let matrix = SparseMatrix::diagonal(&field, &diag);
        // I is multihomogeneous, so every multidegree-diagonal map preserves it
        Ok(Automorphism::new_unchecked(field, matrix))
    }

    /// The map induced on `n` by `X_i ↦ λ_i X_i`. Fails exactly when `J` is
    /// not invariant, which happens iff `λ_1 λ_2 λ_3 λ_4 ≠ 1`.
    pub fn diagonal_automorphism_on_n<F: Field>(&self, field: F, lambda: &[F::Elem; 4]) -> Result<Automorphism<F>, TowerError> {
        let product = lambda.iter().fold(field.one(), |acc, l| field.mul(&acc, l));
        let product_is_one = field.is_one(&product);
        let phi = self.diagonal_automorphism_on_ntilde(field, lambda)?;
        induce_on_quotient(&phi, &self.n.projection).map_err(|e| match e {
            AutError::IdealNotInvariant { row } => TowerError::NotInvariant { product_is_one, row },
            other => TowerError::Aut(other),
        })
    }

    /// Images of the generators of `H` in `Aut(n)`.
    pub fn h_automorphisms(&self) -> Vec<Automorphism> {
        H_GENERATORS
            .iter()
            .map(|s| {
                let l = s.map(|x| Rational::from_integer(x.into()));
                self.diagonal_automorphism_on_n(Rationals, &l).expect("sign changes have product 1")
            })
            .collect()
    }

    /// The monomial `Π λ_i^{d_i}` belonging to each basis vector of `n`.
    pub fn n_weight_monomials<F: Field>(&self, field: &F, lambda: &[F::Elem; 4]) -> Vec<F::Elem> {
        self.n_weights.iter().map(|d| monomial(field, lambda, d)).collect()
    }
}

/// `Π λ_i^{d_i}`.
pub fn monomial<F: Field>(field: &F, lambda: &[F::Elem], d: &[u32]) -> F::Elem {
    lambda
        .iter()
        .zip(d)
        .fold(field.one(), |acc, (l, &e)| field.mul(&acc, &field.pow(l, e as i64).expect("nonnegative exponent")))
}

/// The 32 generators of `I` (8 of length 3, 24 of length 4).
pub fn i_generators(hall: &HallBasis) -> Vec<QVec> {
    let mut out = Vec::new();
    for i in 1..=4 {
        out.push(hall.right_normed(&[i, 1, 3]));
        out.push(hall.right_normed(&[i, 2, 4]));
    }
    for a in 1..=4 {
        for b in 1..=4 {
            for c in 1..=4 {
                for d in 1..=4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out.push(hall.right_normed(&[a, b, c, d]));
                    }
                }
            }
        }
    }
    out
}

/// Automorphism of the free nilpotent algebra induced by `X_k ↦ X_{perm[k]}`.
pub fn permutation_matrix(hall: &HallBasis, perm: &[usize]) -> SparseMatrix<Rational> {
    let mut columns: Vec<QVec> = Vec::with_capacity(hall.dim());
    for w in hall.words() {
        let col = match w.shape {
            HallShape::Generator(k) => hall.generator(perm[k]),
            HallShape::Bracket(a, b) => hall.bracket(&columns[a], &columns[b]),
        };
        columns.push(col);
    }
    SparseMatrix::from_columns(hall.dim(), columns).expect("images are Hall coordinates")
}

/// Number of RREF rows of a multihomogeneous subspace in one multidegree
/// block.
pub(crate) fn block_rank(alg: &LieAlgebra, space: &Subspace, block: &[u32]) -> usize {
    space.rows().iter().filter(|r| alg.multidegree_of(*r).as_deref() == Some(block)).count()
}

pub(crate) fn sparse_eq_up_to_sign(a: &SparseVec<Rational>, b: &SparseVec<Rational>) -> bool {
    *a == *b || *a == b.neg(&Q)
}
