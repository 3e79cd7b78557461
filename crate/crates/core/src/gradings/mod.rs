//! ℤ-gradings: verification, classification and the correspondence with
//! diagonalizable automorphisms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::automorphisms::Automorphism;
use crate::exact_linear::charpoly::sparse_rat_charpoly_factored;
use crate::exact_linear::json::{subspace_from_rows, subspace_rows, JsonRow};
use crate::exact_linear::{rational_roots, Echelon, Field, QVec, Rational, Rationals, SparseMatrix, SparseVec, Subspace, Q};
use crate::lie_core::LieAlgebra;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GradingError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("weight {0} is listed twice")]
    DuplicateWeight(i64),
    #[error("components do not form a direct sum decomposition (rank {rank} of {dim})")]
    NotDirectSum { rank: usize, dim: usize },
    #[error("bracket of weights {i} and {j} leaves weight {}", i + j)]
    Bracket { i: i64, j: i64, witness: QVec },
    #[error("mu must be nonzero")]
    ZeroMu,
    #[error("construction inapplicable: {0}")]
    Inapplicable(String),
}

/// Decomposition of the algebra into weight spaces, sorted by weight.
/// Zero components are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grading {
    components: Vec<(i64, Subspace)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GradingClass {
    Positive,
    NonnegativeNontrivial,
    Trivial,
    Other,
}

impl Grading {
    pub fn new(components: impl IntoIterator<Item = (i64, Subspace)>) -> Result<Self, GradingError> {
        let mut components: Vec<(i64, Subspace)> = components.into_iter().collect();
        components.sort_by_key(|(w, _)| *w);
        if let Some(w) = components.windows(2).find(|p| p[0].0 == p[1].0) {
            return Err(GradingError::DuplicateWeight(w[0].0));
        }
        if let Some(n) = components.first().map(|(_, s)| s.ambient_dim()) {
            if let Some((_, s)) = components.iter().find(|(_, s)| s.ambient_dim() != n) {
                return Err(GradingError::Dimension { expected: n, found: s.ambient_dim() });
            }
        }
        components.retain(|(_, s)| !s.is_zero());
        Ok(Grading { components })
    }

    /// Grading with basis vector `i` in weight `weights[i]`.
    pub fn coordinate(weights: &[i64]) -> Self {
        let n = weights.len();
        let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &w) in weights.iter().enumerate() {
            by_weight.entry(w).or_default().push(i);
        }
        Grading { components: by_weight.into_iter().map(|(w, idx)| (w, Subspace::coordinate(n, idx))).collect() }
    }

    pub fn trivial(dim: usize) -> Self {
        Self::coordinate(&vec![0; dim])
    }

    pub fn components(&self) -> &[(i64, Subspace)] {
        &self.components
    }

    pub fn weights(&self) -> Vec<i64> {
        self.components.iter().map(|(w, _)| *w).collect()
    }

    pub fn component(&self, weight: i64) -> Option<&Subspace> {
        self.components.binary_search_by_key(&weight, |(w, _)| *w).ok().map(|k| &self.components[k].1)
    }

    pub fn ambient_dim(&self) -> Option<usize> {
        self.components.first().map(|(_, s)| s.ambient_dim())
    }

    /// Class by the weights alone; meaningful once the grading is verified.
    pub fn class(&self) -> GradingClass {
        let ws = self.weights();
        if ws == [0] || ws.is_empty() {
            GradingClass::Trivial
        } else if ws.iter().all(|&w| w > 0) {
            GradingClass::Positive
        } else if ws.iter().all(|&w| w >= 0) {
            GradingClass::NonnegativeNontrivial
        } else {
            GradingClass::Other
        }
    }

    pub fn to_json(&self) -> GradingJson {
        GradingJson { weights: self.weights(), bases: self.components.iter().map(|(_, s)| subspace_rows(s)).collect() }
    }

    pub fn from_json(dim: usize, json: &GradingJson) -> Result<Self, GradingError> {
        if json.weights.len() != json.bases.len() {
            return Err(GradingError::Dimension { expected: json.weights.len(), found: json.bases.len() });
        }
        let mut components = Vec::new();
        for (w, rows) in json.weights.iter().zip(&json.bases) {
            let s = subspace_from_rows(dim, rows).map_err(|_| GradingError::Dimension {
                expected: dim,
                found: rows.iter().map(JsonRow::extent).max().unwrap_or(0),
            })?;
            components.push((*w, s));
        }
        Self::new(components)
    }
}

/// `{"weights": [...], "bases": [[row, ...], ...]}`, one list of RREF rows
/// per component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradingJson {
    pub weights: Vec<i64>,
    pub bases: Vec<Vec<JsonRow>>,
}

/// Checks the direct sum and `[g_i, g_j] ⊆ g_{i+j}` exactly, then classifies.
pub fn verify_and_classify(alg: &LieAlgebra, g: &Grading) -> Result<GradingClass, GradingError> {
    let n = alg.dim();
    if let Some(d) = g.ambient_dim().filter(|&d| d != n) {
        return Err(GradingError::Dimension { expected: n, found: d });
    }
    let mut ech = Echelon::new(Rationals, n);
    for (_, s) in g.components() {
        for r in s.rows() {
            ech.insert(r);
        }
    }
    let total: usize = g.components().iter().map(|(_, s)| s.dim()).sum();
    if ech.rank() != n || total != n {
        return Err(GradingError::NotDirectSum { rank: ech.rank(), dim: n });
    }
    for (a, (wi, si)) in g.components().iter().enumerate() {
        for (wj, sj) in &g.components()[a..] {
            let target = g.component(wi + wj);
            for u in si.rows() {
                for v in sj.rows() {
                    let b = alg.bracket(u, v).expect("dimensions checked");
                    if b.is_zero() {
                        continue;
                    }
                    let inside = target.is_some_and(|t| t.contains(&b));
                    if !inside {
                        return Err(GradingError::Bracket { i: *wi, j: *wj, witness: b });
                    }
                }
            }
        }
    }
    Ok(g.class())
}

/// The map acting as `mu^w` on the weight-`w` component.
pub fn automorphism_from_grading<F: Field>(alg: &LieAlgebra, g: &Grading, field: F, mu: &F::Elem) -> Result<Automorphism<F>, GradingError> {
    if field.is_zero(mu) {
        return Err(GradingError::ZeroMu);
    }
    verify_and_classify(alg, g)?;
    let n = alg.dim();
    let scalars: Vec<F::Elem> = g.weights().iter().map(|&w| field.pow(mu, w).expect("mu is invertible")).collect();
    let coordinate = g.components().iter().all(|(_, s)| s.rows().iter().all(|r| r.nnz() == 1));
    let matrix = if coordinate {
        let mut diag = vec![field.one(); n];
        for ((_, s), c) in g.components().iter().zip(&scalars) {
            for p in s.pivots() {
                diag[p] = c.clone();
            }
        }
        SparseMatrix::diagonal(&field, &diag)
    } else {
        // M = Σ_w mu^w B_w C_w where C = B^{-1} and B has the component rows
        // as columns.
        let rows: Vec<&QVec> = g.components().iter().flat_map(|(_, s)| s.rows()).collect();
        let b = SparseMatrix::from_columns(n, rows.iter().map(|r| (*r).clone()).collect()).expect("rows fit").to_rat_matrix();
        let c = b.inverse().expect("direct sum");
        let mut owner = Vec::with_capacity(n);
        for (k, (_, s)) in g.components().iter().enumerate() {
            owner.extend(std::iter::repeat_n(k, s.dim()));
        }
        let columns = (0..n)
            .map(|j| {
                let mut col = SparseVec::zero();
                for (t, row) in rows.iter().enumerate() {
                    let coef = c.get(t, j);
                    if coef.is_zero() {
                        continue;
                    }
                    let s = field.mul(&scalars[owner[t]], &field.from_rational(coef));
                    col = col.add_scaled(&field, &s, &row.map(&field, |q| field.from_rational(q)));
                }
                col
            })
            .collect();
        SparseMatrix::from_columns(n, columns).expect("square")
    };
    Ok(Automorphism::new_unchecked(field, matrix))
}

/// Grading recovered from an automorphism together with the detected base
/// `mu` (absent for the identity).
#[derive(Clone, Debug, PartialEq)]
pub struct RecoveredGrading {
    pub grading: Grading,
    pub mu: Option<Rational>,
}

/// Eigenspace grading of a ℚ-diagonalizable automorphism whose eigenvalues
/// are all integer powers of one rational `mu`.
///
/// `mu` is taken with `|mu| > 1` as small as possible, positive before
/// negative. Any other spectrum is reported as inapplicable: this is the
/// restricted construction and says nothing about other gradings.
pub fn grading_from_diagonal_automorphism(alg: &LieAlgebra, a: &Automorphism<Rationals>) -> Result<RecoveredGrading, GradingError> {
    if a.dim() != alg.dim() {
        return Err(GradingError::Dimension { expected: alg.dim(), found: a.dim() });
    }
    let mut eigen: BTreeMap<Rational, usize> = BTreeMap::new();
    for f in sparse_rat_charpoly_factored(a.matrix()).expect("square") {
        let roots = rational_roots(&f).expect("nonzero factor");
        if roots.iter().map(|(_, m)| m).sum::<usize>() != f.degree().unwrap_or(0) {
            return Err(GradingError::Inapplicable("spectrum is not rational".into()));
        }
        for (r, m) in roots {
            *eigen.entry(r).or_default() += m;
        }
    }
    let values: Vec<Rational> = eigen.keys().cloned().collect();
    let (mu, weights) = detect_mu(&values).ok_or_else(|| GradingError::Inapplicable("eigenvalues are not integer powers of a single rational".into()))?;
    let mut components = Vec::new();
    for ((lambda, mult), w) in eigen.iter().zip(weights) {
        let kernel = a.matrix().sub_scalar(&Q, lambda).kernel(&Q);
        if kernel.len() != *mult {
            return Err(GradingError::Inapplicable(format!("not diagonalizable: eigenvalue {lambda} has geometric multiplicity {} < {mult}", kernel.len())));
        }
        components.push((w, Subspace::from_vectors(alg.dim(), &kernel).expect("kernel fits")));
    }
    let grading = Grading::new(components)?;
    verify_and_classify(alg, &grading)?;
    Ok(RecoveredGrading { grading, mu })
}

/// `mu` and the exponents `w` with `values[i] = mu^w`.
fn detect_mu(values: &[Rational]) -> Option<(Option<Rational>, Vec<i64>)> {
    let one = Rational::one();
    if values.iter().all(|v| *v == one) {
        return Some((None, vec![0; values.len()]));
    }
    let m = values
        .iter()
        .map(|v| v.abs())
        .filter(|v| *v != one)
        .map(|v| if v > one { v } else { v.recip() })
        .min()?;
    let max_k = m.numer().bits().max(1);
    for k in (1..=max_k).rev() {
        let Some(c) = exact_root(&m, k) else { continue };
        for base in [c.clone(), -c] {
            if let Some(ws) = values.iter().map(|v| log_exact(v, &base)).collect::<Option<Vec<_>>>() {
                return Some((Some(base), ws));
            }
        }
    }
    None
}

fn exact_root(q: &Rational, k: u64) -> Option<Rational> {
    let k32 = u32::try_from(k).ok()?;
    let root = |n: &BigInt| {
        let r = n.nth_root(k32);
        (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

/// `w` with `base^w = v`, for `|base| > 1`.
fn log_exact(v: &Rational, base: &Rational) -> Option<i64> {
    if v.is_zero() {
        return None;
    }
    let (target, sign) = if v.abs() >= Rational::one() { (v.clone(), 1) } else { (v.recip(), -1) };
    let mut p = Rational::one();
    let mut w = 0i64;
    while p.abs() < target.abs() {
        p *= base;
        w += 1;
    }
    (p == target).then_some(sign * w)
}

/// Whether `a` maps every component into (hence onto) itself.
pub fn preserves_grading<F: Field>(a: &Automorphism<F>, g: &Grading) -> Result<bool, GradingError> {
    let field = a.field();
    if let Some(d) = g.ambient_dim().filter(|&d| d != a.dim()) {
        return Err(GradingError::Dimension { expected: a.dim(), found: d });
    }
    let embed = |q: &Rational| field.from_rational(q);
    Ok(g.components().iter().all(|(_, s)| {
        s.rows().iter().all(|r| s.reduce_in(field, &a.apply(&r.map(field, embed)), embed).is_zero())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::{classify_spectrum, is_automorphism, SpectrumKind};
    use crate::exact_linear::{int, rat, RatMatrix};
    use crate::fixtures::heisenberg;

    fn standard() -> Grading {
        Grading::coordinate(&[1, 1, 2])
    }

    #[test]
    fn classification_examples() {
        let h = heisenberg();
        assert_eq!(verify_and_classify(&h, &standard()), Ok(GradingClass::Positive));
        assert_eq!(verify_and_classify(&h, &Grading::trivial(3)), Ok(GradingClass::Trivial));
        assert_eq!(verify_and_classify(&h, &Grading::coordinate(&[1, -1, 0])), Ok(GradingClass::Other));
        assert_eq!(verify_and_classify(&h, &Grading::coordinate(&[0, 1, 1])), Ok(GradingClass::NonnegativeNontrivial));
        let bad = verify_and_classify(&h, &Grading::coordinate(&[1, 1, 1]));
        assert!(matches!(bad, Err(GradingError::Bracket { i: 1, j: 1, .. })));
        let overlap = Grading::new([(1, Subspace::coordinate(3, [0, 1])), (2, Subspace::coordinate(3, [1, 2]))]).unwrap();
        assert!(matches!(verify_and_classify(&h, &overlap), Err(GradingError::NotDirectSum { .. })));
    }

    #[test]
    fn grading_to_automorphism() {
        let h = heisenberg();
        let a = automorphism_from_grading(&h, &standard(), Q, &int(2)).unwrap();
        assert_eq!(a.to_rat_matrix(), RatMatrix::diagonal(&[int(2), int(2), int(4)]));
        assert_eq!(classify_spectrum(&a).kind, SpectrumKind::Expanding);
        assert!(automorphism_from_grading(&h, &Grading::trivial(3), Q, &int(7)).unwrap().is_identity());
        assert!(automorphism_from_grading(&h, &standard(), Q, &int(1)).unwrap().is_identity());
        assert_eq!(automorphism_from_grading(&h, &standard(), Q, &int(0)), Err(GradingError::ZeroMu));
        // weight 1 spanned by x + z and y
        let twisted = Grading::new([
            (1, Subspace::from_vectors(3, &[QVec::from_ints(&[(0, 1), (2, 1)]), QVec::from_ints(&[(1, 1)])]).unwrap()),
            (2, Subspace::coordinate(3, [2])),
        ])
        .unwrap();
        let a = automorphism_from_grading(&h, &twisted, Q, &int(2)).unwrap();
        assert_eq!(a.to_rat_matrix(), RatMatrix::from_int_rows(&[&[2, 0, 0], &[0, 2, 0], &[-2, 0, 4]]));
        assert!(is_automorphism(&h, &Q, a.matrix()).unwrap().holds());
        assert_eq!(grading_from_diagonal_automorphism(&h, &a).unwrap().grading, twisted);
    }

    #[test]
    fn automorphism_to_grading() {
        let h = heisenberg();
        let a = Automorphism::from_rat_matrix(&h, &RatMatrix::diagonal(&[int(2), int(2), int(4)])).unwrap();
        let r = grading_from_diagonal_automorphism(&h, &a).unwrap();
        assert_eq!((r.grading, r.mu), (standard(), Some(int(2))));
        let ab = LieAlgebra::abelian(2);
        let a = Automorphism::from_rat_matrix(&ab, &RatMatrix::diagonal(&[int(3), int(9)])).unwrap();
        let r = grading_from_diagonal_automorphism(&ab, &a).unwrap();
        assert_eq!((r.grading.weights(), r.mu), (vec![1, 2], Some(int(3))));
        // companion matrix of x^2 - x - 1
        let fib = Automorphism::from_rat_matrix(&ab, &RatMatrix::from_int_rows(&[&[0, 1], &[1, 1]])).unwrap();
        assert!(matches!(grading_from_diagonal_automorphism(&ab, &fib), Err(GradingError::Inapplicable(_))));
        // Jordan block: rational spectrum, not diagonalizable
        let jordan = Automorphism::from_rat_matrix(&ab, &RatMatrix::from_int_rows(&[&[2, 1], &[0, 2]])).unwrap();
        assert!(matches!(grading_from_diagonal_automorphism(&ab, &jordan), Err(GradingError::Inapplicable(_))));
    }

    #[test]
    fn mu_detection() {
        assert_eq!(detect_mu(&[int(4), int(8)]), Some((Some(int(2)), vec![2, 3])));
        assert_eq!(detect_mu(&[int(-2), int(4)]), Some((Some(int(-2)), vec![1, 2])));
        assert_eq!(detect_mu(&[rat(1, 3), int(1), int(9)]), Some((Some(int(3)), vec![-1, 0, 2])));
        assert_eq!(detect_mu(&[rat(9, 4), rat(27, 8)]), Some((Some(rat(3, 2)), vec![2, 3])));
        assert_eq!(detect_mu(&[int(2), int(3)]), None);
        assert_eq!(detect_mu(&[int(-1), int(2)]), None);
    }

    #[test]
    fn json_round_trip() {
        let g = Grading::coordinate(&[1, 1, 2]);
        let s = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(s, r#"{"weights":[1,2],"bases":[[["1","0","0"],["0","1","0"]],[["0","0","1"]]]}"#);
        assert_eq!(Grading::from_json(3, &serde_json::from_str(&s).unwrap()).unwrap(), g);
        assert!(Grading::from_json(2, &serde_json::from_str(&s).unwrap()).is_err());
    }

    #[test]
    fn preservation() {
        let h = heisenberg();
        let g = standard();
        assert!(preserves_grading(&Automorphism::identity(Q, 3), &g).unwrap());
        let swap = Automorphism::from_rat_matrix(&h, &RatMatrix::from_int_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]])).unwrap();
        assert!(is_automorphism(&h, &Q, swap.matrix()).unwrap().holds());
        assert!(preserves_grading(&swap, &g).unwrap());
        let phi = automorphism_from_grading(&h, &g, Q, &int(2)).unwrap();
        assert!(preserves_grading(&phi, &g).unwrap());
        assert!(swap.commutes_with(&phi));
        // x -> x + z does not preserve the weight-1 space
        let shear = Automorphism::from_rat_matrix(&h, &RatMatrix::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1]])).unwrap();
        assert!(!preserves_grading(&shear, &g).unwrap());
    }
}
