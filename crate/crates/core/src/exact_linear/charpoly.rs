//! Characteristic polynomials by fraction-free (Bareiss) elimination on
//! `xI - M` over `F[x]`, after splitting `M` into the diagonal blocks of its
//! block-triangular form.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::field::{Field, Rational, Q};
use super::matrix::{Matrix, RatMatrix, SparseMatrix};
use super::poly::RatPolynomial;
use super::LinearError;

/// Polynomial over a generic field as a low-first coefficient list.
type Poly<T> = Vec<T>;

fn trim<F: Field>(f: &F, mut p: Poly<F::Elem>) -> Poly<F::Elem> {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
    p
}

fn p_mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if f.is_zero(y) {
                continue;
            }
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

fn p_sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    trim(f, (0..n).map(|k| f.sub(a.get(k).unwrap_or(&z), b.get(k).unwrap_or(&z))).collect())
}

/// Exact quotient `a / b`; the remainder must vanish.
fn p_div_exact<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let db = b.len() - 1;
    let lc_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        debug_assert!(rem.iter().all(|c| f.is_zero(c)));
        return Vec::new();
    }
    let mut quot = vec![f.zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = f.mul(&rem[k + db], &lc_inv);
        if f.is_zero(&c) {
            continue;
        }
        for (j, d) in b.iter().enumerate() {
            rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, d));
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| f.is_zero(c)), "Bareiss division must be exact");
    trim(f, quot)
}

/// `det(xI - m)` for a dense square block, by Bareiss elimination.
pub fn bareiss_charpoly<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<Vec<F::Elem>, LinearError> {
    if !m.is_square() {
        return Err(LinearError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(vec![field.one()]);
    }
    let mut a: Vec<Vec<Poly<F::Elem>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = field.neg(m.get(i, j));
                    if i == j {
                        trim(field, vec![c, field.one()])
                    } else {
                        trim(field, vec![c])
                    }
                })
                .collect()
        })
        .collect();
    let mut negate = false;
    let mut prev: Poly<F::Elem> = vec![field.one()];
    for k in 0..n - 1 {
        if a[k][k].is_empty() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_empty()) else {
                return Ok(Vec::new());
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = p_mul(field, &a[k][k], &a[i][j]);
                let rhs = p_mul(field, &a[i][k], &a[k][j]);
                a[i][j] = p_div_exact(field, &p_sub(field, &lhs, &rhs), &prev);
            }
            a[i][k] = Vec::new();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.iter().map(|c| field.neg(c)).collect() } else { det })
}

/// Index sets of the diagonal blocks of the block-triangular form (strongly
/// connected components of the nonzero pattern).
pub fn diagonal_blocks<T: Clone + PartialEq>(m: &SparseMatrix<T>) -> Vec<Vec<usize>> {
    let n = m.cols();
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, m.nnz());
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for j in 0..n {
        for (i, _) in m.column(j).iter() {
            if i != j {
                g.add_edge(nodes[j], nodes[i], ());
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut b: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
            b.sort_unstable();
            b
        })
        .collect();
    blocks.sort_by_key(|b| b[0]);
    blocks
}

/// Characteristic polynomials of the diagonal blocks; their product is the
/// characteristic polynomial of `m`.
pub fn charpoly_factors<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> Result<Vec<Vec<F::Elem>>, LinearError> {
    if m.rows() != m.cols() {
        return Err(LinearError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    diagonal_blocks(m)
        .into_iter()
        .map(|block| {
            let k = block.len();
            let mut sub = Matrix::zeros_in(field, k, k);
            for (bj, &j) in block.iter().enumerate() {
                for (bi, &i) in block.iter().enumerate() {
                    if let Some(v) = m.column(j).get(i) {
                        sub.set(bi, bj, v.clone());
                    }
                }
            }
            bareiss_charpoly(field, &sub)
        })
        .collect()
}

impl RatMatrix {
    /// `det(xI - m)`, monic of degree `rows(m)`.
    pub fn charpoly(&self) -> Result<RatPolynomial, LinearError> {
        Ok(self
            .charpoly_factored()?
            .iter()
            .fold(RatPolynomial::one(), |acc, p| &acc * p))
    }

    /// Block factors of the characteristic polynomial.
    pub fn charpoly_factored(&self) -> Result<Vec<RatPolynomial>, LinearError> {
        if !self.is_square() {
            return Err(LinearError::NotSquare { rows: self.rows(), cols: self.cols() });
        }
        sparse_rat_charpoly_factored(&self.to_sparse())
    }
}

pub fn sparse_rat_charpoly_factored(m: &SparseMatrix<Rational>) -> Result<Vec<RatPolynomial>, LinearError> {
    Ok(charpoly_factors(&Q, m)?.into_iter().map(RatPolynomial::new).collect())
}
