#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nilgrade::automorphisms::{induce_on_quotient, Automorphism};
use nilgrade::exact_linear::{int, rat, QVec, RatMatrix, Rational, Rationals, SparseMatrix, Subspace, Q};
use nilgrade::free_nilpotent::{HallBasis, HallShape};
use nilgrade::gradings::Grading;
use nilgrade::lie_core::{ideal_closure, quotient, LieAlgebra};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn mobius(n: usize) -> i64 {
    let (mut n, mut m, mut p) = (n, 1i64, 2usize);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// Witt's formula `(1/d) Σ_{e | d} μ(e) g^{d/e}` for degrees `1..=c`.
pub fn witt_dims(g: usize, c: usize) -> Vec<usize> {
    (1..=c)
        .map(|d| {
            let s: BigInt = (1..=d).filter(|e| d % e == 0).map(|e| mobius(e) * BigInt::from(g).pow((d / e) as u32)).sum();
            usize::try_from(s / BigInt::from(d)).unwrap()
        })
        .collect()
}

pub fn random_rational(rng: &mut impl Rng, num: i64, den: i64) -> Rational {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn random_nonzero_rational(rng: &mut impl Rng, num: i64, den: i64) -> Rational {
    loop {
        let q = random_rational(rng, num, den);
        if q != int(0) {
            return q;
        }
    }
}

pub fn random_int_matrix(rng: &mut impl Rng, n: usize, bound: i64) -> RatMatrix {
    let rows = (0..n).map(|_| (0..n).map(|_| int(rng.gen_range(-bound..=bound))).collect()).collect();
    RatMatrix::from_rows(rows).unwrap()
}

pub fn random_invertible(rng: &mut impl Rng, n: usize, bound: i64) -> RatMatrix {
    loop {
        let m = random_int_matrix(rng, n, bound);
        if m.rank() == n {
            return m;
        }
    }
}

/// Integer matrix with integer inverse: a permutation followed by `2n`
/// random elementary operations with multiplier `±1`.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> RatMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut rows: Vec<Vec<i64>> = perm.iter().map(|&k| (0..n).map(|j| i64::from(j == k)).collect()).collect();
    if n > 1 {
        for _ in 0..2 * n {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i != j {
                let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                let src = rows[j].clone();
                for (a, b) in rows[i].iter_mut().zip(src) {
                    *a += c * b;
                }
            }
        }
    }
    RatMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect()).unwrap()
}

/// Ideal generated by `gens`, by saturating under `ad` of every basis vector
/// and comparing dense ranks until nothing new appears.
pub fn ideal_closure_oracle(alg: &LieAlgebra, gens: &[QVec]) -> RatMatrix {
    let n = alg.dim();
    let dense = |vs: &[QVec]| {
        let rows: Vec<Vec<Rational>> = vs.iter().map(|v| v.to_dense(&Q, n)).collect();
        if rows.is_empty() {
            RatMatrix::zeros(0, n)
        } else {
            RatMatrix::from_rows(rows).unwrap()
        }
    };
    let mut span: Vec<QVec> = gens.to_vec();
    loop {
        let before = dense(&span).rank();
        let mut next = span.clone();
        for v in &span {
            for i in 0..n {
                next.push(alg.bracket(&QVec::unit(&Q, i), v).unwrap());
            }
        }
        let (rref, pivots) = dense(&next).rref_in(&Q);
        span = (0..pivots.len()).map(|r| QVec::from_dense(&Q, rref.row(r))).collect();
        if pivots.len() == before {
            return dense(&span);
        }
    }
}

/// Row spaces of two matrices agree, by dense ranks.
pub fn same_row_space(a: &RatMatrix, b: &RatMatrix) -> bool {
    let ra = a.rank();
    if ra != b.rank() {
        return false;
    }
    let mut rows = a.row_vecs();
    rows.extend(b.row_vecs());
    rows.is_empty() || RatMatrix::from_rows(rows).unwrap().rank() == ra
}

pub fn dense_of(s: &Subspace) -> RatMatrix {
    if s.dim() == 0 {
        RatMatrix::zeros(0, s.ambient_dim())
    } else {
        s.basis_matrix()
    }
}

/// The algebra in the basis `f_j = Σ_i p[i][j] e_i`.
pub fn change_basis(alg: &LieAlgebra, p: &RatMatrix) -> LieAlgebra {
    let n = alg.dim();
    let pinv = p.inverse().expect("invertible");
    let cols: Vec<QVec> = (0..n).map(|j| QVec::from_dense(&Q, &p.column(j))).collect();
    let to_new = |v: &QVec| QVec::from_dense(&Q, &pinv.apply_in(&Q, &v.to_dense(&Q, n)).unwrap());
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let b = alg.bracket(&cols[i], &cols[j]).unwrap();
            if !b.is_zero() {
                brackets.push((i, j, to_new(&b)));
            }
        }
    }
    LieAlgebra::from_brackets(n, brackets).unwrap()
}

/// `p^{-1} m p`.
pub fn conjugate(m: &RatMatrix, p: &RatMatrix) -> RatMatrix {
    p.inverse().unwrap().mul(m).unwrap().mul(p).unwrap()
}

/// The endomorphism of the free nilpotent algebra sending `X_k` to
/// `images[k]`, extended through the Hall words.
pub fn induced_by_generators(hall: &HallBasis, images: &[QVec]) -> SparseMatrix<Rational> {
    let mut cols: Vec<QVec> = Vec::with_capacity(hall.dim());
    for w in hall.words() {
        let img = match w.shape {
            HallShape::Generator(k) => images[k].clone(),
            HallShape::Bracket(a, b) => hall.bracket(&cols[a], &cols[b]),
        };
        cols.push(img);
    }
    SparseMatrix::from_columns(hall.dim(), cols).unwrap()
}

/// Random positively graded nilpotent algebra of dimension at most 8, in a
/// random basis, with automorphisms known to preserve its grading.
pub struct GradedSample {
    pub alg: LieAlgebra,
    pub grading: Grading,
    pub generator_weights: Vec<i64>,
    pub symmetries: Vec<Automorphism>,
    pub description: String,
}

pub fn random_graded_algebra(rng: &mut impl Rng) -> GradedSample {
    let shapes = [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (4, 2)];
    let (g, c) = *shapes.choose(rng).unwrap();
    let hall = HallBasis::generate(g, c).unwrap();
    let free = hall.to_lie_algebra();

    let mut blocks: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for w in hall.words().iter().filter(|w| w.degree >= 2) {
        blocks.entry(w.multidegree.clone()).or_default().push(w.index);
    }
    let blocks: Vec<Vec<usize>> = blocks.into_values().collect();
    let mut relations: Vec<QVec> = Vec::new();
    let mut ideal = ideal_closure(&free, &[]).unwrap();
    while free.dim() - ideal.dim() > 8 || (relations.is_empty() && rng.gen_bool(0.5)) {
        let block = blocks.choose(rng).unwrap();
        let r = QVec::from_entries(&Q, block.iter().map(|&i| (i, random_rational(rng, 3, 2))));
        if r.is_zero() {
            continue;
        }
        relations.push(r);
        ideal = ideal_closure(&free, &relations).unwrap();
    }
    let q = quotient(&free, &ideal).unwrap();
    let md = q.algebra.multidegree().expect("multihomogeneous relations").to_vec();

    let generator_weights: Vec<i64> = (0..g).map(|_| rng.gen_range(1..=3)).collect();
    let weight = |d: &[u32]| d.iter().zip(&generator_weights).map(|(x, w)| *x as i64 * w).sum::<i64>();
    let n = q.algebra.dim();

    let mut symmetries_old: Vec<RatMatrix> = Vec::new();
    for _ in 0..2 {
        let t: Vec<Rational> = (0..g).map(|_| random_nonzero_rational(rng, 3, 3)).collect();
        let diag: Vec<Rational> = md.iter().map(|d| d.iter().zip(&t).map(|(e, x)| num_traits::pow(x.clone(), *e as usize)).product()).collect();
        symmetries_old.push(RatMatrix::diagonal(&diag));
    }
    for _ in 0..4 {
        // generators of equal weight mix; a generator may pick up words of its weight
        let images: Vec<QVec> = (0..g)
            .map(|k| {
                let same: Vec<usize> = hall.words().iter().filter(|w| weight(&w.multidegree) == generator_weights[k] && (w.degree > 1 || rng.gen_bool(0.7))).map(|w| w.index).collect();
                let mut v = QVec::unit(&Q, k).scale(&Q, &random_nonzero_rational(rng, 2, 1));
                for i in same {
                    v = v.add(&Q, &QVec::unit(&Q, i).scale(&Q, &random_rational(rng, 1, 1)));
                }
                v
            })
            .collect();
        let m = induced_by_generators(&hall, &images);
        let Ok(a) = Automorphism::new(&free, Rationals, m) else { continue };
        if let Ok(b) = induce_on_quotient(&a, &q.projection) {
            symmetries_old.push(b.to_rat_matrix());
        }
    }

    let p = random_unimodular(rng, n);
    let alg = change_basis(&q.algebra, &p);
    let pinv = p.inverse().unwrap();
    let mut by_weight: BTreeMap<i64, Vec<QVec>> = BTreeMap::new();
    for (k, d) in md.iter().enumerate() {
        by_weight.entry(weight(d)).or_default().push(QVec::from_dense(&Q, &pinv.column(k)));
    }
    let grading = Grading::new(by_weight.into_iter().map(|(w, vs)| (w, Subspace::from_vectors(n, &vs).unwrap()))).unwrap();
    let symmetries = symmetries_old.iter().map(|m| Automorphism::from_rat_matrix(&alg, &conjugate(m, &p)).expect("conjugated automorphism")).collect();
    GradedSample {
        alg,
        grading,
        generator_weights,
        symmetries,
        description: format!("free({g},{c}) / {} relations, dim {n}", relations.len()),
    }
}
