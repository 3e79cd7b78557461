//! Real root counting and isolation with Sturm sequences.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::field::Rational;
use super::poly::RatPolynomial;
use super::LinearError;

/// Sturm chain of the squarefree part of a nonzero polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<RatPolynomial>,
}

impl SturmSequence {
    pub fn new(p: &RatPolynomial) -> Result<Self, LinearError> {
        if p.is_zero() {
            return Err(LinearError::ZeroPolynomial);
        }
        let s0 = p.squarefree_part();
        let mut chain = vec![s0.clone(), s0.derivative()];
        while !chain.last().expect("nonempty").is_zero() {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]).expect("nonzero divisor");
            chain.push(-&r);
        }
        chain.pop();
        Ok(SturmSequence { chain })
    }

    fn changes(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn sign_changes_at(&self, x: &Rational) -> usize {
        Self::changes(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn sign_changes_at_infinity(&self, positive: bool) -> usize {
        Self::changes(self.chain.iter().map(|p| {
            let lc = p.leading().expect("nonzero chain member");
            let mut s: i8 = if lc.is_positive() { 1 } else { -1 };
            if !positive && p.degree().expect("nonzero") % 2 == 1 {
                s = -s;
            }
            s
        }))
    }

    /// Distinct roots in `(lo, hi]`.
    pub fn count_in(&self, lo: &Rational, hi: &Rational) -> usize {
        if lo >= hi {
            return 0;
        }
        self.sign_changes_at(lo) - self.sign_changes_at(hi)
    }

    /// All distinct real roots.
    pub fn count_all(&self) -> usize {
        self.sign_changes_at_infinity(false) - self.sign_changes_at_infinity(true)
    }

    /// Distinct roots in `(-∞, hi]`.
    pub fn count_below(&self, hi: &Rational) -> usize {
        self.sign_changes_at_infinity(false) - self.sign_changes_at(hi)
    }

    /// Distinct roots in `(lo, ∞)`.
    pub fn count_above(&self, lo: &Rational) -> usize {
        self.sign_changes_at(lo) - self.sign_changes_at_infinity(true)
    }
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`.
pub fn real_roots_in_interval(p: &RatPolynomial, lo: &Rational, hi: &Rational) -> Result<usize, LinearError> {
    Ok(SturmSequence::new(p)?.count_in(lo, hi))
}

/// Cauchy bound: every complex root has modulus strictly below the result.
pub fn cauchy_bound(p: &RatPolynomial) -> Rational {
    let Some(lc) = p.leading() else { return Rational::one() };
    let n = p.degree().expect("nonzero");
    let m = p.coeffs()[..n].iter().map(|c| (c / lc).abs()).max().unwrap_or_else(Rational::zero);
    m + Rational::one()
}

/// Disjoint intervals `(a, b]`, sorted, each holding exactly one distinct real
/// root, of width at most `max_width` when given.
pub fn isolate_real_roots(p: &RatPolynomial, max_width: Option<&Rational>) -> Result<Vec<(Rational, Rational)>, LinearError> {
    let seq = SturmSequence::new(p)?;
    let b = cauchy_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = seq.count_in(&lo, &hi);
        if n == 0 {
            continue;
        }
        let narrow = max_width.is_none_or(|w| &(&hi - &lo) <= w);
        if n == 1 && narrow {
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort();
    Ok(out)
}

/// Rational roots with multiplicities, ascending.
///
/// Roots of the primitive integer form have denominators dividing the leading
/// coefficient `L`, so isolating intervals of width below `1/L` contain at
/// most two candidates `k/L`, which are tested exactly.
pub fn rational_roots(p: &RatPolynomial) -> Result<Vec<(Rational, usize)>, LinearError> {
    if p.is_zero() {
        return Err(LinearError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (k, factor) in p.squarefree_decomposition().iter().enumerate() {
        let ints = factor.primitive_integer();
        let lead: BigInt = ints.last().expect("nonconstant factor").clone();
        let width = Rational::new(BigInt::one(), lead.clone());
        for (lo, hi) in isolate_real_roots(factor, Some(&width))? {
            let scaled = (&lo * Rational::from_integer(lead.clone())).floor().to_integer();
            for off in 0..=2 {
                let cand = Rational::new(&scaled + BigInt::from(off), lead.clone());
                if cand > lo && cand <= hi && factor.eval(&cand).is_zero() {
                    out.push((cand, k + 1));
                    break;
                }
            }
        }
    }
    out.sort();
    Ok(out)
}
