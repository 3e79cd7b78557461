//! Exact location of complex roots relative to the unit circle.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::field::Rational;
use super::poly::RatPolynomial;
use super::sturm::SturmSequence;
use super::LinearError;

/// Root counts with multiplicity: `|z| < 1`, `|z| = 1`, `|z| > 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitDiskCount {
    pub inside: usize,
    pub on_circle: usize,
    pub outside: usize,
}

impl UnitDiskCount {
    pub fn total(&self) -> usize {
        self.inside + self.on_circle + self.outside
    }
}

impl std::ops::Add for UnitDiskCount {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        UnitDiskCount { inside: self.inside + o.inside, on_circle: self.on_circle + o.on_circle, outside: self.outside + o.outside }
    }
}

/// Partition of the roots of `p` (with multiplicity) by modulus relative to 1.
pub fn unit_disk_root_count(p: &RatPolynomial) -> Result<UnitDiskCount, LinearError> {
    let Some(n) = p.degree() else { return Err(LinearError::ZeroPolynomial) };
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let p = RatPolynomial::new(p.coeffs()[zeros..].to_vec());
    // Roots of gcd(p, p*) off the circle come in pairs z, 1/z; the cofactor
    // has no circle roots.
    let common = p.gcd(&p.reversed());
    let on_circle = circle_root_count(&common);
    let paired = common.degree().expect("nonzero gcd") - on_circle;
    let rest = p.exact_div(&common).expect("gcd divides");
    let inside = zeros + paired / 2 + inside_count(&rest);
    Ok(UnitDiskCount { inside, on_circle, outside: n - inside - on_circle })
}

/// Roots on the unit circle, with multiplicity, of a self-reciprocal `g`.
///
/// After removing `x = ±1`, `g` is `x^m T(x + 1/x)` where circle roots
/// correspond to roots of `T` in `(-2, 2)`.
fn circle_root_count(g: &RatPolynomial) -> usize {
    if g.degree() == Some(0) {
        return 0;
    }
    let mut g = g.clone();
    let mut count = 0;
    for r in [Rational::one(), -Rational::one()] {
        let m = g.root_multiplicity(&r);
        count += m;
        let lin = RatPolynomial::new(vec![-r, Rational::one()]);
        g = g.exact_div(&lin.pow(m as u32)).expect("root factor divides");
    }
    let d = g.degree().expect("nonzero gcd");
    if d == 0 {
        return count;
    }
    debug_assert!(d % 2 == 0 && g == g.reversed().monic(), "common factor must be palindromic");
    let t = palindromic_to_trace(&g);
    let (lo, hi) = (Rational::from_integer((-2).into()), Rational::from_integer(2.into()));
    for (k, factor) in t.squarefree_decomposition().iter().enumerate() {
        let seq = SturmSequence::new(factor).expect("nonzero factor");
        count += 2 * (k + 1) * seq.count_in(&lo, &hi);
    }
    count
}

/// For palindromic `h` of degree `2m`, the `T` with `h(x) = x^m T(x + 1/x)`.
fn palindromic_to_trace(h: &RatPolynomial) -> RatPolynomial {
    let m = h.degree().expect("nonzero") / 2;
    // D_k(y) = x^k + x^-k: D_0 = 2, D_1 = y, D_{k+1} = y D_k - D_{k-1}
    let y = RatPolynomial::x();
    let mut t = RatPolynomial::constant(h.coeff(m));
    let mut prev = RatPolynomial::constant(Rational::from_integer(2.into()));
    let mut cur = y.clone();
    for k in 1..=m {
        t = &t + &cur.scale(&h.coeff(m + k));
        let next = &(&y * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    t
}

/// Roots strictly inside the unit disk, for `p(0) != 0` and no roots on the
/// circle.
fn inside_count(p: &RatPolynomial) -> usize {
    let n = p.degree().expect("nonzero");
    if n == 0 {
        return 0;
    }
    if n == 1 {
        let root = -&p.coeffs()[0] / &p.coeffs()[1];
        return usize::from(root.abs() < Rational::one());
    }
    if let Some(k) = schur_cohn_inside(p) {
        return k;
    }
    // Inside roots of p(s x) for s just below 1 are exactly the inside roots
    // of p once 1 - s is below the distance from any inside root to the
    // circle.
    let mut k = scaling_exponent(p);
    loop {
        let s = Rational::one() - Rational::new(BigInt::one(), BigInt::one() << k);
        if let Some(count) = schur_cohn_inside(&p.scale_var(&s)) {
            return count;
        }
        k += 1;
    }
}

/// `k` with `2^-k` below a Mignotte-type lower bound on `1 - |z|` over roots
/// `z` of `p` inside the disk.
///
/// For such `z`, both `z` and `1/conj(z)` are roots of `p·p*`, and
/// `1 - |z| >= |z - 1/conj(z)| / 4` when `|z| >= 1/2`; the distance is
/// bounded below by the root separation of the squarefree part.
fn scaling_exponent(p: &RatPolynomial) -> u64 {
    let sq = (p * &p.reversed()).squarefree_part();
    let ints = sq.primitive_integer();
    let d = BigInt::from(ints.len() - 1);
    let norm_sq: BigInt = ints.iter().map(|c| c * c).sum();
    let mut m = norm_sq.sqrt();
    if &m * &m < norm_sq {
        m += 1;
    }
    let deg = ints.len() - 1;
    let bound = BigInt::from(4) * num_traits::pow(d, deg.div_ceil(2) + 1) * num_traits::pow(m, deg.saturating_sub(1));
    bound.bits() + 1
}

/// Schur–Cohn reduction counting inside roots; requires no roots on the
/// circle, returns `None` when a step has `|a_0| = |a_n|`.
fn schur_cohn_inside(p: &RatPolynomial) -> Option<usize> {
    let mut p = p.monic();
    let mut count = 0;
    loop {
        let Some(n) = p.degree() else { unreachable!("Rouché steps keep the polynomial nonzero") };
        if n == 0 {
            return Some(count);
        }
        let a0 = p.coeffs()[0].clone();
        if a0.is_zero() {
            p = RatPolynomial::new(p.coeffs()[1..].to_vec());
            count += 1;
            continue;
        }
        let an = p.leading().expect("nonzero").clone();
        let star = p.reversed_full(n);
        let q = match a0.abs().cmp(&an.abs()) {
            std::cmp::Ordering::Equal => return None,
            // Same inside count as p; vanishes at 0.
            std::cmp::Ordering::Less => {
                let q = &p.scale(&an) - &star.scale(&a0);
                count += 1;
                RatPolynomial::new(q.coeffs()[1..].to_vec())
            }
            // Same inside count as p; degree drops.
            std::cmp::Ordering::Greater => &p.scale(&a0) - &star.scale(&an),
        };
        p = q.monic();
    }
}

impl RatPolynomial {
    /// `x^n p(1/x)` for `n >= deg p`.
    fn reversed_full(&self, n: usize) -> RatPolynomial {
        let mut c = self.coeffs().to_vec();
        c.resize(n + 1, Rational::zero());
        c.reverse();
        RatPolynomial::new(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::field::{int, rat};

    fn count(p: &RatPolynomial) -> (usize, usize, usize) {
        let c = unit_disk_root_count(p).unwrap();
        (c.inside, c.on_circle, c.outside)
    }

    #[test]
    fn fixed_battery() {
        assert_eq!(count(&RatPolynomial::from_ints(&[6, -5, 1])), (0, 0, 2));
        assert_eq!(count(&RatPolynomial::from_ints(&[1, 0, 1])), (0, 2, 0));
        assert_eq!(count(&RatPolynomial::from_roots(&[int(2), rat(1, 2)])), (1, 0, 1));
        assert_eq!(count(&RatPolynomial::from_roots(&[int(1), int(1), int(-1), int(3)])), (0, 3, 1));
        assert!(unit_disk_root_count(&RatPolynomial::zero()).is_err());
    }

    #[test]
    fn zero_roots_and_constants() {
        assert_eq!(count(&RatPolynomial::from_ints(&[0, 0, 1])), (2, 0, 0));
        assert_eq!(count(&RatPolynomial::from_ints(&[5])), (0, 0, 0));
    }

    #[test]
    fn cyclotomic_and_reciprocal_pairs() {
        // x^4 + x^3 + x^2 + x + 1
        assert_eq!(count(&RatPolynomial::from_ints(&[1, 1, 1, 1, 1])), (0, 4, 0));
        // (x^2 + x + 1)^2 (x - 3)(x - 1/3)
        let p = &RatPolynomial::from_ints(&[1, 1, 1]).pow(2) * &RatPolynomial::from_roots(&[int(3), rat(1, 3)]);
        assert_eq!(count(&p), (1, 4, 1));
        // x^2 - x - 1
        assert_eq!(count(&RatPolynomial::from_ints(&[-1, -1, 1])), (1, 0, 1));
        // conjugate pairs of modulus 1/2 and 2
        let q = &RatPolynomial::new(vec![rat(1, 4), rat(1, 2), int(1)]) * &RatPolynomial::from_ints(&[4, 2, 1]);
        assert_eq!(count(&q), (2, 0, 2));
    }
}
