use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::NumberField;
use crate::exact_linear::{rational_roots, Field, RatPolynomial, SturmSequence};

/// Outcome of [`galois_check`]; `passed` needs every field true.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisReport {
    pub degree: usize,
    /// `None` when the degree is beyond the supported exact test (> 4).
    pub irreducible: Option<bool>,
    pub totally_real: bool,
    pub sigma: Option<RatPolynomial>,
    pub sigma_is_automorphism: bool,
    pub sigma_order: Option<usize>,
    pub passed: bool,
}

/// Irreducibility over ℚ of a monic integer polynomial of degree at most 4:
/// no rational root, and for degree 4 no split into two monic integer
/// quadratics. `None` above degree 4.
pub fn is_irreducible(f: &RatPolynomial) -> Option<bool> {
    let d = f.degree()?;
    if d > 4 || !f.is_monic() || !f.is_integral() {
        return None;
    }
    if d <= 1 {
        return Some(d == 1);
    }
    if !rational_roots(f).expect("nonzero").is_empty() {
        return Some(false);
    }
    if d < 4 {
        return Some(true);
    }
    let c: Vec<BigInt> = f.coeffs().iter().map(|q| q.to_integer()).collect();
    // (x² + a x + b)(x² + c x + e): b e = c0, a + c = c3, b + e + a c = c2, a e + b c = c1
    let c0 = c[0].abs();
    let mut divisors = Vec::new();
    let mut k = BigInt::from(1);
    while &k * &k <= c0 {
        if (&c0 % &k).is_zero() {
            divisors.push(k.clone());
            divisors.push(&c0 / &k);
        }
        k += 1;
    }
    for b in divisors.iter().flat_map(|b| [b.clone(), -b]) {
        let e = &c[0] / &b;
        let s = &c[3];
        let p = &c[2] - &b - &e;
        // a, c are the roots of t² - s t + p
        let disc = s * s - BigInt::from(4) * &p;
        if disc.is_negative() {
            continue;
        }
        let r = disc.sqrt();
        if &r * &r != disc || !(s + &r).is_even() {
            continue;
        }
        for (a, cc) in [((s + &r) / 2, (s - &r) / 2), ((s - &r) / 2, (s + &r) / 2)] {
            if &a * &e + &b * &cc == c[1] {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// Checks that `f` is irreducible and totally real and that the field's
/// `σ` is an automorphism generating a cyclic group of order `deg f`.
pub fn galois_check(field: &NumberField) -> GaloisReport {
    let f = field.min_poly();
    let d = field.degree();
    let irreducible = is_irreducible(f);
    let totally_real = SturmSequence::new(f).expect("nonzero").count_all() == d && f.squarefree_part().degree() == Some(d);
    let sigma = field.sigma_poly().cloned();
    let sigma_is_automorphism = sigma.as_ref().is_some_and(|g| is_root_map(field, g));
    let sigma_order = if sigma_is_automorphism { sigma_order(field) } else { None };
    let passed = irreducible == Some(true) && totally_real && sigma_is_automorphism && sigma_order == Some(d);
    GaloisReport { degree: d, irreducible, totally_real, sigma, sigma_is_automorphism, sigma_order, passed }
}

/// `f(g(x)) ≡ 0 mod f`.
fn is_root_map(field: &NumberField, g: &RatPolynomial) -> bool {
    let image = field.element_from_poly(g);
    field.is_zero(&field.eval_poly(field.min_poly(), &image))
}

/// Order of `σ` as a map on the field, up to the degree.
fn sigma_order(field: &NumberField) -> Option<usize> {
    let x = field.generator();
    let mut y = x.clone();
    for k in 1..=field.degree() {
        y = field.sigma(&y).ok()?;
        if y == x {
            return Some(k);
        }
    }
    None
}

/// Integer vectors of length `d` and height exactly `h` for `h = 1..=max`,
/// in lexicographic order within each height.
pub(crate) fn height_vectors(d: usize, max: i64) -> impl Iterator<Item = Vec<i64>> {
    (1..=max).flat_map(move |h| {
        let mut cur = vec![-h; d];
        let mut done = false;
        std::iter::from_fn(move || loop {
            if done {
                return None;
            }
            let out = cur.clone();
            // odometer with the last coordinate fastest
            let mut i = d;
            loop {
                if i == 0 {
                    done = true;
                    break;
                }
                i -= 1;
                if cur[i] < h {
                    cur[i] += 1;
                    for c in &mut cur[i + 1..] {
                        *c = -h;
                    }
                    break;
                }
            }
            if out.iter().any(|c| c.abs() == h) {
                return Some(out);
            }
        })
    })
}

/// First integer polynomial `g` of degree `< deg f`, by height then
/// lexicographically on coefficients from the constant term up, such that
/// `x ↦ g(x)` is an automorphism of order `deg f`.
pub fn find_sigma(min_poly: &RatPolynomial, max_height: i64) -> Option<RatPolynomial> {
    let base = NumberField::new(min_poly.clone(), None).ok()?;
    let d = base.degree();
    height_vectors(d, max_height).find_map(|c| {
        let g = RatPolynomial::from_ints(&c);
        if !is_root_map(&base, &g) {
            return None;
        }
        let field = base.with_sigma(g.clone()).ok()?;
        (sigma_order(&field) == Some(d)).then_some(g)
    })
}
