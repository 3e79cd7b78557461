use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::galois::height_vectors;
use super::{NumberField, NumberFieldElement, NumberFieldError};
use crate::exact_linear::{Field, RatPolynomial, Rational, SturmSequence};

/// Outcome of [`pisot_unit_check`]. Conjugate counts are over the `d`
/// embeddings, with multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PisotReport {
    pub charpoly: RatPolynomial,
    pub algebraic_integer: bool,
    pub norm: crate::exact_linear::json::JsonRational,
    pub unit: bool,
    pub real_conjugates: usize,
    pub conjugates_outside: usize,
    pub conjugates_inside: usize,
    pub conjugates_on_boundary: usize,
    /// Value at the embedding sending `x` to the largest root of `f` is > 1.
    pub dominant_at_embedding: bool,
    pub passed: bool,
}

/// Unit Pisot test: integral characteristic polynomial with constant term
/// ±1, exactly one conjugate of absolute value > 1, the other conjugates in
/// `(-1, 1)`, and the large conjugate is the value under the embedding at the
/// largest root of `f` (so the element itself is the Pisot number).
pub fn pisot_unit_check(field: &NumberField, mu: &NumberFieldElement) -> PisotReport {
    let charpoly = field.charpoly(mu);
    let algebraic_integer = charpoly.is_integral();
    let norm = field.norm(mu);
    let unit = algebraic_integer && norm.abs().is_one();
    let (one, minus_one) = (Rational::one(), -Rational::one());
    let (mut real, mut outside, mut inside, mut boundary) = (0, 0, 0, 0);
    for (k, factor) in charpoly.squarefree_decomposition().iter().enumerate() {
        if factor.degree() == Some(0) {
            continue;
        }
        let mult = k + 1;
        let seq = SturmSequence::new(factor).expect("nonzero");
        let at_one = usize::from(factor.eval(&one).is_zero());
        let at_minus_one = usize::from(factor.eval(&minus_one).is_zero());
        real += mult * seq.count_all();
        outside += mult * (seq.count_above(&one) + seq.count_below(&minus_one) - at_minus_one);
        inside += mult * (seq.count_in(&minus_one, &one) - at_one);
        boundary += mult * (at_one + at_minus_one);
    }
    let d = field.degree();
    let shape_ok = unit && outside == 1 && inside == d - 1 && real == d;
    let dominant_at_embedding = shape_ok && {
        let theta = field.real_embeddings().pop().expect("totally real");
        field.compare_at_root(mu, &one, &theta) == Ordering::Greater
    };
    let passed = shape_ok && dominant_at_embedding;
    PisotReport {
        charpoly,
        algebraic_integer,
        norm: crate::exact_linear::json::JsonRational(norm),
        unit,
        real_conjugates: real,
        conjugates_outside: outside,
        conjugates_inside: inside,
        conjugates_on_boundary: boundary,
        dominant_at_embedding,
        passed,
    }
}

/// First element with integer power-basis coordinates, by height and then
/// lexicographically from the constant coordinate up, that passes
/// [`pisot_unit_check`].
pub fn find_pisot_unit(field: &NumberField, height_bound: i64) -> Option<NumberFieldElement> {
    height_vectors(field.degree(), height_bound).find_map(|c| {
        let mu = field.element_from_ints(&c).expect("length is the degree");
        if !field.norm(&mu).abs().is_one() {
            return None;
        }
        pisot_unit_check(field, &mu).passed.then_some(mu)
    })
}

/// `mu` or `mu²`, whichever has norm 1, and whether squaring happened.
pub fn normalize_norm(field: &NumberField, mu: &NumberFieldElement) -> (NumberFieldElement, bool) {
    if field.norm(mu).is_negative() {
        (field.mul(mu, mu), true)
    } else {
        (mu.clone(), false)
    }
}

/// Outcome of [`full_rank_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullRankReport {
    pub max_len: u32,
    pub checked: usize,
    pub violation: Option<Vec<i64>>,
    pub passed: bool,
}

/// For every `d ∈ ℤ^n` with `Σ|d_i| ≤ max_len` and not all entries equal,
/// checks `Π σ^{i}(mu)^{d_i} ≠ ±1` exactly in the field.
pub fn full_rank_check(field: &NumberField, mu: &NumberFieldElement, max_len: u32) -> Result<FullRankReport, NumberFieldError> {
    let conj = field.conjugates(mu)?;
    let n = conj.len();
    let l = max_len as i64;
    let mut powers: Vec<Vec<NumberFieldElement>> = Vec::with_capacity(n);
    for c in &conj {
        let inv = field.inv(c).ok_or(NumberFieldError::Degree { expected: n, found: 0 })?;
        powers.push((-l..=l).map(|e| field.pow(if e < 0 { &inv } else { c }, e.abs()).expect("nonzero")).collect());
    }
    let minus_one = field.neg(&field.one());
    let mut checked = 0;
    let mut violation = None;
    let mut d = vec![0i64; n];
    for_each_bounded(&mut d, 0, l, &mut |d| {
        if d.iter().all(|&x| x == d[0]) {
            return true;
        }
        checked += 1;
        let mut p = powers[0][(d[0] + l) as usize].clone();
        for i in 1..n {
            p = field.mul(&p, &powers[i][(d[i] + l) as usize]);
        }
        if field.is_one(&p) || p == minus_one {
            violation = Some(d.to_vec());
            return false;
        }
        true
    });
    Ok(FullRankReport { max_len, checked, passed: violation.is_none(), violation })
}

/// Visits all vectors with `Σ|d_i| ≤ budget`; stops when `f` returns false.
fn for_each_bounded(d: &mut [i64], i: usize, budget: i64, f: &mut impl FnMut(&[i64]) -> bool) -> bool {
    if i == d.len() {
        return f(d);
    }
    for v in -budget..=budget {
        d[i] = v;
        if !for_each_bounded(d, i + 1, budget - v.abs(), f) {
            return false;
        }
    }
    d[i] = 0;
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::{int, unit_disk_root_count};

    fn quartic() -> NumberField {
        NumberField::from_ints(&[2, 0, -4, 0, 1], Some(&[0, -3, 0, 1])).unwrap()
    }

    #[test]
    fn non_pisot_constants() {
        let e = quartic();
        let r = pisot_unit_check(&e, &e.one());
        assert!(r.unit && !r.passed && r.conjugates_on_boundary == 4);
        let r = pisot_unit_check(&e, &e.from_rational(&int(2)));
        assert!(r.algebraic_integer && !r.unit && !r.passed);
        assert_eq!(r.norm.0, int(16));
    }

    #[test]
    fn golden_ratio_smoke() {
        // ℚ(√5) in the power basis 1, √5: the first hit is 2 + √5 = φ³
        let k = NumberField::from_ints(&[-5, 0, 1], Some(&[0, -1])).unwrap();
        let mu = find_pisot_unit(&k, 3).unwrap();
        assert_eq!(mu, k.element_from_ints(&[2, 1]).unwrap());
        assert_eq!(k.norm(&mu), int(-1));
        let (sq, squared) = normalize_norm(&k, &mu);
        assert!(squared && k.norm(&sq) == int(1));
        assert!(pisot_unit_check(&k, &sq).passed);
        assert!(find_pisot_unit(&k, 0).is_none());
    }

    #[test]
    fn quartic_search_agrees_with_unit_disk() {
        let e = quartic();
        let mu = find_pisot_unit(&e, 3).unwrap();
        let r = pisot_unit_check(&e, &mu);
        assert!(r.passed);
        let c = unit_disk_root_count(&r.charpoly).unwrap();
        assert_eq!((c.inside, c.on_circle, c.outside), (3, 0, 1));
        let (mu, _) = normalize_norm(&e, &mu);
        assert_eq!(e.norm(&mu), int(1));
        let fr = full_rank_check(&e, &mu, 6).unwrap();
        assert!(fr.passed, "{fr:?}");
        assert!(fr.checked > 1000);
    }

    #[test]
    fn full_rank_catches_subfield_elements() {
        // 1 + √2 lies in the quadratic subfield, so it equals its σ²-conjugate
        let e = quartic();
        let sqrt2 = e.element_from_ints(&[-2, 0, 1, 0]).unwrap();
        let u = e.add(&e.one(), &sqrt2);
        assert_eq!(e.mul(&sqrt2, &sqrt2), e.from_rational(&int(2)));
        let fr = full_rank_check(&e, &u, 2).unwrap();
        assert!(!fr.passed);
    }
}
