//! Exact arithmetic in a real number field `ℚ[x]/(f)` with a cyclic Galois
//! generator, plus the Pisot-unit and full-rank searches built on it.

mod galois;
mod pisot;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact_linear::json::JsonRational;
use crate::exact_linear::{Field, Matrix, RatMatrix, RatPolynomial, Rational, SturmSequence, Q};

pub use galois::{find_sigma, galois_check, is_irreducible, GaloisReport};
pub use pisot::{find_pisot_unit, full_rank_check, normalize_norm, pisot_unit_check, FullRankReport, PisotReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumberFieldError {
    #[error("minimal polynomial must be monic with integer coefficients and degree >= 1")]
    BadMinPoly,
    #[error("sigma polynomial does not define an invertible map")]
    BadSigma,
    #[error("field has no Galois generator")]
    NoSigma,
    #[error("element has {found} coordinates, field degree is {expected}")]
    Degree { expected: usize, found: usize },
}

/// Element of `ℚ[x]/(f)`: coordinates in the power basis `1, x, …, x^{d-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberFieldElement {
    coeffs: Vec<Rational>,
}

impl NumberFieldElement {
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn to_polynomial(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.clone())
    }

    /// Rational value, when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }
}

impl fmt::Debug for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(crate::exact_linear::json::rational_to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Serialize for NumberFieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.iter().cloned().map(JsonRational).collect::<Vec<_>>().serialize(s)
    }
}

#[derive(Debug)]
struct Inner {
    min_poly: RatPolynomial,
    degree: usize,
    /// `x^k mod f` for `k < 2d - 1`, as coordinate vectors.
    powers: Vec<Vec<Rational>>,
    sigma: Option<SigmaData>,
}

#[derive(Debug)]
struct SigmaData {
    poly: RatPolynomial,
    /// Columns are `σ(x^j)`.
    matrix: RatMatrix,
    inverse: RatMatrix,
}

/// The field `ℚ[x]/(f)` for monic integral `f`, optionally with a generator
/// `σ: x ↦ g(x)` of its Galois group. Cheap to clone.
#[derive(Clone, Debug)]
pub struct NumberField(Arc<Inner>);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.0.min_poly == other.0.min_poly && self.0.sigma.as_ref().map(|s| &s.poly) == other.0.sigma.as_ref().map(|s| &s.poly)
    }
}

impl NumberField {
    /// Field arithmetic needs no irreducibility; [`galois_check`] certifies it.
    pub fn new(min_poly: RatPolynomial, sigma: Option<RatPolynomial>) -> Result<Self, NumberFieldError> {
        let degree = match min_poly.degree() {
            Some(d) if d >= 1 && min_poly.is_monic() && min_poly.is_integral() => d,
            _ => return Err(NumberFieldError::BadMinPoly),
        };
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(2 * degree);
        for k in 0..2 * degree - 1 {
            let v = if k < degree {
                let mut v = vec![Rational::zero(); degree];
                v[k] = Rational::one();
                v
            } else {
                // x · x^{k-1}, then replace x^d by -Σ f_i x^i
                let prev = &powers[k - 1];
                let top = prev[degree - 1].clone();
                let mut v = vec![Rational::zero(); degree];
                v[1..degree].clone_from_slice(&prev[..degree - 1]);
                for (i, vi) in v.iter_mut().enumerate() {
                    *vi -= &top * min_poly.coeff(i);
                }
                v
            };
            powers.push(v);
        }
        let base = NumberField(Arc::new(Inner { min_poly: min_poly.clone(), degree, powers, sigma: None }));
        let Some(g) = sigma else { return Ok(base) };
        let image = base.element_from_poly(&g);
        let mut matrix = RatMatrix::zeros(degree, degree);
        let mut p = base.one();
        for j in 0..degree {
            for (i, c) in p.coeffs.iter().enumerate() {
                matrix.set(i, j, c.clone());
            }
            p = base.mul(&p, &image);
        }
        let inverse = matrix.inverse().ok_or(NumberFieldError::BadSigma)?;
        let poly = RatPolynomial::new(image.coeffs);
        Ok(NumberField(Arc::new(Inner { min_poly, degree, powers: base.0.powers.clone(), sigma: Some(SigmaData { poly, matrix, inverse }) })))
    }

    pub fn from_ints(min_poly: &[i64], sigma: Option<&[i64]>) -> Result<Self, NumberFieldError> {
        Self::new(RatPolynomial::from_ints(min_poly), sigma.map(RatPolynomial::from_ints))
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn min_poly(&self) -> &RatPolynomial {
        &self.0.min_poly
    }

    pub fn sigma_poly(&self) -> Option<&RatPolynomial> {
        self.0.sigma.as_ref().map(|s| &s.poly)
    }

    /// The same field with a different Galois generator.
    pub fn with_sigma(&self, sigma: RatPolynomial) -> Result<Self, NumberFieldError> {
        Self::new(self.0.min_poly.clone(), Some(sigma))
    }

    /// The class of `x`.
    pub fn generator(&self) -> NumberFieldElement {
        self.element_from_poly(&RatPolynomial::x())
    }

    pub fn element(&self, coeffs: Vec<Rational>) -> Result<NumberFieldElement, NumberFieldError> {
        if coeffs.len() != self.degree() {
            return Err(NumberFieldError::Degree { expected: self.degree(), found: coeffs.len() });
        }
        Ok(NumberFieldElement { coeffs })
    }

    pub fn element_from_ints(&self, coeffs: &[i64]) -> Result<NumberFieldElement, NumberFieldError> {
        self.element(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// Reduction of an arbitrary polynomial modulo `f`.
    pub fn element_from_poly(&self, p: &RatPolynomial) -> NumberFieldElement {
        let (_, r) = p.div_rem(&self.0.min_poly).expect("nonzero modulus");
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(self.degree(), Rational::zero());
        NumberFieldElement { coeffs }
    }

    /// `p(a)` for a rational polynomial `p`.
    pub fn eval_poly(&self, p: &RatPolynomial, a: &NumberFieldElement) -> NumberFieldElement {
        p.coeffs().iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, a), &self.from_rational(c)))
    }

    /// `σ^k(a)`; negative `k` applies `σ^{-1}`.
    pub fn sigma_pow(&self, a: &NumberFieldElement, k: i64) -> Result<NumberFieldElement, NumberFieldError> {
        let s = self.0.sigma.as_ref().ok_or(NumberFieldError::NoSigma)?;
        let m = if k >= 0 { &s.matrix } else { &s.inverse };
        let mut v = a.coeffs.clone();
        for _ in 0..k.unsigned_abs() {
            v = m.apply_in(&Q, &v).expect("square of the field degree");
        }
        Ok(NumberFieldElement { coeffs: v })
    }

    pub fn sigma(&self, a: &NumberFieldElement) -> Result<NumberFieldElement, NumberFieldError> {
        self.sigma_pow(a, 1)
    }

    /// Conjugates `σ^{i}(a)` for `i = 0..d`.
    pub fn conjugates(&self, a: &NumberFieldElement) -> Result<Vec<NumberFieldElement>, NumberFieldError> {
        (0..self.degree() as i64).map(|i| self.sigma_pow(a, i)).collect()
    }

    /// Matrix of multiplication by `a` in the power basis.
    pub fn multiplication_matrix(&self, a: &NumberFieldElement) -> RatMatrix {
        let d = self.degree();
        let mut m = RatMatrix::zeros(d, d);
        let mut col = a.clone();
        let x = self.generator();
        for j in 0..d {
            for (i, c) in col.coeffs.iter().enumerate() {
                m.set(i, j, c.clone());
            }
            col = self.mul(&col, &x);
        }
        m
    }

    /// Characteristic polynomial of multiplication by `a`: the product of
    /// `X - τ(a)` over the embeddings `τ`.
    pub fn charpoly(&self, a: &NumberFieldElement) -> RatPolynomial {
        self.multiplication_matrix(a).charpoly().expect("square")
    }

    /// Product of the conjugates.
    pub fn norm(&self, a: &NumberFieldElement) -> Rational {
        let c = self.charpoly(a).coeff(0);
        if self.degree() % 2 == 0 {
            c
        } else {
            -c
        }
    }

    /// Isolating intervals `(lo, hi]` for the real roots of `f`, ascending;
    /// these index the real embeddings.
    pub fn real_embeddings(&self) -> Vec<(Rational, Rational)> {
        crate::exact_linear::sturm::isolate_real_roots(&self.0.min_poly.squarefree_part(), None).expect("nonzero")
    }

    /// Sign of `τ(a) - q` where `τ` sends `x` to the root of `f` isolated by
    /// `interval`. Requires `f` irreducible and `a` not equal to `q`, or the
    /// refinement does not terminate.
    pub fn compare_at_root(&self, a: &NumberFieldElement, q: &Rational, interval: &(Rational, Rational)) -> Ordering {
        let h = &a.to_polynomial() - &RatPolynomial::constant(q.clone());
        if h.is_zero() {
            return Ordering::Equal;
        }
        let f = self.0.min_poly.squarefree_part();
        let sf = SturmSequence::new(&f).expect("nonzero");
        let sh = SturmSequence::new(&h).expect("nonzero");
        let (mut lo, mut hi) = interval.clone();
        let two = Rational::from_integer(2.into());
        loop {
            if sh.count_in(&lo, &hi) == 0 {
                return h.sign_at(&hi).cmp(&0);
            }
            let mid = (&lo + &hi) / &two;
            if sf.count_in(&lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    pub fn to_json(&self) -> NumberFieldJson {
        let ints = |p: &RatPolynomial| p.coeffs().iter().map(|c| c.to_integer().try_into().expect("small coefficients")).collect();
        NumberFieldJson { min_poly: ints(&self.0.min_poly), sigma: self.sigma_poly().map(ints) }
    }

    pub fn from_json(json: &NumberFieldJson) -> Result<Self, NumberFieldError> {
        Self::from_ints(&json.min_poly, json.sigma.as_deref())
    }

    pub fn parse_element(&self, coeffs: &[JsonRational]) -> Result<NumberFieldElement, NumberFieldError> {
        let mut v: Vec<Rational> = coeffs.iter().map(|c| c.0.clone()).collect();
        if v.len() > self.degree() {
            return Err(NumberFieldError::Degree { expected: self.degree(), found: v.len() });
        }
        v.resize(self.degree(), Rational::zero());
        Ok(NumberFieldElement { coeffs: v })
    }
}

/// `{"min_poly": [ints], "sigma": [ints]}`, coefficients from the constant
/// term up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberFieldJson {
    pub min_poly: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<i64>>,
}

impl Field for NumberField {
    type Elem = NumberFieldElement;

    fn zero(&self) -> NumberFieldElement {
        NumberFieldElement { coeffs: vec![Rational::zero(); self.degree()] }
    }

    fn one(&self) -> NumberFieldElement {
        self.from_rational(&Rational::one())
    }

    fn is_zero(&self, a: &NumberFieldElement) -> bool {
        a.coeffs.iter().all(Zero::is_zero)
    }

    fn is_one(&self, a: &NumberFieldElement) -> bool {
        a.coeffs[0].is_one() && a.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn add(&self, a: &NumberFieldElement, b: &NumberFieldElement) -> NumberFieldElement {
        NumberFieldElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    fn sub(&self, a: &NumberFieldElement, b: &NumberFieldElement) -> NumberFieldElement {
        NumberFieldElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }

    fn neg(&self, a: &NumberFieldElement) -> NumberFieldElement {
        NumberFieldElement { coeffs: a.coeffs.iter().map(|x| -x).collect() }
    }

    fn mul(&self, a: &NumberFieldElement, b: &NumberFieldElement) -> NumberFieldElement {
        let d = self.degree();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                prod[i + j] += x * y;
            }
        }
        let mut out: Vec<Rational> = prod[..d].to_vec();
        for (k, c) in prod.iter().enumerate().skip(d).filter(|(_, c)| !c.is_zero()) {
            for (o, p) in out.iter_mut().zip(&self.0.powers[k]) {
                *o += c * p;
            }
        }
        NumberFieldElement { coeffs: out }
    }

    fn inv(&self, a: &NumberFieldElement) -> Option<NumberFieldElement> {
        if self.is_zero(a) {
            return None;
        }
        // a·y = 1 as a linear system in the coordinates of y
        let m: Matrix<Rational> = self.multiplication_matrix(a);
        let inv = m.inverse()?;
        Some(NumberFieldElement { coeffs: inv.column(0) })
    }

    fn from_rational(&self, q: &Rational) -> NumberFieldElement {
        let mut coeffs = vec![Rational::zero(); self.degree()];
        coeffs[0] = q.clone();
        NumberFieldElement { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::{int, rat};

    fn quartic() -> NumberField {
        NumberField::from_ints(&[2, 0, -4, 0, 1], Some(&[0, -3, 0, 1])).unwrap()
    }

    #[test]
    fn arithmetic() {
        let e = quartic();
        let mu = e.generator();
        let one = e.one();
        assert_eq!(e.mul(&mu, &e.inv(&mu).unwrap()), one);
        assert_eq!(e.sub(&e.add(&mu, &one), &one), mu);
        // x^4 = 4x^2 - 2
        assert_eq!(e.pow(&mu, 4).unwrap(), e.element_from_ints(&[-2, 0, 4, 0]).unwrap());
        assert!(e.inv(&e.zero()).is_none());
        let a = e.element(vec![rat(1, 2), int(-3), int(0), rat(2, 7)]).unwrap();
        assert_eq!(e.mul(&a, &e.inv(&a).unwrap()), one);
        assert_eq!(e.eval_poly(e.min_poly(), &mu), e.zero());
    }

    #[test]
    fn sigma_is_a_ring_map_of_order_four() {
        let e = quartic();
        let a = e.element_from_ints(&[1, 2, -1, 3]).unwrap();
        let b = e.element_from_ints(&[0, -1, 5, 1]).unwrap();
        assert_eq!(e.sigma(&e.mul(&a, &b)).unwrap(), e.mul(&e.sigma(&a).unwrap(), &e.sigma(&b).unwrap()));
        assert_eq!(e.sigma_pow(&a, 4).unwrap(), a);
        assert_ne!(e.sigma_pow(&a, 2).unwrap(), a);
        assert_eq!(e.sigma_pow(&e.sigma_pow(&a, -1).unwrap(), 1).unwrap(), a);
        let n: Rational = e.conjugates(&a).unwrap().iter().fold(e.one(), |acc, c| e.mul(&acc, c)).as_rational().unwrap().clone();
        assert_eq!(n, e.norm(&a));
    }

    #[test]
    fn embedding_signs() {
        let e = quartic();
        let roots = e.real_embeddings();
        assert_eq!(roots.len(), 4);
        let theta = roots.last().unwrap();
        // largest root is 2cos(π/8) ≈ 1.8478
        assert_eq!(e.compare_at_root(&e.generator(), &rat(184, 100), theta), Ordering::Greater);
        assert_eq!(e.compare_at_root(&e.generator(), &rat(185, 100), theta), Ordering::Less);
        assert_eq!(e.compare_at_root(&e.one(), &int(1), theta), Ordering::Equal);
    }

    #[test]
    fn json_round_trip() {
        let e = quartic();
        let j = serde_json::to_string(&e.to_json()).unwrap();
        assert_eq!(j, r#"{"min_poly":[2,0,-4,0,1],"sigma":[0,-3,0,1]}"#);
        assert_eq!(NumberField::from_json(&serde_json::from_str(&j).unwrap()).unwrap(), e);
        assert!(NumberField::from_ints(&[1, 0, 2], None).is_err());
    }
}
