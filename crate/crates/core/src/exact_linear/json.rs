//! JSON forms: rationals as `"p/q"` strings (`"p"` for integers),
//! polynomials as lowest-first coefficient arrays, matrices as row arrays and
//! sparse vectors as `[index, value]` pairs.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{Rational, Q};
use super::matrix::RatMatrix;
use super::poly::RatPolynomial;
use super::sparse::{QVec, SparseVec};
use super::subspace::Subspace;
use super::LinearError;

pub fn rational_to_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
    let d = BigInt::from_str(d).map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(n, d))
}

/// A rational that reads from either a `"p/q"` string or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonRational(pub Rational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(&self.0))
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => parse_rational(&s).map(JsonRational).map_err(D::Error::custom),
            Raw::Int(n) => Ok(JsonRational(Rational::from_integer(n.into()))),
        }
    }
}

impl Serialize for SparseVec<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(usize, JsonRational)> = self.iter().map(|(i, c)| (i, JsonRational(c.clone()))).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparseVec<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<(usize, JsonRational)> = Vec::deserialize(d)?;
        Ok(QVec::from_entries(&Q, pairs.into_iter().map(|(i, c)| (i, c.0))))
    }
}

impl Serialize for RatPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let c: Vec<JsonRational> = self.coeffs().iter().cloned().map(JsonRational).collect();
        c.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let c: Vec<JsonRational> = Vec::deserialize(d)?;
        Ok(RatPolynomial::new(c.into_iter().map(|q| q.0).collect()))
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<JsonRational>> = (0..self.rows()).map(|i| self.row(i).iter().cloned().map(JsonRational).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<JsonRational>> = Vec::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        let rows: Vec<Vec<Rational>> = rows.into_iter().map(|r| r.into_iter().map(|q| q.0).collect()).collect();
        if rows.is_empty() {
            return Ok(RatMatrix::zeros(0, cols));
        }
        RatMatrix::from_rows(rows).map_err(D::Error::custom)
    }
}

/// A vector row read from JSON: dense (`["1", "0", "-1/2"]`) or sparse
/// (`[[0, "1"], [2, "-1/2"]]`). Written dense.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonRow {
    Sparse(Vec<(usize, JsonRational)>),
    Dense(Vec<JsonRational>),
}

impl JsonRow {
    pub fn dense(v: &QVec, dim: usize) -> Self {
        JsonRow::Dense(v.to_dense(&Q, dim).into_iter().map(JsonRational).collect())
    }

    pub fn to_qvec(&self) -> QVec {
        match self {
            JsonRow::Sparse(e) => QVec::from_entries(&Q, e.iter().map(|(i, c)| (*i, c.0.clone()))),
            JsonRow::Dense(e) => QVec::from_entries(&Q, e.iter().enumerate().map(|(i, c)| (i, c.0.clone()))),
        }
    }

    /// Largest index the row addresses (its length for dense rows).
    pub fn extent(&self) -> usize {
        match self {
            JsonRow::Sparse(e) => e.iter().map(|(i, _)| i + 1).max().unwrap_or(0),
            JsonRow::Dense(e) => e.len(),
        }
    }
}

/// RREF basis rows of a subspace, dense.
pub fn subspace_rows(s: &Subspace) -> Vec<JsonRow> {
    s.rows().iter().map(|r| JsonRow::dense(r, s.ambient_dim())).collect()
}

/// Span of JSON rows in `ℚ^dim`; fails if a row is longer than `dim`.
pub fn subspace_from_rows(dim: usize, rows: &[JsonRow]) -> Result<Subspace, LinearError> {
    if let Some(r) = rows.iter().find(|r| r.extent() > dim) {
        return Err(LinearError::Shape(format!("row of length {} in dimension {dim}", r.extent())));
    }
    let vecs: Vec<QVec> = rows.iter().map(JsonRow::to_qvec).collect();
    Subspace::from_vectors(dim, &vecs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::field::{int, rat};

    #[test]
    fn rational_strings() {
        assert_eq!(rational_to_string(&rat(-3, 6)), "-1/2");
        assert_eq!(rational_to_string(&int(7)), "7");
        assert_eq!(parse_rational(" 4/-6 ").unwrap(), rat(-2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn round_trips() {
        let p = RatPolynomial::new(vec![rat(1, 2), int(0), int(-3)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1/2","0","-3"]"#);
        assert_eq!(serde_json::from_str::<RatPolynomial>(&s).unwrap(), p);
        let m = RatMatrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(serde_json::from_str::<RatMatrix>(&serde_json::to_string(&m).unwrap()).unwrap(), m);
        assert_eq!(serde_json::from_str::<RatMatrix>("[[1, \"1/2\"]]").unwrap().get(0, 1), &rat(1, 2));
        let v = QVec::from_ints(&[(1, 2), (4, -1)]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"[[1,"2"],[4,"-1"]]"#);
        assert_eq!(serde_json::from_str::<QVec>(&serde_json::to_string(&v).unwrap()).unwrap(), v);
    }

    #[test]
    fn rows_dense_or_sparse() {
        let dense: Vec<JsonRow> = serde_json::from_str(r#"[["1", 0, "-1/2"]]"#).unwrap();
        let sparse: Vec<JsonRow> = serde_json::from_str(r#"[[[0, "1"], [2, "-1/2"]]]"#).unwrap();
        assert_eq!(dense[0].to_qvec(), sparse[0].to_qvec());
        let s = subspace_from_rows(3, &dense).unwrap();
        assert_eq!(serde_json::to_string(&subspace_rows(&s)).unwrap(), r#"[["1","0","-1/2"]]"#);
        assert!(subspace_from_rows(2, &dense).is_err());
    }
}
