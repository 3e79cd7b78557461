use serde::{Deserialize, Serialize};

use crate::exact_linear::json::{subspace_from_rows, subspace_rows, JsonRow};
use crate::exact_linear::QVec;

use super::algebra::LieAlgebra;
use super::quotient::Projection;
use super::LieError;

/// Structure constants: `[e_i, e_j]` for `i < j`, nonzero entries only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multidegree: Option<Vec<Vec<u32>>>,
    pub brackets: Vec<(usize, usize, QVec)>,
}

impl LieAlgebra {
    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            dim: self.dim(),
            labels: self.labels().map(<[String]>::to_vec),
            multidegree: self.multidegree().map(<[Vec<u32>]>::to_vec),
            brackets: self.brackets().map(|(i, j, v)| (i, j, v.clone())).collect(),
        }
    }

    /// Reads a table; antisymmetry is built in, Jacobi is not checked.
    pub fn from_json(json: &AlgebraJson) -> Result<Self, LieError> {
        let mut alg = LieAlgebra::from_brackets(json.dim, json.brackets.iter().cloned())?;
        if let Some(l) = &json.labels {
            alg = alg.with_labels(l.clone())?;
        }
        if let Some(m) = &json.multidegree {
            alg = alg.with_multidegree(m.clone())?;
        }
        Ok(alg)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectionJson {
    pub source_dim: usize,
    pub target_dim: usize,
    pub kept: Vec<usize>,
    pub ideal_basis: Vec<JsonRow>,
}

impl Projection {
    pub fn to_json(&self) -> ProjectionJson {
        ProjectionJson {
            source_dim: self.source_dim(),
            target_dim: self.target_dim(),
            kept: self.kept().to_vec(),
            ideal_basis: subspace_rows(self.ideal()),
        }
    }

    /// Rebuilds the projection from its ideal; `kept` and `target_dim` must
    /// agree with it.
    pub fn from_json(json: &ProjectionJson) -> Result<Self, LieError> {
        let ideal = subspace_from_rows(json.source_dim, &json.ideal_basis).map_err(|e| LieError::InvalidTable(e.to_string()))?;
        let p = Projection::new(ideal);
        if p.kept() != json.kept.as_slice() || p.target_dim() != json.target_dim {
            return Err(LieError::InvalidTable("kept coordinates do not match the ideal".into()));
        }
        Ok(p)
    }
}
