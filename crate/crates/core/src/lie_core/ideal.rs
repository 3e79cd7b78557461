use crate::exact_linear::{QVec, Subspace};

use super::algebra::{ad_closure, LieAlgebra};
use super::LieError;

/// A subspace verified to be an ideal of its ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealDescriptor {
    space: Subspace,
}

impl IdealDescriptor {
    /// Checks `[alg, space] ⊆ space`; the error carries a generator index and
    /// basis row whose bracket escapes.
    pub fn new(alg: &LieAlgebra, space: Subspace) -> Result<Self, LieError> {
        check_ideal(alg, &space)?;
        Ok(IdealDescriptor { space })
    }

    pub fn zero(alg: &LieAlgebra) -> Self {
        IdealDescriptor { space: Subspace::zero(alg.dim()) }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn into_space(self) -> Subspace {
        self.space
    }
}

pub(crate) fn check_ideal(alg: &LieAlgebra, space: &Subspace) -> Result<(), LieError> {
    if space.ambient_dim() != alg.dim() {
        return Err(LieError::Dimension { expected: alg.dim(), found: space.ambient_dim() });
    }
    for &g in alg.generating_indices() {
        for (r, row) in space.rows().iter().enumerate() {
            let b = alg.ad_basis(g, row);
            if !space.contains(&b) {
                return Err(LieError::NotAnIdeal { generator: g, row: r });
            }
        }
    }
    Ok(())
}

/// Smallest ideal containing `generators`.
///
/// Closes the span under `ad` of a generating set of the algebra with a
/// worklist. Multihomogeneous inputs stay multihomogeneous throughout, so
/// the echelon rows split into multidegree blocks by themselves.
pub fn ideal_closure(alg: &LieAlgebra, generators: &[QVec]) -> Result<IdealDescriptor, LieError> {
    for g in generators {
        if let Some(m) = g.max_index().filter(|&m| m >= alg.dim()) {
            return Err(LieError::Dimension { expected: alg.dim(), found: m + 1 });
        }
    }
    let space = Subspace::from_echelon(ad_closure(alg, generators, alg.generating_indices()));
    check_ideal(alg, &space).map_err(|e| LieError::Internal(format!("ideal closure is not closed: {e}")))?;
    Ok(IdealDescriptor { space })
}
