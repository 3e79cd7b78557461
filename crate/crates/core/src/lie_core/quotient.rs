use crate::exact_linear::{Field, QVec, RatMatrix, Rational, SparseVec, Subspace, Q};

use super::algebra::LieAlgebra;
use super::ideal::{check_ideal, IdealDescriptor};
use super::LieError;

/// Natural projection onto a quotient, in the basis given by the non-pivot
/// coordinates of the ideal's RREF basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    ideal: Subspace,
    kept: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl Projection {
    pub fn new(ideal: Subspace) -> Self {
        let kept = ideal.complement_coordinates();
        let mut position = vec![None; ideal.ambient_dim()];
        for (t, &k) in kept.iter().enumerate() {
            position[k] = Some(t);
        }
        Projection { ideal, kept, position }
    }

    pub fn source_dim(&self) -> usize {
        self.ideal.ambient_dim()
    }

    pub fn target_dim(&self) -> usize {
        self.kept.len()
    }

    /// Source coordinates that survive as quotient basis vectors.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// Quotient index of a kept source coordinate.
    pub fn position(&self, source: usize) -> Option<usize> {
        self.position[source]
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    pub fn apply(&self, v: &QVec) -> QVec {
        self.apply_in(&Q, v, |q| q.clone())
    }

    pub fn apply_in<F: Field>(&self, field: &F, v: &SparseVec<F::Elem>, embed: impl Fn(&Rational) -> F::Elem) -> SparseVec<F::Elem> {
        self.ideal.reduce_in(field, v, embed).reindex(field, |i| self.position[i])
    }

    /// Section of the projection: quotient basis vector `t` lifts to source
    /// coordinate `kept[t]`.
    pub fn lift(&self, v: &QVec) -> QVec {
        v.reindex(&Q, |t| Some(self.kept[t]))
    }

    /// Dense `target_dim x source_dim` matrix.
    pub fn to_matrix(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.target_dim(), self.source_dim());
        for j in 0..self.source_dim() {
            for (i, c) in self.apply(&QVec::unit(&Q, j)).iter() {
                m.set(i, j, c.clone());
            }
        }
        m
    }

    /// Images of the source basis vectors, one sparse column each.
    pub fn columns(&self) -> Vec<QVec> {
        (0..self.source_dim()).map(|j| self.apply(&QVec::unit(&Q, j))).collect()
    }
}

/// Quotient algebra together with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    pub projection: Projection,
}

/// Quotient by a verified ideal.
///
/// Labels of kept coordinates carry over. Multidegrees carry over when every
/// RREF row of the ideal is multihomogeneous.
pub fn quotient(alg: &LieAlgebra, ideal: &IdealDescriptor) -> Result<Quotient, LieError> {
    check_ideal(alg, ideal.space())?;
    Ok(quotient_unchecked(alg, ideal.space().clone()))
}

pub(crate) fn quotient_unchecked(alg: &LieAlgebra, space: Subspace) -> Quotient {
    let projection = Projection::new(space);
    let n = projection.target_dim();
    let mut table: Vec<Vec<(usize, QVec)>> = vec![Vec::new(); n];
    for (i, j, v) in alg.brackets() {
        let (Some(a), Some(b)) = (projection.position(i), projection.position(j)) else { continue };
        let img = projection.apply(v);
        if !img.is_zero() {
            // kept coordinates are increasing, so a < b
            table[a].push((b, img));
        }
    }
    let labels = alg.labels().map(|l| projection.kept().iter().map(|&k| l[k].clone()).collect());
    let homogeneous = projection.ideal().rows().iter().all(|r| alg.multidegree_of(r).is_some());
    let multidegree = alg
        .multidegree()
        .filter(|_| homogeneous)
        .map(|m| projection.kept().iter().map(|&k| m[k].clone()).collect());
    let algebra = LieAlgebra::from_parts(n, table, labels, multidegree);
    Quotient { algebra, projection }
}

/// Quotient by the derived subalgebra.
pub fn abelianization(alg: &LieAlgebra) -> Quotient {
    quotient_unchecked(alg, alg.derived_subspace())
}
