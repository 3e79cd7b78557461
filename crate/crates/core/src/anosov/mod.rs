//! The diagonal automorphism `φ: X_i ↦ μ_i X_i` of `n` over a cyclic quartic
//! field, with exact hyperbolicity and Galois-equivariance certificates.

use std::collections::HashMap;

use serde::Serialize;

use crate::automorphisms::{is_automorphism, Automorphism};
use crate::example_tower::{monomial, ExampleTower, TowerError};
use crate::exact_linear::charpoly::charpoly_factors;
use crate::exact_linear::Field;
use crate::number_field::{
    full_rank_check, galois_check, normalize_norm, pisot_unit_check, FullRankReport, GaloisReport, NumberField, NumberFieldElement, NumberFieldJson,
    PisotReport,
};

pub const FULL_RANK_MAX_LEN: u32 = 6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnosovError {
    #[error("field fails the Galois check")]
    Galois(Box<GaloisReport>),
    #[error("mu is not a unit Pisot number")]
    NotPisot(Box<PisotReport>),
    #[error("mu fails the full rank condition at exponent {:?}", .0.violation)]
    FullRank(FullRankReport),
    #[error(transparent)]
    Tower(#[from] TowerError),
}

/// Multidegree of one basis vector of `n`. Vectors whose class was
/// identified with a lower-degree one by `J` also carry that representative;
/// both give the same monomial once `μ_1 μ_2 μ_3 μ_4 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightEntry {
    pub index: usize,
    pub weight: Vec<u32>,
    pub identified_with: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnosovCertificate {
    pub field: NumberFieldJson,
    pub galois: GaloisReport,
    pub pisot: PisotReport,
    /// The unit used for `φ` (squared when the input had norm -1).
    pub mu: NumberFieldElement,
    pub squared: bool,
    pub full_rank: FullRankReport,
    pub weights: Vec<WeightEntry>,
    pub automorphism: bool,
    pub charpoly_matches_weights: bool,
    pub pv_eigenvalue_is_mu2_mu4: bool,
    pub hyperbolic: bool,
    pub offending_weight: Option<Vec<u32>>,
    pub equivariant: bool,
}

impl AnosovCertificate {
    pub fn passed(&self) -> bool {
        self.hyperbolic && self.equivariant && self.automorphism && self.charpoly_matches_weights && self.full_rank.passed
    }
}

/// Weight multiset of `n`, in basis order.
pub fn weight_decomposition(ex: &ExampleTower) -> Vec<WeightEntry> {
    let md = ex.ntilde.algebra.multidegree().expect("multihomogeneous quotient");
    let proj = &ex.n.projection;
    let mut identified: HashMap<usize, Vec<u32>> = HashMap::new();
    for row in proj.ideal().rows() {
        let (pivot, _) = row.leading().expect("nonzero row");
        for (k, _) in row.iter().skip(1) {
            identified.insert(k, md[pivot].clone());
        }
    }
    proj.kept()
        .iter()
        .enumerate()
        .map(|(t, &k)| WeightEntry { index: t, weight: md[k].clone(), identified_with: identified.get(&k).cloned() })
        .collect()
}

/// First weight whose monomial is `±1`; the balanced weight `(1,1,1,1)`
/// counts as offending by itself.
pub fn check_hyperbolic(field: &NumberField, conjugates: &[NumberFieldElement; 4], weights: &[WeightEntry]) -> Option<Vec<u32>> {
    let minus_one = field.neg(&field.one());
    weights.iter().map(|w| &w.weight).find(|d| {
        if d.iter().all(|&x| x == 1) {
            return true;
        }
        let m = monomial(field, conjugates, d);
        field.is_one(&m) || m == minus_one
    }).cloned()
}

/// `ᾱ φ = φ^{σ⁻¹} ᾱ`, where `φ^{σ⁻¹}` applies `σ⁻¹` to every entry.
pub fn check_equivariance(ex: &ExampleTower, phi: &Automorphism<NumberField>) -> bool {
    let field = phi.field();
    let alpha = ex.alpha_bar.embed(field.clone());
    let twisted = phi.twist(|a| field.sigma_pow(a, -1).expect("field has σ"));
    alpha.compose(phi) == twisted.compose(&alpha)
}

/// Builds `φ` on `n` from the conjugates of `mu` and certifies it.
pub fn build_phi(ex: &ExampleTower, field: &NumberField, mu: &NumberFieldElement) -> Result<(Automorphism<NumberField>, AnosovCertificate), AnosovError> {
    let galois = galois_check(field);
    if !galois.passed {
        return Err(AnosovError::Galois(Box::new(galois)));
    }
    let pisot = pisot_unit_check(field, mu);
    if !pisot.passed {
        return Err(AnosovError::NotPisot(Box::new(pisot)));
    }
    let (mu, squared) = normalize_norm(field, mu);
    let full_rank = full_rank_check(field, &mu, FULL_RANK_MAX_LEN).expect("field has σ");
    if !full_rank.passed {
        return Err(AnosovError::FullRank(full_rank));
    }
    let conj: [NumberFieldElement; 4] = field.conjugates(&mu).expect("field has σ").try_into().expect("degree 4");
    let phi = ex.diagonal_automorphism_on_n(field.clone(), &conj)?;
    let weights = weight_decomposition(ex);

    let automorphism = is_automorphism(&ex.n.algebra, field, phi.matrix()).is_ok_and(|c| c.holds());
    let charpoly_matches_weights = charpoly_matches(field, &phi, &conj, &weights);
    let pv = ex.p(&ex.v);
    let mu24 = field.mul(&conj[1], &conj[3]);
    let pv_eigenvalue_is_mu2_mu4 = phi.apply(&pv.map(field, |q| field.from_rational(q))) == pv.map(field, |q| field.mul(&mu24, &field.from_rational(q)));
    let offending_weight = check_hyperbolic(field, &conj, &weights);
    let equivariant = check_equivariance(ex, &phi);
    let cert = AnosovCertificate {
        field: field.to_json(),
        galois,
        pisot,
        mu,
        squared,
        full_rank,
        weights,
        automorphism,
        charpoly_matches_weights,
        pv_eigenvalue_is_mu2_mu4,
        hyperbolic: offending_weight.is_none(),
        offending_weight,
        equivariant,
    };
    Ok((phi, cert))
}

/// `det(xI - φ) = Π (x - μ^d)` over the weight multiset, compared as
/// multisets of factors from the block-triangular charpoly.
fn charpoly_matches(field: &NumberField, phi: &Automorphism<NumberField>, conj: &[NumberFieldElement; 4], weights: &[WeightEntry]) -> bool {
    let Ok(factors) = charpoly_factors(field, phi.matrix()) else { return false };
    let mut count: HashMap<Vec<NumberFieldElement>, i64> = HashMap::new();
    for f in factors {
        *count.entry(f).or_default() += 1;
    }
    for w in weights {
        let linear = vec![field.neg(&monomial(field, conj, &w.weight)), field.one()];
        *count.entry(linear).or_default() -= 1;
    }
    count.values().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cyclic_quartic, pinned_pisot_unit};

    fn entry(w: &[u32]) -> WeightEntry {
        WeightEntry { index: 0, weight: w.to_vec(), identified_with: None }
    }

    #[test]
    fn hyperbolic_single_weights() {
        let e = cyclic_quartic();
        let conj: [NumberFieldElement; 4] = e.conjugates(&pinned_pisot_unit()).unwrap().try_into().unwrap();
        assert_eq!(check_hyperbolic(&e, &conj, &[entry(&[1, 1, 1, 1])]), Some(vec![1, 1, 1, 1]));
        assert_eq!(check_hyperbolic(&e, &conj, &[entry(&[1, 0, 0, 0])]), None);
        assert_eq!(check_hyperbolic(&e, &conj, &[entry(&[0, 1, 0, 1]), entry(&[2, 2, 2, 2])]), Some(vec![2, 2, 2, 2]));
        let norm = monomial(&e, &conj, &[1, 1, 1, 1]);
        assert!(e.is_one(&norm));
    }

    #[test]
    fn twist_four_times_is_identity() {
        let e = cyclic_quartic();
        let mu = pinned_pisot_unit();
        let alg = crate::lie_core::LieAlgebra::abelian(2);
        let phi = Automorphism::new(&alg, e.clone(), crate::exact_linear::SparseMatrix::diagonal(&e, &[mu.clone(), e.inv(&mu).unwrap()])).unwrap();
        let mut t = phi.clone();
        for _ in 0..4 {
            t = t.twist(|a| e.sigma_pow(a, -1).unwrap());
        }
        assert_eq!(t, phi);
        assert_ne!(phi.twist(|a| e.sigma(a).unwrap()), phi);
    }
}
