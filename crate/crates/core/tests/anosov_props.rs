use std::sync::OnceLock;

use proptest::prelude::*;

use nilgrade::anosov::{build_phi, check_equivariance, check_hyperbolic, weight_decomposition, AnosovError, WeightEntry};
use nilgrade::automorphisms::Automorphism;
use nilgrade::example_tower::{monomial, ExampleTower};
use nilgrade::exact_linear::Field;
use nilgrade::fixtures::{cyclic_quartic, pinned_pisot_unit};
use nilgrade::number_field::{NumberField, NumberFieldElement};

fn tower() -> &'static ExampleTower {
    static T: OnceLock<ExampleTower> = OnceLock::new();
    T.get_or_init(|| ExampleTower::build().expect("tower builds"))
}

fn phi() -> &'static (Automorphism<NumberField>, nilgrade::anosov::AnosovCertificate) {
    static P: OnceLock<(Automorphism<NumberField>, nilgrade::anosov::AnosovCertificate)> = OnceLock::new();
    P.get_or_init(|| build_phi(tower(), &cyclic_quartic(), &pinned_pisot_unit()).expect("pinned data certify"))
}

fn conjugates(e: &NumberField, mu: &NumberFieldElement) -> [NumberFieldElement; 4] {
    e.conjugates(mu).unwrap().try_into().unwrap()
}

fn entry(w: &[u32]) -> WeightEntry {
    WeightEntry { index: 0, weight: w.to_vec(), identified_with: None }
}

#[test]
fn pinned_unit_gives_a_certified_anosov_map() {
    let (_, cert) = phi();
    assert!(cert.passed());
    assert!(cert.pv_eigenvalue_is_mu2_mu4 && cert.automorphism && cert.charpoly_matches_weights);
    assert!(!cert.squared);
    assert_eq!(cert.offending_weight, None);
    assert_eq!(cert.weights.len(), tower().n.algebra.dim());
}

#[test]
fn diagonal_entries_are_weight_monomials() {
    let (phi, cert) = phi();
    let e = cyclic_quartic();
    let conj = conjugates(&e, &cert.mu);
    for w in &cert.weights {
        let col = phi.matrix().column(w.index);
        assert_eq!(col.get(w.index), Some(&monomial(&e, &conj, &w.weight)));
        assert_eq!(col.nnz(), 1);
        if let Some(rep) = &w.identified_with {
            assert_eq!(monomial(&e, &conj, rep), monomial(&e, &conj, &w.weight));
        }
    }
    assert_eq!(weight_decomposition(tower()), cert.weights);
}

#[test]
fn sigma_twist_is_alpha_conjugation() {
    let (phi, cert) = phi();
    let e = cyclic_quartic();
    assert!(check_equivariance(tower(), phi));
    let mut t = phi.clone();
    for k in 1..=4 {
        t = t.twist(|a| e.sigma(a).unwrap());
        assert_eq!(t == *phi, k == 4, "σ^{k}");
    }
    // a diagonal map built from μ alone (all λ_i equal) is not equivariant
    let mu = &conjugates(&e, &cert.mu)[0];
    let inv3 = e.inv(&e.pow(mu, 3).unwrap()).unwrap();
    let skewed = tower().diagonal_automorphism_on_n(e.clone(), &[mu.clone(), mu.clone(), mu.clone(), inv3]).unwrap();
    assert!(!check_equivariance(tower(), &skewed));
}

#[test]
fn balanced_weights_are_caught() {
    let e = cyclic_quartic();
    let conj = conjugates(&e, &pinned_pisot_unit());
    let mut weights = weight_decomposition(tower());
    assert_eq!(check_hyperbolic(&e, &conj, &weights), None);
    weights.push(entry(&[1, 1, 1, 1]));
    assert_eq!(check_hyperbolic(&e, &conj, &weights), Some(vec![1, 1, 1, 1]));
    assert_eq!(check_hyperbolic(&e, &conj, &[entry(&[2, 2, 2, 2])]), Some(vec![2, 2, 2, 2]));
}

#[test]
fn preconditions_are_enforced() {
    let e = cyclic_quartic();
    let theta = e.generator();
    assert!(matches!(build_phi(tower(), &e, &theta), Err(AnosovError::NotPisot(_))));
    let wrong = NumberField::from_ints(&[2, 0, -4, 0, 1], Some(&[0, -1])).unwrap();
    let mu = wrong.element_from_ints(&[-1, 0, 2, 1]).unwrap();
    assert!(matches!(build_phi(tower(), &wrong, &mu), Err(AnosovError::Galois(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unbalanced_short_weights_are_hyperbolic(d in prop::collection::vec(0u32..=3, 4)) {
        let e = cyclic_quartic();
        let conj = conjugates(&e, &pinned_pisot_unit());
        let balanced = d.iter().all(|&x| x == d[0]);
        let offending = check_hyperbolic(&e, &conj, &[entry(&d)]);
        // Σ d ≤ 6 off the diagonal is covered by the full rank check
        if d.iter().sum::<u32>() <= 6 && !balanced {
            prop_assert_eq!(offending.clone(), None);
        }
        if balanced {
            prop_assert_eq!(offending, Some(d.clone()));
        }
    }

    #[test]
    fn verdict_is_invariant_under_rotating_conjugates(k in 0usize..4, extra in prop::collection::vec(0u32..=3, 4)) {
        let e = cyclic_quartic();
        let mut conj = conjugates(&e, &pinned_pisot_unit());
        conj.rotate_left(k);
        let weights = weight_decomposition(tower());
        prop_assert_eq!(check_hyperbolic(&e, &conj, &weights), None);
        // rotating the conjugates is applying σ^k
        let base = conjugates(&e, &pinned_pisot_unit());
        prop_assert_eq!(monomial(&e, &conj, &extra), e.sigma_pow(&monomial(&e, &base, &extra), k as i64).unwrap());
    }
}
