//! Small algebras and the default number field shipped with the crate.

use crate::exact_linear::{QVec, Q};
use crate::free_nilpotent::HallBasis;
use crate::lie_core::LieAlgebra;
use crate::number_field::{NumberField, NumberFieldElement};

/// Heisenberg algebra with basis `x, y, z` and `[x, y] = z`.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::from_brackets(3, [(0, 1, QVec::unit(&Q, 2))])
        .expect("valid table")
        .with_labels(vec!["x".into(), "y".into(), "z".into()])
        .expect("three labels")
}

/// Free nilpotent algebra on two generators of class two, in its Hall basis.
pub fn free_2_2() -> LieAlgebra {
    HallBasis::generate(2, 2).expect("valid parameters").to_lie_algebra()
}

/// `ℚ(θ)` with `θ⁴ - 4θ² + 2 = 0` (so `θ = 2cos(π/8)` under the largest real
/// root), cyclic of degree 4, with Galois generator `σ(θ) = θ³ - 3θ`.
pub fn cyclic_quartic() -> NumberField {
    NumberField::from_ints(&[2, 0, -4, 0, 1], Some(&[0, -3, 0, 1])).expect("monic integral")
}

/// Unit Pisot number `-1 + 2θ² + θ³ ≈ 12.14` in [`cyclic_quartic`], norm 1.
pub fn pinned_pisot_unit() -> NumberFieldElement {
    cyclic_quartic().element_from_ints(&[-1, 0, 2, 1]).expect("degree 4")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_field::{find_pisot_unit, find_sigma, galois_check};

    #[test]
    fn pinned_field_values_are_the_search_results() {
        let e = cyclic_quartic();
        assert!(galois_check(&e).passed);
        assert_eq!(find_sigma(e.min_poly(), 3).as_ref(), e.sigma_poly());
        assert_eq!(find_pisot_unit(&e, 3), Some(pinned_pisot_unit()));
    }
}
