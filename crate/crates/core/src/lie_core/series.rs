use crate::exact_linear::{Echelon, QVec, Rationals, Subspace};

use super::algebra::{ad_closure, LieAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// Lower central series `γ_1 = L, γ_{k+1} = [L, γ_k]` or derived series
/// `D_0 = L, D_{k+1} = [D_k, D_k]`, ending at zero or at the first term that
/// repeats (the repeat is not listed twice).
pub fn series(alg: &LieAlgebra, kind: SeriesKind) -> Vec<Subspace> {
    let mut chain = vec![Subspace::full(alg.dim())];
    loop {
        let last = chain.last().expect("nonempty");
        if last.is_zero() {
            break;
        }
        let next = match kind {
            SeriesKind::LowerCentral => bracket_with_algebra(alg, last),
            SeriesKind::Derived => bracket_with_itself(alg, last),
        };
        if &next == last {
            break;
        }
        chain.push(next);
    }
    chain
}

/// `[L, V]` for an ideal `V`: the ideal generated by `[g, v]` over
/// generators `g` and basis rows `v`.
fn bracket_with_algebra(alg: &LieAlgebra, v: &Subspace) -> Subspace {
    let gens = alg.generating_indices();
    let seeds: Vec<QVec> = gens.iter().flat_map(|&g| v.rows().iter().map(move |r| alg.ad_basis(g, r))).collect();
    Subspace::from_echelon(ad_closure(alg, &seeds, gens))
}

fn bracket_with_itself(alg: &LieAlgebra, v: &Subspace) -> Subspace {
    let rows = v.rows();
    let mut ech = Echelon::new(Rationals, alg.dim());
    for (a, x) in rows.iter().enumerate() {
        for y in &rows[a + 1..] {
            let b = alg.bracket(x, y).expect("rows fit the algebra");
            if !b.is_zero() {
                ech.insert(&b);
            }
        }
    }
    Subspace::from_echelon(ech)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::heisenberg;

    fn dims(s: &[Subspace]) -> Vec<usize> {
        s.iter().map(Subspace::dim).collect()
    }

    #[test]
    fn small_series() {
        assert_eq!(dims(&series(&heisenberg(), SeriesKind::LowerCentral)), vec![3, 1, 0]);
        assert_eq!(dims(&series(&heisenberg(), SeriesKind::Derived)), vec![3, 1, 0]);
        assert_eq!(dims(&series(&LieAlgebra::abelian(4), SeriesKind::LowerCentral)), vec![4, 0]);
    }
}
