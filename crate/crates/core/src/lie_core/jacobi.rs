use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exact_linear::{QVec, Q};

use super::algebra::LieAlgebra;

/// Largest dimension checked exhaustively by [`JacobiMode::auto`].
pub const EXHAUSTIVE_LIMIT: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

impl JacobiMode {
    pub fn auto(dim: usize, samples: usize, seed: u64) -> Self {
        if dim <= EXHAUSTIVE_LIMIT {
            JacobiMode::Exhaustive
        } else {
            JacobiMode::Sampled { samples, seed }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub jacobiator: QVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub checked: usize,
    pub violation: Option<JacobiViolation>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`.
pub fn jacobiator(alg: &LieAlgebra, i: usize, j: usize, k: usize) -> QVec {
    let a = alg.ad_basis(i, &alg.basis_bracket(j, k));
    let b = alg.ad_basis(j, &alg.basis_bracket(k, i));
    let c = alg.ad_basis(k, &alg.basis_bracket(i, j));
    a.add(&Q, &b).add(&Q, &c)
}

/// Checks the Jacobi identity on basis triples, stopping at the first
/// violation. Exhaustive mode runs over `i < j < k`; triples with a repeated
/// index hold by antisymmetry.
pub fn verify_jacobi(alg: &LieAlgebra, mode: JacobiMode) -> JacobiReport {
    let n = alg.dim();
    let mut checked = 0;
    let mut check = |i, j, k| {
        checked += 1;
        let jac = jacobiator(alg, i, j, k);
        (!jac.is_zero()).then_some(JacobiViolation { triple: (i, j, k), jacobiator: jac })
    };
    let violation = match mode {
        JacobiMode::Exhaustive => (0..n)
            .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
            .find_map(|(i, j, k)| check(i, j, k)),
        JacobiMode::Sampled { samples, seed } => {
            if n == 0 {
                None
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..samples).find_map(|_| {
                    let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                    check(i, j, k)
                })
            }
        }
    };
    JacobiReport { checked, violation }
}
