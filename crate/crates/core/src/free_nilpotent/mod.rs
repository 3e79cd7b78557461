//! Free nilpotent Lie algebras in a Hall basis.

mod hall;

pub use hall::{normal_form, FreeElement, HallBasis, HallShape, HallWord};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeError {
    #[error("need at least one generator and class at least 1 (got gens={gens}, class={class})")]
    InvalidParameters { gens: usize, class: usize },
    #[error("elements live over different Hall bases")]
    MismatchedBases,
    #[error("coordinate outside the Hall basis")]
    OutOfRange,
    #[error("bracket expression, position {position}: {message}")]
    Parse { position: usize, message: String },
}

/// Dimension of the degree-`d` part of the free Lie algebra on `g`
/// generators: `(1/d) Σ_{e | d} möbius(e) g^(d/e)`.
pub fn witt_dimension(g: u64, d: u32) -> u128 {
    if d == 0 {
        return 0;
    }
    let mut total: i128 = 0;
    for e in 1..=d {
        if d % e == 0 {
            total += mobius(e) as i128 * (g as i128).pow(d / e);
        }
    }
    (total / d as i128) as u128
}

fn mobius(mut n: u32) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}
