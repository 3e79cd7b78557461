//! Lie algebras by structure constants: ideals, quotients, series and the
//! Jacobi check.

mod algebra;
mod ideal;
mod jacobi;
mod json;
mod quotient;
mod series;

pub use algebra::LieAlgebra;
pub use ideal::{ideal_closure, IdealDescriptor};
pub use json::{AlgebraJson, ProjectionJson};
pub use jacobi::{jacobiator, verify_jacobi, JacobiMode, JacobiReport, JacobiViolation, EXHAUSTIVE_LIMIT};
pub use quotient::{abelianization, quotient, Projection, Quotient};
pub use series::{series, SeriesKind};


#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("invalid structure constants: {0}")]
    InvalidTable(String),
    #[error("subspace is not an ideal: [e{generator}, row {row}] leaves it")]
    NotAnIdeal { generator: usize, row: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
