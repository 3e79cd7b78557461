//! Exact linear algebra over ℚ and its finite extensions.

pub mod charpoly;
pub mod field;
pub mod json;
pub mod matrix;
pub mod poly;
pub mod sparse;
pub mod sturm;
pub mod subspace;
pub mod unit_disk;

pub use charpoly::{bareiss_charpoly, charpoly_factors, diagonal_blocks};
pub use field::{int, rat, Field, Rational, Rationals, Q};
pub use matrix::{Matrix, RatMatrix, SparseMatrix};
pub use poly::RatPolynomial;
pub use sparse::{QVec, SparseVec};
pub use sturm::{rational_roots, real_roots_in_interval, SturmSequence};
pub use subspace::{Echelon, Subspace};
pub use unit_disk::{unit_disk_root_count, UnitDiskCount};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinearError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial division is not exact")]
    InexactDivision,
}

/// Reduced row echelon form, rank and kernel of a matrix.
#[derive(Clone, Debug)]
pub struct RrefKernel {
    pub rref: RatMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
    pub kernel: Subspace,
}

pub fn rref_kernel(m: &RatMatrix) -> RrefKernel {
    let (rref, pivots) = m.rref_in(&Q);
    let rank = pivots.len();
    let kernel_vecs: Vec<QVec> = m.kernel_basis_in(&Q).iter().map(|v| QVec::from_dense(&Q, v)).collect();
    let kernel = Subspace::from_vectors(m.cols(), &kernel_vecs).expect("kernel vectors have the column count");
    RrefKernel { rref, pivots, rank, kernel }
}
