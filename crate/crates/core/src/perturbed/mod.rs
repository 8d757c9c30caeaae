//! Block perturbed consistent matrices.
//!
//! A matrix obtained from a consistent one by reciprocally modifying the
//! entries of an `s x s` principal submatrix is monomially similar to
//! `[[B, J], [J, J]]`. This module recognizes that structure, brings the
//! three-block and four-block triangular families into their canonical
//! parameterization, decides whether the cone generated by the columns lies
//! inside the efficient set and, when it does not, builds a certified
//! inefficient vector of the cone.

mod classify;
mod hull;

pub use classify::{
    canonical_3block_params, canonicalize_3block, canonicalize_4block_triangular, classify_triple,
    cond11, detect_block_structure, reverse_triangular_params, BlockClassification, BlockKind,
    Canonical3, Cond11, ThreeBlockCanonical, TriangularCanonical,
};
pub use hull::{
    cone_coefficients_3x3, decompose_3x3, hull_in_efficient_3block, hull_in_efficient_triangular,
    hull_subset_efficient, rowsum_witness, triangular_conditions, witness_3block,
    witness_triangular, Containment, HullVerdict, HullWitness, TriangularCondition,
};

use crate::error::{Error, Result};
use crate::matrix::ReciprocalMatrix;

/// `A_n(B)` with `B = [[1, a12, a13], [., 1, a23], [., ., 1]]`.
pub fn three_block_matrix(n: usize, a12: f64, a13: f64, a23: f64) -> Result<ReciprocalMatrix> {
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    ReciprocalMatrix::from_upper_fn(n, |i, j| match (i, j) {
        (0, 1) => a12,
        (0, 2) => a13,
        (1, 2) => a23,
        _ => 1.0,
    })
}

/// Ones everywhere except `a13`, `a14`, `a24` (1-based) and their reciprocals.
pub fn triangular_matrix(n: usize, a13: f64, a14: f64, a24: f64) -> Result<ReciprocalMatrix> {
    if n < 4 {
        return Err(Error::DimensionTooSmall { n, min: 4 });
    }
    ReciprocalMatrix::from_upper_fn(n, |i, j| match (i, j) {
        (0, 2) => a13,
        (0, 3) => a14,
        (1, 3) => a24,
        _ => 1.0,
    })
}

/// `S_n(x)`: only `a12 = x` differs from the all-ones matrix.
pub fn simple_perturbed_matrix(n: usize, x: f64) -> Result<ReciprocalMatrix> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    ReciprocalMatrix::from_upper_fn(n, |i, j| if (i, j) == (0, 1) { x } else { 1.0 })
}
