//! Exact linear algebra over the integers and the rationals.

pub mod json;
pub mod kernel;
pub mod lattice;
mod matrix;
pub mod modular;
pub mod snf;

pub use json::JsonScalar;
pub use kernel::{int_rank_q, inverse, rank_q, rat_kernel, rref, to_rational};
pub use lattice::{congruence_lattice, int_kernel};
pub use matrix::Matrix;
pub use snf::{smith_normal_form, SnfResult};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

/// Converts a matrix from small integers; handy for fixtures and tests.
pub fn int_matrix(rows: &[&[i64]]) -> Matrix<BigInt> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
    .expect("rectangular literal")
}

/// Inverse of a matrix in `GL_d(Z)`.
pub fn unimodular_inverse(a: &Matrix<BigInt>) -> Result<Matrix<BigInt>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let det = a.det()?;
    if det.magnitude() != &One::one() {
        return Err(Error::NotUnimodular {
            det: det.to_string(),
        });
    }
    let inv = inverse(&to_rational(a)).expect("unimodular matrices are invertible");
    Ok(inv.map(BigRational::to_integer))
}

/// Rejects anything that is not square with determinant +-1.
pub fn require_unimodular(a: &Matrix<BigInt>) -> Result<()> {
    unimodular_inverse(a).map(|_| ())
}
