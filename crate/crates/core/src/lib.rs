//! Exact computations for finite cyclic symmetries of noncommutative tori.
//!
//! Everything here works over arbitrary-precision integers and rationals,
//! with real parameters (`theta`, `mu`, ...) carried as formal symbols that
//! are assumed linearly independent over the rationals together with 1.
//!
//! The layers, bottom up:
//!
//! - [`exactla`]: dense matrices generic over the scalar, kernels, Smith
//!   normal form, congruence lattices.
//! - [`cyclotomic`]: cyclotomic polynomials, companion matrices, orders.
//! - [`forms`]: parametrized skew forms and the spaces of forms invariant
//!   under an integer matrix.
//! - [`simplicity`]: nondegeneracy certificates and freeness of actions.
//! - [`ktheory`]: exterior-power fixed ranks, the K1 rank `s1`, AF verdicts
//!   and partition certificates.
//! - [`weyl`]: phase-exact monomials of the twisted group algebra.
//! - [`catalog`]: embedded fixture matrices and the checks built on them.
//! - [`verify`]: the aggregated reproduction run behind `verify-paper`.

pub mod catalog;
pub mod cyclotomic;
mod error;
pub mod exactla;
pub mod forms;
pub mod ktheory;
pub mod scalar;
pub mod simplicity;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use exactla::Matrix;
pub use forms::ParamScalar;

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational in lowest terms.
pub type Rat = num_rational::BigRational;

/// Dense integer matrix.
pub type IntMatrix = Matrix<Int>;
/// Dense rational matrix.
pub type RatMatrix = Matrix<Rat>;
/// Dense matrix over `Q + Q theta_1 + ... + Q theta_m`.
pub type ParamMatrix = Matrix<ParamScalar>;
