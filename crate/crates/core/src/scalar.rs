//! Scalar traits the generic matrix code is written against.
//!
//! [`Ring`] is blanket-implemented for every type with the usual
//! `num-traits` arithmetic. [`Field`] is opt-in because integer types also
//! implement `Div` (truncating) and must never reach the field algorithms.
//! [`EuclideanDomain`] covers the integer types used by Smith normal form.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A ring in which every nonzero element is invertible and `/` is exact.
pub trait Field: Ring + Div<Output = Self> {}

impl Field for BigRational {}
impl Field for Ratio<i64> {}
impl Field for Ratio<i128> {}
impl Field for f32 {}
impl Field for f64 {}

/// Integers with division with remainder.
pub trait EuclideanDomain: Ring + Integer + Signed {}

impl<T> EuclideanDomain for T where T: Ring + Integer + Signed {}

/// Integral domains where `/` is exact whenever the quotient exists; used by
/// fraction-free (Bareiss) elimination.
pub trait ExactDivision: Ring + Div<Output = Self> {}

impl ExactDivision for BigInt {}
impl ExactDivision for i64 {}
impl ExactDivision for i128 {}
impl<T: Field> ExactDivision for T {}
