//! Parametrized skew forms and the forms invariant under an integer matrix.
//!
//! A form `Theta` is stored as a [`ParamMatrix`]; internally it is split
//! into its rational components `Theta_0 + sum_i theta_i Theta_i` so that
//! every linear-algebra step happens over Q. Parameters are opaque names
//! and are assumed independent over Q together with 1; nothing here tries
//! to verify that assumption.

mod param;

pub use param::ParamScalar;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{cyclotomic_companion, is_prime};
use crate::error::{Error, Result};
use crate::exactla::{rat_kernel, rref, to_rational, unimodular_inverse, Matrix};
use crate::{IntMatrix, ParamMatrix, RatMatrix};

/// `Theta = constant + sum over params of name * matrix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormComponents {
    pub constant: RatMatrix,
    pub params: BTreeMap<String, RatMatrix>,
}

pub fn components(theta: &ParamMatrix) -> FormComponents {
    let (r, c) = (theta.rows(), theta.cols());
    let constant = theta.map(|e| e.const_part().clone());
    let mut params = BTreeMap::new();
    for i in 0..r {
        for j in 0..c {
            for (name, q) in theta.get(i, j).coeffs() {
                params
                    .entry(name.clone())
                    .or_insert_with(|| RatMatrix::zeros(r, c))
                    .set(i, j, q.clone());
            }
        }
    }
    FormComponents { constant, params }
}

pub fn assemble(parts: &FormComponents) -> ParamMatrix {
    let (r, c) = (parts.constant.rows(), parts.constant.cols());
    Matrix::from_fn(r, c, |i, j| {
        parts.params.iter().fold(
            ParamScalar::constant(parts.constant.get(i, j).clone()),
            |acc, (name, m)| acc + ParamScalar::param_times(name, m.get(i, j).clone()),
        )
    })
}

/// Promotes a rational matrix to a form with no parameters.
pub fn rational_form(m: &RatMatrix) -> ParamMatrix {
    m.map(|q| ParamScalar::constant(q.clone()))
}

/// `name * m`.
pub fn param_form(name: &str, m: &RatMatrix) -> ParamMatrix {
    m.map(|q| ParamScalar::param_times(name, q.clone()))
}

pub fn add_forms(a: &ParamMatrix, b: &ParamMatrix) -> Result<ParamMatrix> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch("form sum".into()));
    }
    Ok(Matrix::from_fn(a.rows(), a.cols(), |i, j| {
        a.get(i, j) + b.get(i, j)
    }))
}

pub fn is_skew(theta: &ParamMatrix) -> bool {
    theta.is_square()
        && (0..theta.rows())
            .all(|i| (i..theta.cols()).all(|j| (theta.get(i, j) + theta.get(j, i)).is_zero()))
}

fn map_components(
    theta: &ParamMatrix,
    mut f: impl FnMut(&RatMatrix) -> Result<RatMatrix>,
) -> Result<ParamMatrix> {
    let parts = components(theta);
    let mapped = FormComponents {
        constant: f(&parts.constant)?,
        params: parts
            .params
            .iter()
            .map(|(n, m)| Ok((n.clone(), f(m)?)))
            .collect::<Result<_>>()?,
    };
    Ok(assemble(&mapped))
}

/// `a^t * theta * a`.
pub fn congruence(theta: &ParamMatrix, a: &IntMatrix) -> Result<ParamMatrix> {
    let q = to_rational(a);
    let qt = q.transpose();
    map_components(theta, |m| qt.try_mul(m)?.try_mul(&q))
}

/// Membership `a in G_Theta`, i.e. `a^t Theta a == Theta`.
pub fn is_invariant(a: &IntMatrix, theta: &ParamMatrix) -> Result<bool> {
    if !a.is_square() || a.rows() != theta.rows() || !theta.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix acting on a {}x{} form",
            a.rows(),
            a.cols(),
            theta.rows(),
            theta.cols()
        )));
    }
    Ok(&congruence(theta, a)? == theta)
}

/// Upper-triangle coordinates `(0,1), (0,2), ..., (d-2,d-1)` in row-major order.
pub fn upper_coordinates(d: usize) -> Vec<(usize, usize)> {
    (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .collect()
}

fn skew_unit(d: usize, i: usize, j: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(d, d);
    m.set(i, j, BigRational::one());
    m.set(j, i, -BigRational::one());
    m
}

fn skew_from_coordinates(d: usize, coords: &[BigRational]) -> RatMatrix {
    let mut m = RatMatrix::zeros(d, d);
    for (&(i, j), q) in upper_coordinates(d).iter().zip(coords) {
        m.set(i, j, q.clone());
        m.set(j, i, -q.clone());
    }
    m
}

/// Parameter names used for a solution space of the given dimension.
pub fn default_param_names(dim: usize) -> Vec<String> {
    match dim {
        1 => vec!["theta".into()],
        2 => vec!["theta".into(), "mu".into()],
        _ => (0..dim).map(|k| format!("theta{k}")).collect(),
    }
}

/// The Q-space of skew forms invariant under a fixed matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewFormSpace {
    pub dim: usize,
    pub params: Vec<String>,
    pub basis: Vec<RatMatrix>,
}

impl SkewFormSpace {
    /// `sum_k params[k] * basis[k]`, the member with all-formal coordinates.
    pub fn general_member(&self) -> ParamMatrix {
        self.basis.iter().zip(&self.params).fold(
            ParamMatrix::from_fn(self.dim, self.dim, |_, _| ParamScalar::zero()),
            |acc, (b, n)| add_forms(&acc, &param_form(n, b)).expect("basis shapes agree"),
        )
    }

    pub fn contains(&self, theta: &ParamMatrix) -> bool {
        if theta.rows() != self.dim || !is_skew(theta) {
            return false;
        }
        let parts = components(theta);
        std::iter::once(&parts.constant)
            .chain(parts.params.values())
            .all(|m| self.contains_rational(m))
    }

    fn contains_rational(&self, m: &RatMatrix) -> bool {
        let coords = upper_coordinates(self.dim);
        let target: Vec<BigRational> = coords.iter().map(|&(i, j)| m.get(i, j).clone()).collect();
        let mut rows: Vec<Vec<BigRational>> = self
            .basis
            .iter()
            .map(|b| coords.iter().map(|&(i, j)| b.get(i, j).clone()).collect())
            .collect();
        let before = rows.len();
        rows.push(target);
        let stacked = Matrix::from_rows(rows).expect("rectangular");
        rref(&stacked).1.len() == before
    }
}

/// Basis of `{Theta skew : a^t Theta a == Theta}`.
///
/// The linear map `Theta -> Theta - a^t Theta a` is assembled on
/// upper-triangle coordinates and its kernel is brought to reduced echelon
/// form, so basis element `k` is the unique one with a leading 1 at the
/// `k`-th pivot coordinate.
pub fn invariant_form_space(a: &IntMatrix) -> Result<SkewFormSpace> {
    unimodular_inverse(a)?;
    let d = a.rows();
    let coords = upper_coordinates(d);
    let q = to_rational(a);
    let qt = q.transpose();
    let images: Vec<Vec<BigRational>> = coords
        .iter()
        .map(|&(i, j)| {
            let e = skew_unit(d, i, j);
            let img = &e - &(&(&qt * &e) * &q);
            coords.iter().map(|&(r, c)| img.get(r, c).clone()).collect()
        })
        .collect();
    let basis = if coords.is_empty() {
        Vec::new()
    } else {
        let constraint = Matrix::from_columns(coords.len(), &images)?;
        let kernel = rat_kernel(&constraint);
        if kernel.is_empty() {
            Vec::new()
        } else {
            let (r, pivots) = rref(&Matrix::from_rows(kernel)?);
            (0..pivots.len())
                .map(|k| skew_from_coordinates(d, r.row(k)))
                .collect()
        }
    };
    Ok(SkewFormSpace {
        dim: d,
        params: default_param_names(basis.len()),
        basis,
    })
}

/// `sum_{k < order} (a^k)^t theta a^k`; invariant under `a` when `a^order == I`.
pub fn average_form(a: &IntMatrix, order: u64, theta: &ParamMatrix) -> Result<ParamMatrix> {
    if order == 0 || !a.pow(order)?.is_identity() {
        return Err(Error::OrderMismatch { order });
    }
    if !is_skew(theta) || theta.rows() != a.rows() {
        return Err(Error::NotSkew);
    }
    let mut power = IntMatrix::identity(a.rows());
    let mut total = ParamMatrix::from_fn(a.rows(), a.cols(), |_, _| ParamScalar::zero());
    for _ in 0..order {
        total = add_forms(&total, &congruence(theta, &power)?)?;
        power = &power * a;
    }
    Ok(total)
}

/// `theta * sum_k (C^k)^t (C^t - C) C^k` for the companion matrix `C` of the
/// `n`-th cyclotomic polynomial; skew, `C`-invariant and nondegenerate.
pub fn canonical_nondegenerate_seed(n: u64) -> Result<ParamMatrix> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "seed needs n >= 3, got {n}"
        )));
    }
    let c = cyclotomic_companion(n)?;
    let diff = to_rational(&(&c.transpose() - &c));
    average_form(&c, n, &param_form("theta", &diff))
}

/// Names `theta0, theta1, ...` for the free entries of a prime form.
pub fn prime_param_names(p: u64) -> Vec<String> {
    (0..(p.saturating_sub(1) / 2))
        .map(|k| format!("theta{k}"))
        .collect()
}

/// Value carried by the superdiagonal at offset `o` (1-based) of a prime form.
fn prime_offset_value(d: usize, o: usize, params: &[String]) -> ParamScalar {
    if o <= d / 2 {
        ParamScalar::param(&params[o - 1])
    } else {
        -ParamScalar::param(&params[d - o])
    }
}

/// The Toeplitz form of size `p - 1` with superdiagonals
/// `theta0, theta1, ..., theta_{(p-3)/2}, -theta_{(p-3)/2}, ..., -theta1`.
pub fn prime_form(p: u64, params: &[String]) -> Result<ParamMatrix> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let d = (p - 1) as usize;
    if params.len() != d / 2 {
        return Err(Error::InvalidArgument(format!(
            "prime form for p = {p} takes {} parameters, got {}",
            d / 2,
            params.len()
        )));
    }
    Ok(ParamMatrix::from_fn(d, d, |i, j| match j.cmp(&i) {
        std::cmp::Ordering::Greater => prime_offset_value(d, j - i, params),
        std::cmp::Ordering::Less => -prime_offset_value(d, i - j, params),
        std::cmp::Ordering::Equal => ParamScalar::zero(),
    }))
}

/// True iff every superdiagonal of the skew form is constant.
///
/// Forms of size 2 or less pass vacuously.
pub fn toeplitz_form_check(theta: &ParamMatrix) -> bool {
    let d = theta.rows();
    (0..d).all(|i| (i + 1..d).all(|j| theta.get(i, j) == theta.get(0, j - i)))
}

/// Toeplitz with the reflection relations `t_o + t_{d+1-o} = 0, 2 <= o <= d-1`.
pub fn matches_prime_form(theta: &ParamMatrix) -> bool {
    let d = theta.rows();
    if d == 0 || d % 2 == 1 || !is_skew(theta) || !toeplitz_form_check(theta) {
        return false;
    }
    (2..d).all(|o| (theta.get(0, o) + theta.get(0, d + 1 - o)).is_zero())
}

/// Whether `K_a = Theta - (a^-1)^t Theta a^-1` is an integer matrix, so that
/// `a` still acts on the torus after correcting by `K_a`.
pub fn extended_symmetry_check(a: &IntMatrix, theta: &ParamMatrix) -> Result<bool> {
    let inv = unimodular_inverse(a)?;
    let k = map_components(theta, |m| Ok(m.clone()))?;
    let moved = congruence(&k, &inv)?;
    if moved.rows() != theta.rows() {
        return Err(Error::DimensionMismatch("form and matrix".into()));
    }
    Ok((0..theta.rows()).all(|i| {
        (0..theta.cols()).all(|j| {
            let e = theta.get(i, j) - moved.get(i, j);
            e.is_rational() && e.const_part().is_integer()
        })
    }))
}
