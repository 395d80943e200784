//! Cyclotomic polynomials, companion matrices and finite matrix orders.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::IntMatrix;

/// Integer polynomial, coefficients in ascending degree with trailing zeros
/// trimmed. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = -BigInt::one();
        c[n] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient by a monic divisor; errors when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if !divisor.is_monic() {
            return Err(Error::InvalidPolynomial("divisor must be monic".into()));
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if rem.iter().all(Zero::is_zero) {
                Ok(Self::new(Vec::new()))
            } else {
                Err(Error::InvalidPolynomial(
                    "division leaves a remainder".into(),
                ))
            };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &lead * c;
            }
            quot[k] = lead;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidPolynomial(
                "division leaves a remainder".into(),
            ));
        }
        Ok(Self::new(quot))
    }
}

/// Ascending order: `1 - x^2 + x^4`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{mono}")?,
                (_, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    coeffs: Vec<String>,
}

/// `{"coeffs": ["a0", "a1", ...]}`.
impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| c.trim().parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self::new(coeffs))
    }
}

/// Prime factorization by trial division, as `(p, k)` pairs in increasing `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("phi(0) is undefined".into()));
    }
    Ok(factorize(n)
        .iter()
        .map(|&(p, k)| (p - 1) * p.pow(k - 1))
        .product())
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, IntPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Phi_n`, obtained by dividing `x^n - 1` by every `Phi_d` with `d | n, d < n`.
pub fn cyclotomic_poly(n: u64) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "cyclotomic polynomial needs n >= 1".into(),
        ));
    }
    if let Some(p) = cyclotomic_cache().lock().expect("cache lock").get(&n) {
        return Ok(p.clone());
    }
    // the lock is released before recursing
    let mut acc = IntPoly::x_pow_minus_one(n as usize);
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        acc = acc.div_exact(&cyclotomic_poly(d)?)?;
    }
    cyclotomic_cache()
        .lock()
        .expect("cache lock")
        .insert(n, acc.clone());
    Ok(acc)
}

/// Companion matrix: ones on the subdiagonal, last column `-a_0, ..., -a_{d-1}`.
pub fn companion(p: &IntPoly) -> Result<IntMatrix> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::InvalidPolynomial("degree must be at least 1".into())),
    };
    if !p.is_monic() {
        return Err(Error::InvalidPolynomial(format!("{p} is not monic")));
    }
    if p.coeffs()[0].is_zero() {
        return Err(Error::InvalidPolynomial(format!(
            "{p} has zero constant term, so its companion is singular"
        )));
    }
    Ok(IntMatrix::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -p.coeffs()[i].clone()
        } else if i == j + 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }))
}

/// `C_n`, the companion matrix of `Phi_n`.
pub fn cyclotomic_companion(n: u64) -> Result<IntMatrix> {
    companion(&cyclotomic_poly(n)?)
}

pub const DEFAULT_ORDER_CAP: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MatrixOrder {
    Finite(u64),
    ExceedsCap,
}

impl MatrixOrder {
    pub fn finite(self) -> Option<u64> {
        match self {
            Self::Finite(k) => Some(k),
            Self::ExceedsCap => None,
        }
    }
}

/// Least `k <= cap` with `a^k = I`, by plain iteration.
pub fn matrix_order(a: &IntMatrix, cap: u64) -> Result<MatrixOrder> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let mut power = a.clone();
    for k in 1..=cap {
        if power.is_identity() {
            return Ok(MatrixOrder::Finite(k));
        }
        power = power.try_mul(a)?;
    }
    Ok(MatrixOrder::ExceedsCap)
}

/// Whether `GL_n(Z)` has an element of order `m`.
///
/// With `m = p_1^k_1 ... p_r^k_r`, `p_1 < ... < p_r`, the minimal dimension
/// is `sum (p_i - 1) p_i^(k_i - 1)`, lowered by one when `p_1^k_1 = 2`
/// (the factor -1 rides along for free).
pub fn order_realizable(m: u64, n: u64) -> Result<bool> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument(
            "orders and dimensions start at 1".into(),
        ));
    }
    let f = factorize(m);
    let total: u64 = f.iter().map(|&(p, k)| (p - 1) * p.pow(k - 1)).sum();
    let correction = u64::from(f.first() == Some(&(2, 1)));
    Ok(total - correction <= n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int_matrix;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1).unwrap(), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(
            cyclotomic_poly(5).unwrap(),
            IntPoly::from_i64(&[1, 1, 1, 1, 1])
        );
        assert_eq!(
            cyclotomic_poly(12).unwrap(),
            IntPoly::from_i64(&[1, 0, -1, 0, 1])
        );
        assert_eq!(
            cyclotomic_poly(8).unwrap(),
            IntPoly::from_i64(&[1, 0, 0, 0, 1])
        );
        assert_eq!(
            cyclotomic_poly(10).unwrap(),
            IntPoly::from_i64(&[1, -1, 1, -1, 1])
        );
        assert!(cyclotomic_poly(0).is_err());
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        for n in [5, 8, 10, 12] {
            assert_eq!(euler_phi(n).unwrap(), 4);
        }
        assert_eq!(euler_phi(9).unwrap(), 6);
    }

    #[test]
    fn companion_shapes() {
        let c5 = cyclotomic_companion(5).unwrap();
        assert_eq!(
            c5,
            int_matrix(&[
                &[0, 0, 0, -1],
                &[1, 0, 0, -1],
                &[0, 1, 0, -1],
                &[0, 0, 1, -1]
            ])
        );
        assert_eq!(
            cyclotomic_companion(12).unwrap(),
            int_matrix(&[&[0, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 1], &[0, 0, 1, 0]])
        );
        assert_eq!(cyclotomic_companion(1).unwrap(), int_matrix(&[&[1]]));
        assert!(companion(&IntPoly::from_i64(&[1, 2])).is_err());
        assert!(companion(&IntPoly::from_i64(&[0, 1])).is_err());
        assert!(companion(&IntPoly::from_i64(&[3])).is_err());
    }

    #[test]
    fn orders() {
        let c8 = cyclotomic_companion(8).unwrap();
        assert_eq!(matrix_order(&c8, 100).unwrap(), MatrixOrder::Finite(8));
        let neg = int_matrix(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        assert_eq!(matrix_order(&neg, 100).unwrap(), MatrixOrder::Finite(2));
        let a61 = int_matrix(&[&[1, 0, 0], &[0, 0, -1], &[0, 1, 1]]);
        assert_eq!(matrix_order(&a61, 100).unwrap(), MatrixOrder::Finite(6));
        let shear = int_matrix(&[&[1, 1], &[0, 1]]);
        assert_eq!(matrix_order(&shear, 50).unwrap(), MatrixOrder::ExceedsCap);
    }

    #[test]
    fn realizable_orders_in_dimension_four() {
        let set: Vec<u64> = (1..=60)
            .filter(|&m| order_realizable(m, 4).unwrap())
            .collect();
        assert_eq!(set, vec![1, 2, 3, 4, 5, 6, 8, 10, 12]);
        assert!(order_realizable(2, 1).unwrap());
        assert!(!order_realizable(3, 1).unwrap());
    }

    #[test]
    fn poly_display_and_json() {
        let p = cyclotomic_poly(12).unwrap();
        assert_eq!(p.to_string(), "1 - x^2 + x^4");
        assert_eq!(IntPoly::from_i64(&[-1, 1]).to_string(), "-1 + x");
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"{"coeffs":["1","0","-1","0","1"]}"#);
        assert_eq!(serde_json::from_str::<IntPoly>(&j).unwrap(), p);
    }

    #[test]
    fn exact_division_rejects_remainders() {
        let p = IntPoly::from_i64(&[1, 0, 1]);
        assert!(p.div_exact(&IntPoly::from_i64(&[1, 1])).is_err());
        assert_eq!(
            IntPoly::x_pow_minus_one(2)
                .div_exact(&IntPoly::from_i64(&[1, 1]))
                .unwrap(),
            IntPoly::from_i64(&[-1, 1])
        );
    }
}
