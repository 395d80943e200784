use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactla::json::{format_rational, parse_rational};
use crate::exactla::JsonScalar;

/// An element `c + sum_i q_i * theta_i` of `Q + Q theta_1 + ... + Q theta_m`.
///
/// The parameters are formal names. Zero coefficients are never stored, so
/// structural equality is equality of elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamScalar {
    constant: BigRational,
    coeffs: BTreeMap<String, BigRational>,
}

impl ParamScalar {
    pub fn constant(q: BigRational) -> Self {
        Self {
            constant: q,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn integer(k: i64) -> Self {
        Self::constant(BigRational::from_integer(k.into()))
    }

    /// The bare parameter `name`.
    pub fn param(name: &str) -> Self {
        Self::param_times(name, BigRational::one())
    }

    pub fn param_times(name: &str, q: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !q.is_zero() {
            coeffs.insert(name.to_string(), q);
        }
        Self {
            constant: BigRational::zero(),
            coeffs,
        }
    }

    pub fn const_part(&self) -> &BigRational {
        &self.constant
    }

    pub fn coeffs(&self) -> &BTreeMap<String, BigRational> {
        &self.coeffs
    }

    pub fn coeff(&self, name: &str) -> BigRational {
        self.coeffs
            .get(name)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// True when no parameter occurs.
    pub fn is_rational(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            constant: &self.constant * k,
            coeffs: self
                .coeffs
                .iter()
                .map(|(n, q)| (n.clone(), q * k))
                .collect(),
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(k.clone()))
    }

    /// Same element with the constant part replaced.
    pub fn with_constant(&self, c: BigRational) -> Self {
        Self {
            constant: c,
            coeffs: self.coeffs.clone(),
        }
    }

    fn accumulate(&mut self, other: &Self, sign: bool) {
        if sign {
            self.constant += &other.constant;
        } else {
            self.constant -= &other.constant;
        }
        for (name, q) in &other.coeffs {
            let entry = self
                .coeffs
                .entry(name.clone())
                .or_insert_with(BigRational::zero);
            if sign {
                *entry += q;
            } else {
                *entry -= q;
            }
            if entry.is_zero() {
                self.coeffs.remove(name);
            }
        }
    }
}

impl Zero for ParamScalar {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }
}

impl Add for ParamScalar {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self.accumulate(&rhs, true);
        self
    }
}

impl<'a> Add<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;

    fn add(self, rhs: Self) -> ParamScalar {
        let mut out = self.clone();
        out.accumulate(rhs, true);
        out
    }
}

impl Sub for ParamScalar {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        self.accumulate(&rhs, false);
        self
    }
}

impl<'a> Sub<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;

    fn sub(self, rhs: Self) -> ParamScalar {
        let mut out = self.clone();
        out.accumulate(rhs, false);
        out
    }
}

impl Neg for ParamScalar {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale(&-BigRational::one())
    }
}

impl From<BigRational> for ParamScalar {
    fn from(q: BigRational) -> Self {
        Self::constant(q)
    }
}

impl From<i64> for ParamScalar {
    fn from(k: i64) -> Self {
        Self::integer(k)
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    q: &BigRational,
    name: Option<&str>,
) -> fmt::Result {
    let neg = q.is_negative();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let mag = q.abs();
    match name {
        None => write!(f, "{}", format_rational(&mag)),
        Some(n) if mag.is_one() => write!(f, "{n}"),
        Some(n) => write!(f, "{}*{n}", format_rational(&mag)),
    }
}

/// `1/2 + theta - 2*mu` style: constant first, then parameters by name.
impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.constant.is_zero() {
            write_term(f, first, &self.constant, None)?;
            first = false;
        }
        for (name, q) in &self.coeffs {
            write_term(f, first, q, Some(name))?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ParamRepr {
    #[serde(rename = "const")]
    constant: String,
    coeffs: BTreeMap<String, String>,
}

/// `{"const": "a/b", "coeffs": {"theta": "c/d", ...}}`.
impl JsonScalar for ParamScalar {
    fn to_json(&self) -> Value {
        let repr = ParamRepr {
            constant: format_rational(&self.constant),
            coeffs: self
                .coeffs
                .iter()
                .map(|(n, q)| (n.clone(), format_rational(q)))
                .collect(),
        };
        serde_json::to_value(repr).expect("scalar JSON")
    }

    fn from_json(v: &Value) -> Result<Self> {
        // plain numbers are accepted as constants
        if let Value::String(_) | Value::Number(_) = v {
            return BigRational::from_json(v).map(Self::constant);
        }
        let repr: ParamRepr =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = Self::constant(parse_rational(&repr.constant)?);
        for (name, q) in &repr.coeffs {
            if name.is_empty() {
                return Err(Error::Parse("empty parameter name".into()));
            }
            out = out + Self::param_times(name, parse_rational(q)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cancellation_removes_coefficients() {
        let a = ParamScalar::param("theta") + ParamScalar::integer(1);
        let b = a.clone() - ParamScalar::param("theta");
        assert_eq!(b, ParamScalar::integer(1));
        assert!(b.coeffs().is_empty());
        assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn display_forms() {
        let s = ParamScalar::constant(q(1, 2)) + ParamScalar::param("theta")
            - ParamScalar::param_times("mu", q(2, 1));
        assert_eq!(s.to_string(), "1/2 - 2*mu + theta");
        assert_eq!((-ParamScalar::param("theta")).to_string(), "-theta");
        assert_eq!(ParamScalar::zero().to_string(), "0");
    }

    #[test]
    fn json_roundtrip() {
        let s = ParamScalar::constant(q(-3, 4)) + ParamScalar::param_times("theta", q(5, 6));
        let v = s.to_json();
        assert_eq!(
            v.to_string(),
            r#"{"const":"-3/4","coeffs":{"theta":"5/6"}}"#
        );
        assert_eq!(ParamScalar::from_json(&v).unwrap(), s);
        assert_eq!(
            ParamScalar::from_json(&Value::String("2".into())).unwrap(),
            ParamScalar::integer(2)
        );
    }
}
