//! JSON encoding of matrices shared by every file format in the crate.
//!
//! `{"rows": r, "cols": c, "entries": [["num/den", ...], ...]}` with integers
//! written without a denominator. Encoding is canonical, so decoding and
//! re-encoding reproduces the input byte for byte.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::Matrix;
use crate::error::{Error, Result};

/// Scalars with a canonical JSON representation.
pub trait JsonScalar: Sized + Clone {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// A JSON number when the integer fits in 64 bits, a decimal string otherwise.
pub fn int_value(x: &BigInt) -> Value {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(k) => Value::from(k),
        None => Value::String(x.to_string()),
    }
}

fn scalar_str(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        _ => Err(Error::Parse(format!("expected a numeric string, got {v}"))),
    }
}

impl JsonScalar for BigRational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        parse_rational(&scalar_str(v)?)
    }
}

impl JsonScalar for BigInt {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        let q = parse_rational(&scalar_str(v)?)?;
        if !q.is_integer() {
            return Err(Error::Parse(format!("expected an integer, got {q}")));
        }
        Ok(q.to_integer())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Value>>,
}

impl<T: JsonScalar> Matrix<T> {
    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self.repr()).expect("matrix JSON")
    }

    fn repr(&self) -> MatrixRepr {
        MatrixRepr {
            rows: self.rows(),
            cols: self.cols(),
            entries: (0..self.rows())
                .map(|i| self.row(i).iter().map(JsonScalar::to_json).collect())
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.repr()).expect("matrix JSON")
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let repr: MatrixRepr =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_repr(repr)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let repr: MatrixRepr = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_repr(repr)
    }

    fn from_repr(repr: MatrixRepr) -> Result<Self> {
        if repr.rows == 0 || repr.cols == 0 {
            return Err(Error::Parse("matrix dimensions must be positive".into()));
        }
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|r| r.len() != repr.cols) {
            return Err(Error::Parse(format!(
                "entries do not match declared {}x{} shape",
                repr.rows, repr.cols
            )));
        }
        let data = repr
            .entries
            .iter()
            .flatten()
            .map(T::from_json)
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_vec(repr.rows, repr.cols, data)
    }
}

impl<T: JsonScalar> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.repr().serialize(s)
    }
}

impl<'de, T: JsonScalar> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        Self::from_repr(repr).map_err(D::Error::custom)
    }
}
