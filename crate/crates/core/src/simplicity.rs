//! Nondegeneracy of parametrized skew forms and freeness of finite actions.
//!
//! A form is degenerate when some nonzero `x in Z^d` has `Theta x in Z^d`.
//! Writing `Theta = Theta_0 + sum theta_i Theta_i` with the `theta_i`
//! independent over Q together with 1, that condition splits into
//! `Theta_i x = 0` for every parameter and `Theta_0 x in Z^d`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactla::json::int_value;
use crate::exactla::{congruence_lattice, int_kernel, to_rational, Matrix};
use crate::forms::{components, is_skew};
use crate::{IntMatrix, ParamMatrix, ParamScalar, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyVerdict {
    pub nondegenerate: bool,
    /// Present exactly when the form is degenerate.
    pub witness: Option<Vec<BigInt>>,
}

impl DegeneracyVerdict {
    pub fn to_json_value(&self) -> Value {
        serde_json::json!({
            "nondegenerate": self.nondegenerate,
            "witness": self
                .witness
                .as_ref()
                .map(|w| w.iter().map(int_value).collect::<Vec<_>>()),
        })
    }
}

impl Serialize for DegeneracyVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

/// Integer matrix proportional to `m` with the same kernel.
fn integral_multiple(m: &RatMatrix) -> IntMatrix {
    let l = m
        .entries()
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scale = BigRational::from_integer(l);
    m.map(|q| (q * &scale).to_integer())
}

fn sup_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(Signed::abs).max().unwrap_or_default()
}

fn normalize_sign(mut v: Vec<BigInt>) -> Vec<BigInt> {
    if v.iter()
        .find(|x| !x.is_zero())
        .is_some_and(Signed::is_negative)
    {
        for x in &mut v {
            *x = -x.clone();
        }
    }
    v
}

/// Smallest sup-norm first, then fewest nonzero entries, then the
/// lexicographically largest vector of absolute values, so that `e_1` beats
/// `e_2`.
fn pick_witness(candidates: Vec<Vec<BigInt>>) -> Option<Vec<BigInt>> {
    candidates
        .into_iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .map(normalize_sign)
        .min_by(|a, b| {
            let abs = |v: &[BigInt]| v.iter().map(Signed::abs).collect::<Vec<_>>();
            let support = |v: &[BigInt]| v.iter().filter(|x| !x.is_zero()).count();
            sup_norm(a)
                .cmp(&sup_norm(b))
                .then_with(|| support(a).cmp(&support(b)))
                .then_with(|| abs(b).cmp(&abs(a)))
        })
}

/// Largest box `[-b, b]^d` scanned when looking for a shorter witness than
/// the best lattice basis vector.
const REFINE_BOX_LIMIT: u64 = 200_000;

fn lands_in_lattice(theta: &ParamMatrix, x: &[BigInt]) -> bool {
    (0..theta.rows()).all(|i| {
        let mut s = ParamScalar::zero();
        for (j, xj) in x.iter().enumerate() {
            if !xj.is_zero() {
                s = s + theta.get(i, j).scale_int(xj);
            }
        }
        s.is_rational() && s.const_part().is_integer()
    })
}

/// The basis vectors of the solution lattice need not be shortest, so scan
/// every vector no longer than `w` when that box is small enough.
fn refine_witness(theta: &ParamMatrix, w: Vec<BigInt>) -> Vec<BigInt> {
    let d = w.len() as u32;
    let Some(b) = sup_norm(&w).to_i64() else {
        return w;
    };
    let side = 2 * b as u64 + 1;
    if side.checked_pow(d).map_or(true, |n| n > REFINE_BOX_LIMIT) {
        return w;
    }
    let mut found = vec![w];
    let total = side.pow(d);
    for mut k in 0..total {
        let x: Vec<BigInt> = (0..d)
            .map(|_| {
                let c = (k % side) as i64 - b;
                k /= side;
                BigInt::from(c)
            })
            .collect();
        if x.iter().any(|c| !c.is_zero()) && lands_in_lattice(theta, &x) {
            found.push(x);
        }
    }
    pick_witness(found).expect("the basis witness is nonzero")
}

pub fn is_nondegenerate(theta: &ParamMatrix) -> Result<DegeneracyVerdict> {
    if !is_skew(theta) {
        return Err(Error::NotSkew);
    }
    let d = theta.rows();
    let parts = components(theta);

    // L: common integer kernel of the parameter coefficient matrices
    let lattice: Vec<Vec<BigInt>> = if parts.params.is_empty() {
        IntMatrix::identity(d).to_rows()
    } else {
        let mut stacked: Option<IntMatrix> = None;
        for m in parts.params.values() {
            let im = integral_multiple(m);
            stacked = Some(match stacked {
                None => im,
                Some(s) => s.vstack(&im)?,
            });
        }
        int_kernel(&stacked.expect("at least one parameter"))
    };
    if lattice.is_empty() {
        return Ok(DegeneracyVerdict {
            nondegenerate: true,
            witness: None,
        });
    }

    // within L = K Z^r solve N Theta_0 K y = 0 (mod N)
    let k = Matrix::from_columns(d, &lattice)?;
    let t = parts.constant.try_mul(&to_rational(&k))?;
    let n = t
        .entries()
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scale = BigRational::from_integer(n.clone());
    let nt = t.map(|q| (q * &scale).to_integer());
    let solutions = congruence_lattice(&nt, &n);
    let candidates = solutions
        .iter()
        .map(|y| k.mul_vec(y))
        .collect::<Result<Vec<_>>>()?;
    let witness = pick_witness(candidates).map(|w| refine_witness(theta, w));
    Ok(DegeneracyVerdict {
        nondegenerate: witness.is_none(),
        witness,
    })
}

/// Symbolic check that `x != 0` and `Theta x in Z^d`.
pub fn verify_witness(theta: &ParamMatrix, x: &[BigInt]) -> Result<bool> {
    if x.len() != theta.cols() {
        return Err(Error::DimensionMismatch("witness length".into()));
    }
    if x.iter().all(Zero::is_zero) {
        return Ok(false);
    }
    let parts = components(theta);
    let qx: Vec<BigRational> = x
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    for m in parts.params.values() {
        if !m.mul_vec(&qx)?.iter().all(Zero::is_zero) {
            return Ok(false);
        }
    }
    Ok(parts
        .constant
        .mul_vec(&qx)?
        .iter()
        .all(BigRational::is_integer))
}

/// True iff no `a^k`, `0 < k < order`, fixes a nonzero lattice vector.
pub fn is_free_outside_origin(a: &IntMatrix, order: u64) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if order == 0 || !a.pow(order)?.is_identity() {
        return Err(Error::OrderMismatch { order });
    }
    let id = IntMatrix::identity(a.rows());
    let mut power = a.clone();
    for _ in 1..order {
        if !int_kernel(&(&power - &id)).is_empty() {
            return Ok(false);
        }
        power = &power * a;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int_matrix;
    use crate::forms::{canonical_nondegenerate_seed, param_form, rational_form};
    use crate::ParamScalar;

    fn iv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn unit(d: usize, i: usize, j: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(d, d);
        m.set(i, j, BigRational::one());
        m.set(j, i, -BigRational::one());
        m
    }

    #[test]
    fn formal_two_torus_is_nondegenerate() {
        let v = is_nondegenerate(&param_form("theta", &unit(2, 0, 1))).unwrap();
        assert!(v.nondegenerate);
        assert_eq!(v.witness, None);
    }

    #[test]
    fn three_torus_flip_form_has_axis_witness() {
        let theta = param_form("s", &unit(3, 1, 2));
        let v = is_nondegenerate(&theta).unwrap();
        assert!(!v.nondegenerate);
        assert_eq!(v.witness, Some(iv(&[1, 0, 0])));
        assert!(verify_witness(&theta, &iv(&[1, 0, 0])).unwrap());
        assert!(!verify_witness(&theta, &iv(&[0, 1, 0])).unwrap());
    }

    #[test]
    fn zero_form_witness_is_first_unit_vector() {
        let zero = ParamMatrix::from_fn(3, 3, |_, _| ParamScalar::zero());
        let v = is_nondegenerate(&zero).unwrap();
        assert_eq!(v.witness, Some(iv(&[1, 0, 0])));
    }

    #[test]
    fn rational_forms_are_degenerate() {
        let half = unit(2, 0, 1).scale(&BigRational::new(1.into(), 2.into()));
        let v = is_nondegenerate(&rational_form(&half)).unwrap();
        assert_eq!(v.witness, Some(iv(&[2, 0])));
    }

    #[test]
    fn parameter_pair_with_shared_kernel() {
        // theta on (1,2), mu on (1,2) too: both kill e3 in dimension 3
        let theta = crate::forms::add_forms(
            &param_form("theta", &unit(3, 0, 1)),
            &param_form("mu", &unit(3, 0, 1)),
        )
        .unwrap();
        let v = is_nondegenerate(&theta).unwrap();
        assert_eq!(v.witness, Some(iv(&[0, 0, 1])));
    }

    #[test]
    fn seeds_are_nondegenerate() {
        for n in 3..=12 {
            let v = is_nondegenerate(&canonical_nondegenerate_seed(n).unwrap()).unwrap();
            assert!(v.nondegenerate, "n = {n}");
        }
    }

    #[test]
    fn rejects_non_skew() {
        let m = rational_form(&RatMatrix::identity(2));
        assert_eq!(is_nondegenerate(&m), Err(Error::NotSkew));
    }

    #[test]
    fn verdict_json() {
        let v = DegeneracyVerdict {
            nondegenerate: false,
            witness: Some(iv(&[1, 0, -2])),
        };
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"nondegenerate":false,"witness":[1,0,-2]}"#
        );
        let ok = DegeneracyVerdict {
            nondegenerate: true,
            witness: None,
        };
        assert_eq!(
            serde_json::to_string(&ok).unwrap(),
            r#"{"nondegenerate":true,"witness":null}"#
        );
    }

    #[test]
    fn freeness() {
        for n in 3..=12 {
            let c = crate::cyclotomic::cyclotomic_companion(n).unwrap();
            assert!(is_free_outside_origin(&c, n).unwrap(), "n = {n}");
        }
        let a21 = int_matrix(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        assert!(!is_free_outside_origin(&a21, 2).unwrap());
        let neg = int_matrix(&[&[-1, 0], &[0, -1]]);
        assert!(is_free_outside_origin(&neg, 2).unwrap());
        assert!(matches!(
            is_free_outside_origin(&neg, 3),
            Err(Error::OrderMismatch { order: 3 })
        ));
    }
}
