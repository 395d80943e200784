//! Monomials `lambda * l(y)` of the twisted group algebra of `Z^d`.
//!
//! Scalars are unimodular and carried as exponents `t` of `exp(pi i t)`.
//! The product is `l(x) l(y) = exp(pi i <Theta x, y>) l(x + y)`, and the
//! generators are `u_k = l(e_k)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactla::json::int_value;
use crate::exactla::{unimodular_inverse, JsonScalar};
use crate::forms::{congruence, is_invariant};
use crate::{IntMatrix, ParamMatrix, ParamScalar};

/// `exp(pi i t)`, with the constant part of `t` reduced into `[0, 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhaseExponent(ParamScalar);

impl PhaseExponent {
    pub fn new(t: ParamScalar) -> Self {
        let two = BigRational::from_integer(BigInt::from(2));
        let c = t.const_part();
        let reduced = c - &two * (c / &two).floor();
        Self(t.with_constant(reduced))
    }

    pub fn zero() -> Self {
        Self(ParamScalar::zero())
    }

    pub fn exponent(&self) -> &ParamScalar {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.0 + &other.0)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.0.clone())
    }
}

impl From<ParamScalar> for PhaseExponent {
    fn from(t: ParamScalar) -> Self {
        Self::new(t)
    }
}

impl fmt::Display for PhaseExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(pi*i*({}))", self.0)
    }
}

/// `phase * l(vector)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub phase: PhaseExponent,
    pub vector: Vec<BigInt>,
}

impl WeylElement {
    pub fn identity(d: usize) -> Self {
        Self {
            phase: PhaseExponent::zero(),
            vector: vec![BigInt::zero(); d],
        }
    }

    /// `l(y)` with trivial phase.
    pub fn monomial(y: Vec<BigInt>) -> Self {
        Self {
            phase: PhaseExponent::zero(),
            vector: y,
        }
    }

    /// The generator `u_k`, zero-based `k`.
    pub fn generator(d: usize, k: usize) -> Self {
        let mut y = vec![BigInt::zero(); d];
        y[k] = BigInt::one();
        Self::monomial(y)
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::json!({
            "phase": self.phase.exponent().to_json(),
            "vector": self.vector.iter().map(int_value).collect::<Vec<_>>(),
        })
    }
}

/// `phase * u_1^{y_1} ... u_d^{y_d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalWord {
    pub phase: PhaseExponent,
    pub powers: Vec<BigInt>,
}

impl NormalWord {
    pub fn render(&self) -> String {
        let factors: Vec<String> = self
            .powers
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| {
                if a.is_one() {
                    format!("u{}", k + 1)
                } else if *a == -BigInt::one() {
                    format!("u{}*", k + 1)
                } else {
                    format!("u{}^{a}", k + 1)
                }
            })
            .collect();
        match (self.phase.is_trivial(), factors.is_empty()) {
            (true, true) => "1".into(),
            (true, false) => factors.join(" "),
            (false, true) => self.phase.to_string(),
            (false, false) => format!("{} {}", self.phase, factors.join(" ")),
        }
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::json!({
            "phase": self.phase.exponent().to_json(),
            "powers": self.powers.iter().map(int_value).collect::<Vec<_>>(),
            "text": self.render(),
        })
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for NormalWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl Serialize for WeylElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

fn check_len(theta: &ParamMatrix, v: &[BigInt]) -> Result<()> {
    if !theta.is_square() || theta.rows() != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against a {}x{} form",
            v.len(),
            theta.rows(),
            theta.cols()
        )));
    }
    Ok(())
}

/// Exponent `<Theta x, y> = sum_{i,j} y_i theta_ij x_j`.
pub fn cocycle(theta: &ParamMatrix, x: &[BigInt], y: &[BigInt]) -> Result<PhaseExponent> {
    check_len(theta, x)?;
    check_len(theta, y)?;
    let mut total = ParamScalar::zero();
    for (i, yi) in y.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            total = total + theta.get(i, j).scale_int(&(yi * xj));
        }
    }
    Ok(PhaseExponent::new(total))
}

fn add_vectors(x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn multiply(theta: &ParamMatrix, g: &WeylElement, h: &WeylElement) -> Result<WeylElement> {
    let omega = cocycle(theta, &g.vector, &h.vector)?;
    Ok(WeylElement {
        phase: g.phase.add(&h.phase).add(&omega),
        vector: add_vectors(&g.vector, &h.vector),
    })
}

pub fn inverse(theta: &ParamMatrix, g: &WeylElement) -> Result<WeylElement> {
    let self_pair = cocycle(theta, &g.vector, &g.vector)?;
    Ok(WeylElement {
        phase: g.phase.neg().add(&self_pair),
        vector: g.vector.iter().map(|x| -x).collect(),
    })
}

/// `l(y) = exp(pi i sum_{j<k} y_j y_k theta_jk) u_1^{y_1} ... u_d^{y_d}`.
pub fn normal_order(theta: &ParamMatrix, y: &[BigInt]) -> Result<NormalWord> {
    check_len(theta, y)?;
    let mut t = ParamScalar::zero();
    for k in 1..y.len() {
        for j in 0..k {
            let c = &y[j] * &y[k];
            if !c.is_zero() {
                t = t + theta.get(j, k).scale_int(&c);
            }
        }
    }
    Ok(NormalWord {
        phase: PhaseExponent::new(t),
        powers: y.to_vec(),
    })
}

/// The word read back as an element: its phase times the ordered product
/// of generator powers.
pub fn word_to_element(theta: &ParamMatrix, w: &NormalWord) -> Result<WeylElement> {
    let d = w.powers.len();
    let mut acc = WeylElement {
        phase: w.phase.clone(),
        vector: vec![BigInt::zero(); d],
    };
    for (k, a) in w.powers.iter().enumerate() {
        let u = WeylElement::generator(d, k);
        let step = if a.is_negative() {
            inverse(theta, &u)?
        } else {
            u
        };
        let mut count = a.abs();
        while count.is_positive() {
            acc = multiply(theta, &acc, &step)?;
            count -= 1;
        }
    }
    Ok(acc)
}

fn require_isotropy(a: &IntMatrix, theta: &ParamMatrix) -> Result<()> {
    if !is_invariant(a, theta)? {
        return Err(Error::NotInIsotropy);
    }
    Ok(())
}

/// The canonical automorphism `lambda l(y) -> lambda l(a y)`.
pub fn act(theta: &ParamMatrix, a: &IntMatrix, g: &WeylElement) -> Result<WeylElement> {
    require_isotropy(a, theta)?;
    Ok(WeylElement {
        phase: g.phase.clone(),
        vector: a.mul_vec(&g.vector)?,
    })
}

/// Normal-ordered images of `u_1, ..., u_d`.
pub fn action_table(a: &IntMatrix, theta: &ParamMatrix) -> Result<Vec<NormalWord>> {
    require_isotropy(a, theta)?;
    (0..a.cols())
        .map(|i| normal_order(theta, &a.column(i)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyReport {
    /// `(b^-1)^t theta' b^-1`.
    pub theta: ParamMatrix,
    /// `b a b^-1`.
    pub psi: IntMatrix,
    pub a_in_isotropy: bool,
    pub psi_in_isotropy: bool,
    /// `l(x) -> l(b x)` preserves the cocycle on generator pairs.
    pub cocycle_preserved: bool,
    /// `rho(alpha_a(u_i)) == beta_psi(rho(u_i))` for every generator.
    pub intertwines: bool,
    pub failures: Vec<String>,
}

impl ConjugacyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn conjugacy_check(
    b: &IntMatrix,
    theta_prime: &ParamMatrix,
    a: &IntMatrix,
) -> Result<ConjugacyReport> {
    let b_inv = unimodular_inverse(b)?;
    unimodular_inverse(a)?;
    let theta = congruence(theta_prime, &b_inv)?;
    let psi = b.try_mul(a)?.try_mul(&b_inv)?;
    let d = b.rows();

    let a_in_isotropy = is_invariant(a, theta_prime)?;
    let psi_in_isotropy = is_invariant(&psi, &theta)?;
    let mut cocycle_preserved = true;
    let mut intertwines = true;
    for i in 0..d {
        let ei = WeylElement::generator(d, i).vector;
        let bei = b.mul_vec(&ei)?;
        for j in 0..d {
            let ej = WeylElement::generator(d, j).vector;
            let bej = b.mul_vec(&ej)?;
            cocycle_preserved &= cocycle(&theta, &bei, &bej)? == cocycle(theta_prime, &ei, &ej)?;
        }
        let left = b.mul_vec(&a.mul_vec(&ei)?)?;
        let right = psi.mul_vec(&bei)?;
        intertwines &= left == right;
    }

    let mut failures = Vec::new();
    for (ok, what) in [
        (
            a_in_isotropy,
            "A is not in the isotropy group of the source form",
        ),
        (
            psi_in_isotropy,
            "B A B^-1 is not in the isotropy group of the target form",
        ),
        (
            cocycle_preserved,
            "l(x) -> l(Bx) does not preserve the cocycle",
        ),
        (intertwines, "the two actions are not intertwined"),
    ] {
        if !ok {
            failures.push(what.to_string());
        }
    }
    Ok(ConjugacyReport {
        theta,
        psi,
        a_in_isotropy,
        psi_in_isotropy,
        cocycle_preserved,
        intertwines,
        failures,
    })
}

/// Exponent-level equality: parameter parts exactly, constants mod 2.
pub fn same_phase(a: &ParamScalar, b: &ParamScalar) -> bool {
    let diff = a - b;
    diff.is_rational() && {
        let c = diff.const_part();
        c.is_integer() && c.to_integer().is_even()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int_matrix;
    use crate::forms::{param_form, rational_form};
    use crate::RatMatrix;

    fn iv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn theta2() -> ParamMatrix {
        let mut m = RatMatrix::zeros(2, 2);
        m.set(0, 1, BigRational::one());
        m.set(1, 0, -BigRational::one());
        param_form("theta", &m)
    }

    /// theta on (1,2) and (3,4)
    fn theta4() -> ParamMatrix {
        let mut m = RatMatrix::zeros(4, 4);
        for (i, j) in [(0, 1), (2, 3)] {
            m.set(i, j, BigRational::one());
            m.set(j, i, -BigRational::one());
        }
        param_form("theta", &m)
    }

    #[test]
    fn phase_normalization() {
        let p = PhaseExponent::new(ParamScalar::integer(-1) + ParamScalar::param("theta"));
        assert_eq!(p.exponent().const_part(), &BigRational::one());
        assert_eq!(
            PhaseExponent::new(ParamScalar::integer(4)),
            PhaseExponent::zero()
        );
        assert!(same_phase(
            &ParamScalar::integer(3),
            &ParamScalar::integer(1)
        ));
        assert!(!same_phase(
            &ParamScalar::integer(1),
            &ParamScalar::integer(0)
        ));
    }

    #[test]
    fn cocycle_on_generators() {
        let th = theta2();
        let w = cocycle(&th, &iv(&[1, 0]), &iv(&[0, 1])).unwrap();
        // omega(e_1, e_2) = theta_21 = -theta
        assert_eq!(w.exponent(), &-ParamScalar::param("theta"));
        let zero = rational_form(&RatMatrix::zeros(2, 2));
        assert!(cocycle(&zero, &iv(&[3, 1]), &iv(&[2, 5]))
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn commutation_gap() {
        let th = theta2();
        let (u1, u2) = (WeylElement::generator(2, 0), WeylElement::generator(2, 1));
        let a = multiply(&th, &u1, &u2).unwrap();
        let b = multiply(&th, &u2, &u1).unwrap();
        assert_eq!(a.vector, b.vector);
        let gap = a.phase.exponent() - b.phase.exponent();
        assert_eq!(
            gap,
            ParamScalar::param_times("theta", BigRational::from_integer((-2).into()))
        );
    }

    #[test]
    fn inverses_and_identity() {
        let th = theta4();
        let g = WeylElement {
            phase: PhaseExponent::new(ParamScalar::param("theta")),
            vector: iv(&[1, -2, 0, 3]),
        };
        let id = WeylElement::identity(4);
        assert_eq!(multiply(&th, &g, &id).unwrap(), g);
        assert_eq!(multiply(&th, &g, &inverse(&th, &g).unwrap()).unwrap(), id);
        assert_eq!(inverse(&th, &id).unwrap(), id);
        let u = WeylElement::generator(4, 2);
        assert_eq!(inverse(&th, &u).unwrap().vector, iv(&[0, 0, -1, 0]));
    }

    #[test]
    fn normal_order_examples() {
        let th = theta4();
        let w = normal_order(&th, &iv(&[0, 1, 0, -1])).unwrap();
        assert_eq!(w.render(), "u2 u4*");
        let w = normal_order(&th, &iv(&[-1, -1, 0, 0])).unwrap();
        assert_eq!(w.render(), "exp(pi*i*(theta)) u1* u2*");
        assert_eq!(
            normal_order(&th, &iv(&[0, 0, 1, 0])).unwrap().render(),
            "u3"
        );
        assert_eq!(normal_order(&th, &iv(&[0, 0, 0, 0])).unwrap().render(), "1");
        assert_eq!(
            normal_order(&th, &iv(&[2, 0, 0, -3])).unwrap().render(),
            "u1^2 u4^-3"
        );
    }

    #[test]
    fn word_round_trip() {
        let th = theta4();
        for y in [iv(&[1, 1, 0, 0]), iv(&[-2, 3, 1, -1]), iv(&[0, -1, 2, 2])] {
            let w = normal_order(&th, &y).unwrap();
            assert_eq!(word_to_element(&th, &w).unwrap(), WeylElement::monomial(y));
        }
    }

    #[test]
    fn two_by_two_table() {
        // a in SL_2(Z): u_i -> exp(pi i theta a_1i a_2i) u1^a_1i u2^a_2i
        let a = int_matrix(&[&[2, 1], &[1, 1]]);
        let table = action_table(&a, &theta2()).unwrap();
        assert_eq!(table[0].render(), "exp(pi*i*(2*theta)) u1^2 u2");
        assert_eq!(table[1].render(), "exp(pi*i*(theta)) u1 u2");
        let flip = int_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(action_table(&flip, &theta2()), Err(Error::NotInIsotropy));
    }

    #[test]
    fn act_and_conjugacy() {
        let th = theta2();
        let rot = int_matrix(&[&[0, -1], &[1, 0]]);
        let g = WeylElement::generator(2, 0);
        assert_eq!(act(&th, &rot, &g).unwrap().vector, iv(&[0, 1]));
        assert_eq!(act(&th, &IntMatrix::identity(2), &g).unwrap(), g);
        let r = conjugacy_check(&IntMatrix::identity(2), &th, &rot).unwrap();
        assert!(r.passed());
        assert_eq!(r.psi, rot);
        let shear = int_matrix(&[&[1, 1], &[0, 1]]);
        let r = conjugacy_check(&shear, &th, &rot).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn json_mirror() {
        let w = normal_order(&theta4(), &iv(&[-1, -1, 0, 0])).unwrap();
        assert_eq!(
            serde_json::to_string(&w).unwrap(),
            r#"{"phase":{"const":"0","coeffs":{"theta":"1"}},"powers":[-1,-1,0,0],"text":"exp(pi*i*(theta)) u1* u2*"}"#
        );
    }
}
