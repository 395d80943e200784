//! Partition certificates `{I, J}` of `{1, ..., d}` and the fixed exterior
//! vectors they produce.

use itertools::Itertools;
use num_bigint::BigInt;
use serde::Serialize;

use super::wedge::{apply, wedge, WedgeVector};
use crate::cyclotomic::{cyclotomic_companion, euler_phi};
use crate::error::{Error, Result};

pub const MAX_SEARCH_DIM: u64 = 24;

/// Disjoint odd-size index sets (1-based) whose union is `{1, ..., d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCertificate {
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
}

/// `{x mod n : x in set}` as a bitset; needs `n <= 128`.
fn residues(set: impl IntoIterator<Item = i64>, n: u64) -> u128 {
    set.into_iter()
        .fold(0, |acc, x| acc | 1u128 << x.rem_euclid(n as i64))
}

fn rotate(bits: u128, shift: u64, n: u64) -> u128 {
    let full = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    let s = shift % n;
    if s == 0 {
        return bits;
    }
    ((bits << s) | (bits >> (n - s))) & full
}

/// Whether `J - I` hits every nonzero residue mod `n`.
fn covers(i: &[usize], j: &[usize], n: u64) -> bool {
    let neg_i = residues(i.iter().map(|&x| -(x as i64)), n);
    let diffs = j
        .iter()
        .fold(0u128, |acc, &x| acc | rotate(neg_i, x as u64, n));
    let target = ((1u128 << n) - 1) & !1;
    diffs & target == target
}

impl PartitionCertificate {
    pub fn validate(&self, n: u64) -> Result<()> {
        let d = euler_phi(n)? as usize;
        let bad = |msg: String| Err(Error::InvalidCertificate(msg));
        if self.i.len() % 2 == 0 || self.j.len() % 2 == 0 {
            return bad(format!(
                "parts must have odd size, got {} and {}",
                self.i.len(),
                self.j.len()
            ));
        }
        let mut all: Vec<usize> = self.i.iter().chain(&self.j).copied().collect();
        all.sort_unstable();
        if all != (1..=d).collect::<Vec<_>>() {
            return bad(format!("parts do not partition 1..={d}"));
        }
        if n > 128 || !covers(&self.i, &self.j, n) {
            return bad(format!("J - I misses a nonzero residue mod {n}"));
        }
        Ok(())
    }
}

/// Exhaustive search with `1 in I`, smaller `I` first.
///
/// Swapping `I` and `J` negates `J - I`, which keeps the covering property,
/// so fixing `1 in I` loses nothing.
pub fn partition_search(n: u64) -> Result<Option<PartitionCertificate>> {
    if n < 7 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "partition search needs an odd n >= 7, got {n}"
        )));
    }
    let d = euler_phi(n)?;
    if d > MAX_SEARCH_DIM {
        return Err(Error::SearchBoundExceeded(format!(
            "phi({n}) = {d} exceeds {MAX_SEARCH_DIM}"
        )));
    }
    let d = d as usize;
    for size in (1..d).step_by(2) {
        // |I| |J| differences are needed to reach n - 1 residues
        if size * (d - size) < (n - 1) as usize {
            continue;
        }
        for rest in (2..=d).combinations(size - 1) {
            let i: Vec<usize> = std::iter::once(1).chain(rest).collect();
            let j: Vec<usize> = (1..=d).filter(|x| !i.contains(x)).collect();
            if covers(&i, &j, n) {
                return Ok(Some(PartitionCertificate { i, j }));
            }
        }
    }
    Ok(None)
}

/// The two averaged vectors of a certificate and their wedge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedWitnesses {
    pub w_i: WedgeVector,
    pub w_j: WedgeVector,
    /// Coefficient of `e_1 ^ ... ^ e_d` in `w_i ^ w_j`.
    pub top_coefficient: BigInt,
    /// `e_I ^ e_J = shuffle_sign * e_1 ^ ... ^ e_d`.
    pub shuffle_sign: i8,
}

fn orbit_sum(c: &crate::IntMatrix, start: WedgeVector, n: u64) -> Result<WedgeVector> {
    let mut total = WedgeVector::zero(start.dim());
    let mut current = start;
    for _ in 0..n {
        total.add_assign(&current);
        current = apply(c, &current)?;
    }
    Ok(total)
}

/// `sum_k Lambda(C_n^k) e_I` and the same for `J`, with their checks.
pub fn fixed_witnesses(n: u64, cert: &PartitionCertificate) -> Result<FixedWitnesses> {
    cert.validate(n)?;
    let c = cyclotomic_companion(n)?;
    let d = c.rows();
    let zero_based = |s: &[usize]| s.iter().map(|x| x - 1).collect::<Vec<_>>();
    let w_i = orbit_sum(&c, WedgeVector::basis(d, &zero_based(&cert.i)), n)?;
    let w_j = orbit_sum(&c, WedgeVector::basis(d, &zero_based(&cert.j)), n)?;
    for (name, w) in [("I", &w_i), ("J", &w_j)] {
        if w.is_zero() {
            return Err(Error::CrossCheck(format!("witness for {name} vanishes")));
        }
        if &apply(&c, w)? != w {
            return Err(Error::CrossCheck(format!(
                "witness for {name} is not fixed"
            )));
        }
    }
    // expected: w_I ^ w_J = n e_I ^ e_J
    let full: Vec<usize> = (0..d).collect();
    let e_ij = wedge(
        &WedgeVector::basis(d, &zero_based(&cert.i)),
        &WedgeVector::basis(d, &zero_based(&cert.j)),
    )?;
    let shuffle_sign: i8 = if e_ij.coefficient(&full) < BigInt::from(0) {
        -1
    } else {
        1
    };
    let top = wedge(&w_i, &w_j)?;
    let top_coefficient = top.coefficient(&full);
    if top != e_ij.scale(&BigInt::from(n)) {
        return Err(Error::CrossCheck(format!(
            "wedge of witnesses is {top_coefficient} e_1..e_d, expected {}",
            BigInt::from(n) * shuffle_sign
        )));
    }
    Ok(FixedWitnesses {
        w_i,
        w_j,
        top_coefficient,
        shuffle_sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_certificate_for_seven() {
        let cert = PartitionCertificate {
            i: vec![1, 2, 6],
            j: vec![3, 4, 5],
        };
        cert.validate(7).unwrap();
        let w = fixed_witnesses(7, &cert).unwrap();
        // 6 sits before 3, 4, 5: three transpositions
        assert_eq!(w.shuffle_sign, -1);
        assert_eq!(w.top_coefficient, BigInt::from(-7));
    }

    #[test]
    fn search_results() {
        let c7 = partition_search(7).unwrap().unwrap();
        c7.validate(7).unwrap();
        assert_eq!(partition_search(9).unwrap(), None);
        assert!(partition_search(11).unwrap().is_some());
        assert!(partition_search(8).is_err());
        assert!(matches!(
            partition_search(53),
            Err(Error::SearchBoundExceeded(_))
        ));
    }

    #[test]
    fn even_part_rejected() {
        let cert = PartitionCertificate {
            i: vec![1, 2],
            j: vec![3, 4, 5, 6],
        };
        assert!(matches!(
            cert.validate(7),
            Err(Error::InvalidCertificate(_))
        ));
        assert!(fixed_witnesses(7, &cert).is_err());
    }

    #[test]
    fn non_covering_rejected() {
        let cert = PartitionCertificate {
            i: vec![1, 2, 3],
            j: vec![4, 5, 6],
        };
        assert!(cert.validate(7).is_err());
    }

    #[test]
    fn certificate_json() {
        let cert = PartitionCertificate {
            i: vec![1, 2, 6],
            j: vec![3, 4, 5],
        };
        assert_eq!(
            serde_json::to_string(&cert).unwrap(),
            r#"{"I":[1,2,6],"J":[3,4,5]}"#
        );
    }
}
