//! Exterior powers of `Z^d` with the lexicographic wedge basis.
//!
//! A basis element `e_{i_1} ^ ... ^ e_{i_l}`, `i_1 < ... < i_l`, is stored as
//! a bitmask (bit `i` set for index `i`, zero-based), which caps `d` at 64.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::IntMatrix;

pub const MAX_WEDGE_DIM: usize = 64;

pub fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | (1u64 << i))
}

pub fn indices_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// The `l`-subsets of `0..d` in lexicographic order, as bitmasks.
pub fn wedge_basis(d: usize, l: usize) -> Vec<u64> {
    (0..d).combinations(l).map(|c| mask_of(&c)).collect()
}

/// A sparse coordinate vector in `Lambda^* Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeVector {
    dim: usize,
    terms: BTreeMap<u64, BigInt>,
}

impl WedgeVector {
    pub fn zero(dim: usize) -> Self {
        assert!(
            dim <= MAX_WEDGE_DIM,
            "wedge dimension above {MAX_WEDGE_DIM}"
        );
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// `e_{i_1} ^ ... ^ e_{i_l}` for increasing zero-based indices.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        let mut w = Self::zero(dim);
        w.terms.insert(mask_of(indices), BigInt::one());
        w
    }

    /// The empty wedge, `1` in `Lambda^0`.
    pub fn one(dim: usize) -> Self {
        Self::basis(dim, &[])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<u64, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, indices: &[usize]) -> BigInt {
        self.terms
            .get(&mask_of(indices))
            .cloned()
            .unwrap_or_default()
    }

    fn add_term(&mut self, mask: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (&m, c) in &other.terms {
            self.add_term(m, c.clone());
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.dim);
        for (&m, c) in &self.terms {
            out.add_term(m, c * k);
        }
        out
    }

    /// `self ^ v` for a vector `v in Z^d`.
    ///
    /// `e_K ^ e_j = (-1)^{#{k in K : k > j}} e_{K + j}`.
    pub fn wedge_vector(&self, v: &[BigInt]) -> Self {
        let mut out = Self::zero(self.dim);
        for (&m, c) in &self.terms {
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() || m >> j & 1 == 1 {
                    continue;
                }
                let above = (m >> j).count_ones();
                let term = c * vj;
                out.add_term(m | 1 << j, if above % 2 == 1 { -term } else { term });
            }
        }
        out
    }

    /// Homogeneous coordinates in [`wedge_basis`] order.
    pub fn coordinates(&self, l: usize) -> Vec<BigInt> {
        wedge_basis(self.dim, l)
            .into_iter()
            .map(|m| self.terms.get(&m).cloned().unwrap_or_default())
            .collect()
    }
}

/// `a ^ b`; a product of two basis elements picks up the sign of the
/// shuffle that sorts the concatenated index list.
pub fn wedge(a: &WedgeVector, b: &WedgeVector) -> Result<WedgeVector> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch("wedge factors".into()));
    }
    let mut out = WedgeVector::zero(a.dim);
    for (&ma, ca) in &a.terms {
        for (&mb, cb) in &b.terms {
            if ma & mb != 0 {
                continue;
            }
            // inversions: pairs (k in a, j in b) with k > j
            let inversions: u32 = indices_of(mb)
                .into_iter()
                .map(|j| (ma >> j).count_ones())
                .sum();
            let term = ca * cb;
            out.add_term(ma | mb, if inversions % 2 == 1 { -term } else { term });
        }
    }
    Ok(out)
}

fn columns(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..a.cols()).map(|j| a.column(j)).collect()
}

/// `Lambda(a) w`, term by term as `a e_{i_1} ^ ... ^ a e_{i_l}`.
pub fn apply(a: &IntMatrix, w: &WedgeVector) -> Result<WedgeVector> {
    if !a.is_square() || a.rows() != w.dim {
        return Err(Error::DimensionMismatch("exterior power action".into()));
    }
    let cols = columns(a);
    let mut cache: HashMap<u64, WedgeVector> = HashMap::new();
    let mut out = WedgeVector::zero(w.dim);
    for (&m, c) in &w.terms {
        let image = cache
            .entry(m)
            .or_insert_with(|| wedge_columns(&cols, w.dim, m));
        out.add_assign(&image.scale(c));
    }
    Ok(out)
}

fn wedge_columns(cols: &[Vec<BigInt>], dim: usize, mask: u64) -> WedgeVector {
    indices_of(mask)
        .into_iter()
        .fold(WedgeVector::one(dim), |acc, i| acc.wedge_vector(&cols[i]))
}

/// Matrix of `Lambda^l(a)` on the lexicographic basis; entry `(K, L)` is the
/// minor of `a` on rows `K` and columns `L`.
pub fn exterior_power_matrix(a: &IntMatrix, l: usize) -> Result<IntMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let d = a.rows();
    if l > d {
        return Err(Error::InvalidArgument(format!(
            "exterior degree {l} exceeds dimension {d}"
        )));
    }
    if d > MAX_WEDGE_DIM {
        return Err(Error::InvalidArgument(format!(
            "dimension {d} above {MAX_WEDGE_DIM}"
        )));
    }
    let cols = columns(a);
    let basis = wedge_basis(d, l);
    let image_cols: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|&m| wedge_columns(&cols, d, m).coordinates(l))
        .collect();
    IntMatrix::from_columns(basis.len(), &image_cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int_matrix;

    #[test]
    fn degree_zero_one_and_top() {
        let a = int_matrix(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, -1]]);
        assert_eq!(exterior_power_matrix(&a, 0).unwrap(), int_matrix(&[&[1]]));
        assert_eq!(exterior_power_matrix(&a, 1).unwrap(), a);
        let top = exterior_power_matrix(&a, 3).unwrap();
        assert_eq!(top.get(0, 0), &a.det().unwrap());
        assert!(exterior_power_matrix(&a, 4).is_err());
    }

    #[test]
    fn identity_power_is_identity() {
        let m = exterior_power_matrix(&IntMatrix::identity(4), 2).unwrap();
        assert!(m.is_identity());
        assert_eq!(m.rows(), 6);
    }

    #[test]
    fn entries_are_minors() {
        let a = int_matrix(&[&[1, 2, 0], &[3, 4, 5], &[0, 1, 6]]);
        let m = exterior_power_matrix(&a, 2).unwrap();
        // basis order {0,1}, {0,2}, {1,2}; entry (K, L) = det a[K, L]
        let minor = |r: [usize; 2], c: [usize; 2]| {
            a.get(r[0], c[0]) * a.get(r[1], c[1]) - a.get(r[0], c[1]) * a.get(r[1], c[0])
        };
        let sets = [[0, 1], [0, 2], [1, 2]];
        for (i, r) in sets.iter().enumerate() {
            for (j, c) in sets.iter().enumerate() {
                assert_eq!(m.get(i, j), &minor(*r, *c));
            }
        }
    }

    #[test]
    fn wedge_signs() {
        let e = |i| WedgeVector::basis(3, &[i]);
        let e01 = wedge(&e(0), &e(1)).unwrap();
        let e10 = wedge(&e(1), &e(0)).unwrap();
        assert_eq!(e01.coefficient(&[0, 1]), BigInt::one());
        assert_eq!(e10.coefficient(&[0, 1]), -BigInt::one());
        let e2_01 = wedge(&e(2), &e01).unwrap();
        assert_eq!(e2_01.coefficient(&[0, 1, 2]), BigInt::one());
        assert!(wedge(&e(1), &e(1)).unwrap().is_zero());
        // agrees with repeated right multiplication by vectors
        let v = [BigInt::from(0), BigInt::from(0), BigInt::from(1)];
        assert_eq!(e(1).wedge_vector(&v), wedge(&e(1), &e(2)).unwrap());
    }

    #[test]
    fn apply_matches_matrix() {
        let a = int_matrix(&[
            &[0, 0, 0, -1],
            &[1, 0, 0, -1],
            &[0, 1, 0, -1],
            &[0, 0, 1, -1],
        ]);
        let m = exterior_power_matrix(&a, 2).unwrap();
        for (j, &mask) in wedge_basis(4, 2).iter().enumerate() {
            let w = WedgeVector::basis(4, &indices_of(mask));
            assert_eq!(apply(&a, &w).unwrap().coordinates(2), m.column(j));
        }
    }
}
