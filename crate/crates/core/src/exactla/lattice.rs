//! Integer lattices cut out by linear equations and congruences.
//!
//! Bases are returned as lists of column vectors, normalized to row-style
//! Hermite form (positive pivots, entries above each pivot reduced into
//! `[0, pivot)`), so equal lattices always produce identical output.

use super::snf::smith_normal_form;
use super::Matrix;
use crate::scalar::EuclideanDomain;

/// Canonical basis of the lattice spanned by linearly independent `vectors`.
pub(crate) fn hermite_basis<E: EuclideanDomain>(vectors: Vec<Vec<E>>) -> Vec<Vec<E>> {
    let Some(n) = vectors.first().map(Vec::len) else {
        return vectors;
    };
    let mut rows = vectors;
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == rows.len() {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (pivot_row..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .collect();
            let Some(&best) = nonzero
                .iter()
                .min_by(|&&a, &&b| rows[a][col].abs().cmp(&rows[b][col].abs()))
            else {
                break;
            };
            rows.swap(pivot_row, best);
            if nonzero.len() == 1 {
                break;
            }
            let pivot = rows[pivot_row][col].clone();
            for i in pivot_row + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&pivot);
                let (head, tail) = rows.split_at_mut(i);
                for (x, p) in tail[0].iter_mut().zip(&head[pivot_row]) {
                    *x = x.clone() - q.clone() * p.clone();
                }
            }
        }
        if rows[pivot_row][col].is_zero() {
            continue;
        }
        if rows[pivot_row][col].is_negative() {
            for x in rows[pivot_row].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot = rows[pivot_row][col].clone();
        for i in 0..pivot_row {
            let q = rows[i][col].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(pivot_row);
            for (x, p) in head[i].iter_mut().zip(&tail[0]) {
                *x = x.clone() - q.clone() * p.clone();
            }
        }
        pivot_row += 1;
    }
    rows
}

/// Basis of the saturated lattice `{x in Z^cols : m x = 0}`.
///
/// The trailing columns of the right transform of the Smith form span the
/// kernel; because that transform is unimodular the span is saturated.
pub fn int_kernel<E: EuclideanDomain>(m: &Matrix<E>) -> Vec<Vec<E>> {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let vectors = (r..m.cols()).map(|j| snf.v.column(j)).collect();
    hermite_basis(vectors)
}

/// Basis of `{x in Z^cols : m x = 0 (mod modulus)}`, a full-rank lattice
/// containing `modulus * Z^cols`.
///
/// With `u m v = d`, the substitution `x = v y` decouples the system into
/// `d_i y_i = 0 (mod N)`, solved by `y_i` in `(N / gcd(d_i, N)) Z`.
pub fn congruence_lattice<E: EuclideanDomain>(m: &Matrix<E>, modulus: &E) -> Vec<Vec<E>> {
    assert!(modulus.is_positive(), "congruence modulus must be positive");
    let snf = smith_normal_form(m);
    let diag = snf.invariant_factors();
    let vectors = (0..m.cols())
        .map(|j| {
            let step = match diag.get(j) {
                Some(d) => modulus.clone() / d.gcd(modulus),
                None => E::one(),
            };
            snf.v
                .column(j)
                .into_iter()
                .map(|x| x * step.clone())
                .collect()
        })
        .collect();
    hermite_basis(vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    fn int(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn iv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_is_saturated() {
        assert_eq!(int_kernel(&int(&[&[2, 2]])), vec![iv(&[1, -1])]);
    }

    #[test]
    fn kernel_of_reflection_fixed_axis() {
        // diag(1,-1,-1) - I
        let m = int(&[&[0, 0, 0], &[0, -2, 0], &[0, 0, -2]]);
        assert_eq!(int_kernel(&m), vec![iv(&[1, 0, 0])]);
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        assert_eq!(
            int_kernel(&int(&[&[0, 0], &[0, 0]])),
            vec![iv(&[1, 0]), iv(&[0, 1])]
        );
    }

    #[test]
    fn congruence_single_variable() {
        let b = congruence_lattice(&int(&[&[1]]), &BigInt::from(2));
        assert_eq!(b, vec![iv(&[2])]);
    }

    #[test]
    fn trivial_modulus_gives_standard_basis() {
        let b = congruence_lattice(&int(&[&[3, 5, 7]]), &BigInt::one());
        assert_eq!(b, vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])]);
    }

    #[test]
    fn congruence_index_counts_residues() {
        // x1 + x2 = 0 (mod 3) has 3 residue classes' worth of index
        let m = int(&[&[1, 1]]);
        let b = congruence_lattice(&m, &BigInt::from(3));
        for v in &b {
            let s = &v[0] + &v[1];
            assert!((s % BigInt::from(3)).is_zero());
        }
        let basis = Matrix::from_columns(2, &b).unwrap();
        assert_eq!(basis.det().unwrap().magnitude(), &3u32.into());
    }

    #[test]
    fn hermite_basis_is_canonical() {
        let a = hermite_basis(vec![iv(&[2, 4]), iv(&[1, -1])]);
        let b = hermite_basis(vec![iv(&[3, 3]), iv(&[1, -1])]);
        assert_eq!(a, b);
    }
}
