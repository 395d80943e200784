//! Row reduction over a field: reduced echelon form, rank and null spaces.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::Matrix;
use crate::scalar::Field;

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = (row..a.rows()).find(|&i| !a.get(i, col).is_zero()) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = F::one() / a.get(row, col).clone();
        for j in col..a.cols() {
            let v = a.get(row, j).clone() * inv.clone();
            a.set(row, j, v);
        }
        for i in 0..a.rows() {
            if i == row || a.get(i, col).is_zero() {
                continue;
            }
            let factor = a.get(i, col).clone();
            for j in col..a.cols() {
                let v = a.get(i, j).clone() - factor.clone() * a.get(row, j).clone();
                a.set(i, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).1.len()
}

/// Basis of the right null space, one vector per free column of the RREF.
///
/// Each basis vector has a 1 at its free column and zeros at the other free
/// columns; the list is empty iff `m` is injective.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![F::zero(); n];
            v[free] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free).clone();
            }
            v
        })
        .collect()
}

/// Null space of a rational matrix.
pub fn rat_kernel(m: &Matrix<BigRational>) -> Vec<Vec<BigRational>> {
    kernel(m)
}

/// Rank over the rationals of a rational matrix.
pub fn rank_q(m: &Matrix<BigRational>) -> usize {
    rank(m)
}

/// Rank over the rationals of an integer matrix.
pub fn int_rank_q(m: &Matrix<BigInt>) -> usize {
    rank(&to_rational(m))
}

pub fn to_rational(m: &Matrix<BigInt>) -> Matrix<BigRational> {
    m.map(|x| BigRational::from_integer(x.clone()))
}

/// Inverse over a field, `None` when singular.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            F::one()
        } else {
            F::zero()
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
}
