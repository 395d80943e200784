//! Smith normal form over a Euclidean domain.
//!
//! Elimination always pivots on the entry of least absolute value in the
//! current row and column, which keeps intermediate entries small on the
//! matrices this crate produces.

use super::Matrix;
use crate::scalar::EuclideanDomain;

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal, its diagonal
/// nonnegative and forming a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult<E> {
    pub u: Matrix<E>,
    pub d: Matrix<E>,
    pub v: Matrix<E>,
}

impl<E: EuclideanDomain> SnfResult<E> {
    /// The invariant factors `d_1 | d_2 | ...` (zeros included).
    pub fn invariant_factors(&self) -> Vec<E> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.invariant_factors()
            .iter()
            .take_while(|x| !x.is_zero())
            .count()
    }
}

fn add_row_multiple<E: EuclideanDomain>(m: &mut Matrix<E>, target: usize, src: usize, k: &E) {
    for j in 0..m.cols() {
        let v = m.get(target, j).clone() + k.clone() * m.get(src, j).clone();
        m.set(target, j, v);
    }
}

fn add_col_multiple<E: EuclideanDomain>(m: &mut Matrix<E>, target: usize, src: usize, k: &E) {
    for i in 0..m.rows() {
        let v = m.get(i, target).clone() + k.clone() * m.get(i, src).clone();
        m.set(i, target, v);
    }
}

fn negate_row<E: EuclideanDomain>(m: &mut Matrix<E>, r: usize) {
    for j in 0..m.cols() {
        let v = -m.get(r, j).clone();
        m.set(r, j, v);
    }
}

pub fn smith_normal_form<E: EuclideanDomain>(m: &Matrix<E>) -> SnfResult<E> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = Matrix::<E>::identity(rows);
    let mut v = Matrix::<E>::identity(cols);

    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let e = a.get(i, j);
                if !e.is_zero() && best.map_or(true, |(bi, bj)| e.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // bring the smallest nonzero entry of row t / column t to the pivot
            let mut pos = (t, t);
            for i in t + 1..rows {
                let e = a.get(i, t);
                if !e.is_zero() && e.abs() < a.get(pos.0, pos.1).abs() {
                    pos = (i, t);
                }
            }
            for j in t + 1..cols {
                let e = a.get(t, j);
                if !e.is_zero() && e.abs() < a.get(pos.0, pos.1).abs() {
                    pos = (t, j);
                }
            }
            if pos.0 != t {
                a.swap_rows(t, pos.0);
                u.swap_rows(t, pos.0);
            } else if pos.1 != t {
                a.swap_cols(t, pos.1);
                v.swap_cols(t, pos.1);
            }

            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -(a.get(i, t).div_floor(&pivot));
                add_row_multiple(&mut a, i, t, &q);
                add_row_multiple(&mut u, i, t, &q);
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -(a.get(t, j).div_floor(&pivot));
                add_col_multiple(&mut a, j, t, &q);
                add_col_multiple(&mut v, j, t, &q);
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold a row with a non-multiple into row t and retry
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = E::one();
                    add_row_multiple(&mut a, t, i, &one);
                    add_row_multiple(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
    }
    SnfResult { u, d: a, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::Zero;

    fn int(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn check(m: &Matrix<BigInt>) -> SnfResult<BigInt> {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert_eq!(s.u.det().unwrap().magnitude(), &1u32.into());
        assert_eq!(s.v.det().unwrap().magnitude(), &1u32.into());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[0] >= BigInt::from(0));
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else {
                assert!(w[1].is_zero());
            }
        }
        s
    }

    #[test]
    fn already_diagonal() {
        let s = check(&int(&[&[3, 0], &[0, 6]]));
        assert_eq!(s.d, int(&[&[3, 0], &[0, 6]]));
    }

    #[test]
    fn two_by_two() {
        // d1 = gcd of entries = 2, d1 d2 = |det| = 8
        let s = check(&int(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.d, int(&[&[2, 0], &[0, 4]]));
    }

    #[test]
    fn identity_stays() {
        let s = check(&Matrix::identity(3));
        assert!(s.d.is_identity());
    }

    #[test]
    fn needs_divisibility_fix() {
        let s = check(&int(&[&[2, 0], &[0, 3]]));
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(1), BigInt::from(6)]
        );
    }

    #[test]
    fn rectangular_and_zero() {
        let s = check(&int(&[&[0, 0, 0], &[0, 0, 0]]));
        assert_eq!(s.rank(), 0);
        let s = check(&int(&[&[1, 2, 3], &[4, 5, 6]]));
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(1), BigInt::from(3)]
        );
    }

    #[test]
    fn machine_integer_instance_agrees() {
        let m = Matrix::from_rows(vec![vec![4i64, 6, 2], vec![8, 2, 0], vec![2, 2, 6]]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(&(&s.u * &m) * &s.v, s.d);
        let big = smith_normal_form(&m.map(|&x| BigInt::from(x)));
        let f: Vec<i64> = s.invariant_factors();
        let g: Vec<BigInt> = big.invariant_factors();
        assert_eq!(f.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(), g);
    }
}
