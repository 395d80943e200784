//! Rank of integer matrices modulo word-sized primes.
//!
//! The rank mod `p` never exceeds the rank over Q, and agrees with it for
//! all but finitely many `p`. Used where exact elimination over Q is too
//! slow; callers pair it with an exact count before trusting the result.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::Matrix;

/// Primes below 2^31, so products of residues fit in a `u64`.
pub const RANK_PRIMES: [u64; 2] = [2_147_483_647, 1_000_000_007];

fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue below modulus")
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank of `m` reduced modulo the prime `p`.
pub fn rank_mod_p(m: &Matrix<BigInt>, p: u64) -> usize {
    assert!(p > 1 && p < (1 << 31), "modulus must be a prime below 2^31");
    let cols = m.cols();
    let mut rows: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| residue(x, p)).collect())
        .filter(|r: &Vec<u64>| r.iter().any(|&x| x != 0))
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pi) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pi);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for x in rows[rank][col..].iter_mut() {
            *x = *x * inv % p;
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &q) in row[col..].iter_mut().zip(&pivot[col..]) {
                if q != 0 {
                    *x = (*x + (p - f) * q) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Largest rank over [`RANK_PRIMES`]; a lower bound for the rank over Q.
pub fn multimodular_rank(m: &Matrix<BigInt>) -> usize {
    RANK_PRIMES
        .iter()
        .map(|&p| rank_mod_p(m, p))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::kernel::int_rank_q;

    fn int(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn small_prime_can_drop_rank() {
        let m = int(&[&[2, 0], &[0, 1]]);
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(multimodular_rank(&m), 2);
    }

    #[test]
    fn agrees_with_exact_rank() {
        let m = int(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[-1, 0, 1]]);
        assert_eq!(multimodular_rank(&m), int_rank_q(&m));
        assert_eq!(multimodular_rank(&int(&[&[-5, 3], &[10, -6]])), 1);
    }
}
