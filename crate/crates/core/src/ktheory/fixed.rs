//! Ranks of the fixed submodules `(Lambda^l Z^d)^{Z_n}`.
//!
//! Two independent routes are computed. The trace route averages
//! `tr Lambda^l(a^k)` over the group, reading each trace off the
//! characteristic polynomial of `a^k`; it is exact and cheap at every size.
//! The kernel route takes the nullity of `Lambda^l(a) - I` and is only run
//! when `C(d, l)` is at most [`KERNEL_ROUTE_LIMIT`]; above
//! [`EXACT_RANK_LIMIT`] its rank is computed modulo large primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::wedge::exterior_power_matrix;
use crate::error::{Error, Result};
use crate::exactla::int_rank_q;
use crate::exactla::modular::multimodular_rank;
use crate::IntMatrix;

pub const KERNEL_ROUTE_LIMIT: usize = 1000;
pub const EXACT_RANK_LIMIT: usize = 120;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `e_l(a) = tr Lambda^l(a)` for `l = 0..=d`, from Faddeev-LeVerrier.
///
/// With `det(x I - a) = sum c_i x^i` the recursion `M_k = a M_{k-1} + c_{d-k+1} I`,
/// `c_{d-k} = -tr(a M_k) / k` stays integral; `e_l = (-1)^l c_{d-l}`.
pub fn exterior_traces(a: &IntMatrix) -> Result<Vec<BigInt>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let d = a.rows();
    let mut c = vec![BigInt::zero(); d + 1];
    c[d] = BigInt::one();
    let mut m = IntMatrix::zeros(d, d);
    let id = IntMatrix::identity(d);
    for k in 1..=d {
        m = &(a * &m) + &id.scale(&c[d - k + 1]);
        let t = (a * &m).trace()?;
        let (q, r) = t.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        c[d - k] = -q;
    }
    Ok((0..=d)
        .map(|l| {
            if l % 2 == 0 {
                c[d - l].clone()
            } else {
                -c[d - l].clone()
            }
        })
        .collect())
}

fn require_order(a: &IntMatrix, order: u64) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if order == 0 || !a.pow(order)?.is_identity() {
        return Err(Error::OrderMismatch { order });
    }
    Ok(())
}

/// `(1/n) sum_k tr Lambda^l(a^k)` for every `l`, all degrees at once.
pub fn fixed_ranks_by_trace(a: &IntMatrix, order: u64) -> Result<Vec<usize>> {
    require_order(a, order)?;
    let d = a.rows();
    let mut sums = vec![BigInt::zero(); d + 1];
    let mut power = IntMatrix::identity(d);
    for _ in 0..order {
        for (s, e) in sums.iter_mut().zip(exterior_traces(&power)?) {
            *s += e;
        }
        power = &power * a;
    }
    sums.into_iter()
        .enumerate()
        .map(|(l, s)| {
            let (q, r) = s.div_rem(&BigInt::from(order));
            if !r.is_zero() || q < BigInt::zero() {
                return Err(Error::CrossCheck(format!(
                    "averaged trace in degree {l} is {s}/{order}"
                )));
            }
            usize::try_from(q).map_err(|e| Error::CrossCheck(e.to_string()))
        })
        .collect()
}

/// Nullity of `Lambda^l(a) - I`.
pub fn fixed_rank_by_kernel(a: &IntMatrix, l: usize) -> Result<usize> {
    let m = exterior_power_matrix(a, l)?;
    let shifted = &m - &IntMatrix::identity(m.rows());
    let rank = if m.rows() <= EXACT_RANK_LIMIT {
        int_rank_q(&shifted)
    } else {
        multimodular_rank(&shifted)
    };
    Ok(m.rows() - rank)
}

/// Per-degree record with both routes where available.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRank {
    pub l: usize,
    pub rank: usize,
    /// `None` when `C(d, l)` exceeds the kernel-route limit.
    pub kernel_rank: Option<usize>,
}

pub fn fixed_rank_table(a: &IntMatrix, order: u64) -> Result<Vec<DegreeRank>> {
    let by_trace = fixed_ranks_by_trace(a, order)?;
    let d = a.rows();
    by_trace
        .into_iter()
        .enumerate()
        .map(|(l, rank)| {
            let kernel_rank = if binomial(d, l) <= KERNEL_ROUTE_LIMIT {
                Some(fixed_rank_by_kernel(a, l)?)
            } else {
                None
            };
            if kernel_rank.is_some_and(|k| k != rank) {
                return Err(Error::CrossCheck(format!(
                    "degree {l}: trace gives {rank}, kernel gives {}",
                    kernel_rank.unwrap_or_default()
                )));
            }
            Ok(DegreeRank {
                l,
                rank,
                kernel_rank,
            })
        })
        .collect()
}

/// Rank of `(Lambda^l Z^d)^{Z_n}` for the group generated by `a`.
pub fn fixed_rank(a: &IntMatrix, order: u64, l: usize) -> Result<usize> {
    if l > a.rows() {
        return Err(Error::InvalidArgument(format!(
            "exterior degree {l} exceeds dimension {}",
            a.rows()
        )));
    }
    let rank = fixed_ranks_by_trace(a, order)?[l];
    if binomial(a.rows(), l) <= KERNEL_ROUTE_LIMIT {
        let k = fixed_rank_by_kernel(a, l)?;
        if k != rank {
            return Err(Error::CrossCheck(format!(
                "degree {l}: trace gives {rank}, kernel gives {k}"
            )));
        }
    }
    Ok(rank)
}
