//! Counting formulas behind the lower bounds on the number of
//! non-isomorphic locally 1/2-biased functions.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Number of partitions of `j`, via Euler's pentagonal number recurrence.
pub fn count_partitions(j: usize) -> BigUint {
    partition_table(j).pop().unwrap()
}

/// `p(0), ..., p(max)`.
pub fn partition_table(max: usize) -> Vec<BigUint> {
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for m in 1..=max {
        let mut total = BigInt::zero();
        for k in 1.. {
            let k = k as i64;
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign_positive = k % 2 == 1;
            let mut term = p[m - g1].clone();
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                term += &p[m - g2];
            }
            if sign_positive {
                total += term;
            } else {
                total -= term;
            }
        }
        p.push(total);
    }
    p.into_iter()
        .map(|x| x.to_biguint().expect("partition numbers are nonnegative"))
        .collect()
}

/// Nonnegative integer solutions of `a_1 + 2 a_2 + ... + k a_k <= k`, by a
/// bounded coin-sum table.
pub fn count_solutions_leq(k: usize) -> BigUint {
    // ways[s] = solutions with sum exactly s using parts 1..=k
    let mut ways = vec![BigUint::zero(); k + 1];
    ways[0] = BigUint::one();
    for part in 1..=k {
        for s in part..=k {
            let add = ways[s - part].clone();
            ways[s] += add;
        }
    }
    ways.into_iter().sum()
}

pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    (0..r).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfBiasedBound {
    pub n: usize,
    /// `floor(n / 4)`
    pub k: usize,
    /// Solutions of `4 a_1 + 8 a_2 + ... + 4k a_k <= n`.
    pub exact: BigUint,
    /// `C(2 floor(sqrt k), floor(sqrt k))`.
    pub binomial_bound: BigUint,
}

/// Number of signatures (multisets of `h_i` sizes) that fit into `n`
/// coordinates, next to the closed-form binomial lower bound.
pub fn half_biased_lower_bound(n: usize) -> Result<HalfBiasedBound> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("bound needs even n >= 4, got {n}")));
    }
    let k = n / 4;
    let root = k.isqrt() as u64;
    Ok(HalfBiasedBound {
        n,
        k,
        exact: count_solutions_leq(k),
        binomial_bound: binomial(2 * root, root),
    })
}

/// Every multiset `{i_1 <= i_2 <= ...}` with `sum 4 i_t <= n`, in
/// lexicographic order.
pub fn half_biased_signatures(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for i in min..=remaining / 4 {
            cur.push(i);
            rec(remaining - 4 * i, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Multiplicity of eigenvalue 0 of the `n`-cube adjacency matrix, `C(n, n/2)`.
pub fn null_space_dimension(n: usize) -> Result<u64> {
    if !n.is_multiple_of(2) || n == 0 {
        return Err(Error::Precondition(format!("null space dimension needs even n >= 2, got {n}")));
    }
    let b = binomial(n as u64, n as u64 / 2);
    Ok(b.try_into().expect("fits for any cube dimension"))
}

/// Largest dimension for [`adjacency_kernel_dimension`].
pub const KERNEL_MAX_DIM: usize = 8;

/// `2^n - rank(A_n)` by fraction-free Gaussian elimination over the integers.
pub fn adjacency_kernel_dimension(n: usize) -> Result<u64> {
    if n == 0 || n > KERNEL_MAX_DIM {
        return Err(Error::DimensionOutOfRange { n, max: KERNEL_MAX_DIM });
    }
    let size = 1usize << n;
    let mut m: Vec<Vec<BigInt>> = (0..size)
        .map(|r| {
            (0..size)
                .map(|c| {
                    if (r ^ c).count_ones() == 1 {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    Ok((size - bareiss_rank(&mut m)) as u64)
}

fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}
