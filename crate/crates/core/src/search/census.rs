//! Brute-force oracle: enumerate every subspace of the given dimension and
//! count the constant-rank ones.
//!
//! Shares nothing with the pruned search beyond field arithmetic: subspaces
//! come from pivot sets and free entries of reduced row echelon matrices, and
//! ranks use table elimination only (no packed GF(2) path).

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix;

/// Largest Gaussian binomial the oracle accepts by default.
pub const ORACLE_LIMIT: u64 = 10_000_000;

/// Number of `k`-dimensional subspaces of an `n`-dimensional space over GF(q).
pub fn gaussian_binomial(q: u32, n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let q = BigUint::from(q);
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow(n - i) - &one;
        den *= q.pow(i + 1) - &one;
    }
    num / den
}

/// Number of `dim`-dimensional constant rank `rank` subspaces of
/// `M_{rows×cols}(F)`, within [`ORACLE_LIMIT`].
pub fn brute_force_census(field: &Field, rows: usize, cols: usize, rank: usize, dim: usize) -> Result<u64> {
    brute_force_census_within(field, rows, cols, rank, dim, ORACLE_LIMIT)
}

pub fn brute_force_census_within(
    field: &Field,
    rows: usize,
    cols: usize,
    rank: usize,
    dim: usize,
    limit: u64,
) -> Result<u64> {
    if rows == 0 || cols == 0 || rank == 0 || rank > rows.min(cols) || dim == 0 {
        return Err(Error::ShapeViolation(format!(
            "census needs positive shape, 1 <= rank <= min(m, n) and dim >= 1 (got {rows}x{cols}, rank {rank}, dim {dim})"
        )));
    }
    let len = rows * cols;
    let total = gaussian_binomial(field.q(), len as u32, dim as u32);
    if total.to_u64().is_none_or(|t| t > limit) {
        return Err(Error::BudgetExceeded(format!(
            "[{len} choose {dim}]_{} = {total} subspaces exceed {limit}",
            field.q()
        )));
    }
    if dim > len {
        return Ok(0);
    }

    let coeffs = monic_vectors(field, dim);
    let mut basis = vec![0 as Elem; dim * len];
    let mut element = vec![0 as Elem; len];
    let mut count = 0u64;
    let last = (field.q() - 1) as Elem;

    let mut pivots: Vec<usize> = (0..dim).collect();
    loop {
        // free positions: (row, column) right of the row's pivot, off all pivots
        let free: Vec<usize> = (0..dim)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..len)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| i * len + c)
            })
            .collect();
        basis.iter_mut().for_each(|x| *x = 0);
        for (i, &p) in pivots.iter().enumerate() {
            basis[i * len + p] = 1;
        }
        loop {
            if is_constant_rank(field, &basis, &coeffs, dim, rows, cols, rank, &mut element) {
                count += 1;
            }
            // odometer over the free entries
            let mut advanced = false;
            for &slot in free.iter().rev() {
                if basis[slot] == last {
                    basis[slot] = 0;
                } else {
                    basis[slot] += 1;
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
        if !next_combination(&mut pivots, len) {
            break;
        }
    }
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn is_constant_rank(
    field: &Field,
    basis: &[Elem],
    coeffs: &[Vec<Elem>],
    dim: usize,
    rows: usize,
    cols: usize,
    rank: usize,
    element: &mut [Elem],
) -> bool {
    let len = rows * cols;
    coeffs.iter().all(|c| {
        element.iter_mut().for_each(|x| *x = 0);
        for i in 0..dim {
            if c[i] == 0 {
                continue;
            }
            for (slot, &b) in element.iter_mut().zip(&basis[i * len..(i + 1) * len]) {
                *slot = field.add(*slot, field.mul(c[i], b));
            }
        }
        matrix::rank_generic_in_place(field, element, rows, cols) == rank
    })
}

/// All coefficient vectors whose first nonzero entry is 1.
fn monic_vectors(field: &Field, dim: usize) -> Vec<Vec<Elem>> {
    let q = field.q() as usize;
    let mut out = Vec::new();
    for lead in 0..dim {
        let tail = dim - lead - 1;
        for index in 0..q.pow(tail as u32) {
            let mut v = vec![0 as Elem; dim];
            v[lead] = 1;
            let mut rest = index;
            for j in (lead + 1..dim).rev() {
                v[j] = (rest % q) as Elem;
                rest /= q;
            }
            out.push(v);
        }
    }
    out
}

/// Next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(2, 4, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(2, 4, 3), BigUint::from(15u32));
        assert_eq!(gaussian_binomial(3, 4, 3), BigUint::from(40u32));
        assert_eq!(gaussian_binomial(2, 9, 4), BigUint::from(3_309_747u32));
        assert_eq!(gaussian_binomial(5, 3, 0), BigUint::one());
        assert_eq!(gaussian_binomial(5, 3, 4), BigUint::from(0u32));
    }

    #[test]
    fn census_examples() {
        // every invertible 2×2 matrix spans a distinct line over GF(2)
        assert_eq!(brute_force_census(&gf(2), 2, 2, 2, 1).unwrap(), 6);
        assert_eq!(brute_force_census(&gf(2), 2, 2, 1, 3).unwrap(), 0);
        assert_eq!(brute_force_census(&gf(2), 1, 1, 1, 1).unwrap(), 1);
    }

    #[test]
    fn census_counts_every_subspace_when_rank_is_free() {
        // 1×n: every nonzero row has rank 1, so all subspaces count
        assert_eq!(brute_force_census(&gf(2), 1, 4, 1, 2).unwrap(), 35);
        assert_eq!(brute_force_census(&gf(3), 1, 4, 1, 3).unwrap(), 40);
    }

    #[test]
    fn oracle_limit() {
        assert!(matches!(
            brute_force_census_within(&gf(2), 3, 3, 2, 4, 1000),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(matches!(brute_force_census(&gf(2), 2, 2, 3, 1), Err(Error::ShapeViolation(_))));
    }

    #[test]
    fn monic_vector_count() {
        assert_eq!(monic_vectors(&gf(3), 3).len(), 13);
        assert_eq!(monic_vectors(&gf(2), 4).len(), 15);
    }
}
