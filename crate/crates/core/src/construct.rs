//! Dimension-n constant-rank subspaces from the field extension GF(q^n).

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::MatGF;
use crate::poly;
use crate::subspace::SubspaceBasis;

/// Largest `n · log2(q)` accepted by [`regular_representation`].
pub const MAX_EXTENSION_BITS: f64 = 24.0;

/// Multiplication operators of GF(q^n) = F[x]/(f) on the power basis
/// `1, β, ..., β^{n-1}`, where `f` is the smallest irreducible monic of
/// degree `n` over `F` and `β` its root. Basis element `i` is the matrix of
/// `y ↦ β^i y`; every nonzero element of the span is invertible.
pub fn regular_representation(field: &Field, n: usize) -> Result<SubspaceBasis> {
    if n == 0 {
        return Err(Error::ShapeViolation("extension degree must be positive".into()));
    }
    if n as f64 * f64::from(field.q()).log2() > MAX_EXTENSION_BITS {
        return Err(Error::OrderTooLarge(format!("{}^{n}", field.q())));
    }
    let modulus = poly::smallest_irreducible(field, n)
        .ok_or_else(|| Error::OrderTooLarge(format!("{}^{n}", field.q())))?;

    // powers[k] = β^k mod f for k < 2n - 1, padded to n coefficients
    let beta: Vec<Elem> = if n == 1 { vec![field.neg(modulus[0])] } else { vec![0, 1] };
    let mut powers: Vec<Vec<Elem>> = Vec::with_capacity(2 * n - 1);
    let mut current = vec![1 as Elem];
    for _ in 0..2 * n - 1 {
        let mut padded = current.clone();
        padded.resize(n, 0);
        powers.push(padded);
        current = poly::mul_mod(field, &current, &beta, &modulus);
    }

    let basis = (0..n)
        .map(|i| {
            let mut m = MatGF::zeros(field, n, n);
            for j in 0..n {
                for (k, &c) in powers[i + j].iter().enumerate() {
                    m.set(k, j, c);
                }
            }
            m
        })
        .collect();
    SubspaceBasis::from_independent(basis)
}

/// An `m × n` constant rank `r` subspace of dimension `n`: the top `r` rows
/// of each regular-representation matrix, followed by `m − r` zero rows.
/// The result is checked by full enumeration before it is returned.
pub fn truncated_construction(field: &Field, m: usize, n: usize, r: usize) -> Result<SubspaceBasis> {
    if !(1 <= r && r <= m && m <= n) {
        return Err(Error::ShapeViolation(format!(
            "need 1 <= r <= m <= n, got r={r}, m={m}, n={n}"
        )));
    }
    let full = regular_representation(field, n)?;
    let basis = full
        .basis()
        .iter()
        .map(|b| {
            let mut entries = b.entries()[..r * n].to_vec();
            entries.resize(m * n, 0);
            MatGF::from_entries(field, m, n, entries)
        })
        .collect::<Result<Vec<_>>>()?;
    let space = SubspaceBasis::from_independent(basis)
        .map_err(|e| Error::InternalVerificationFailed(format!("truncated basis: {e}")))?;
    if space.dim() != n {
        return Err(Error::InternalVerificationFailed(format!("dimension {} != {n}", space.dim())));
    }
    let check = space.is_constant_rank(r)?;
    if !check.holds {
        return Err(Error::InternalVerificationFailed(format!(
            "element {:?} does not have rank {r}",
            check.witness
        )));
    }
    Ok(space)
}
