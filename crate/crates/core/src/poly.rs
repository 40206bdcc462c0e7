//! Dense univariate polynomials over a [`Field`], stored constant term first.
//!
//! Only what field construction and the regular representation need:
//! remainder, modular product and irreducibility by trial division.

use crate::field::{Elem, Field};

/// Drop trailing zero coefficients.
pub fn trim(poly: &mut Vec<Elem>) {
    while poly.last() == Some(&0) {
        poly.pop();
    }
}

/// Degree of `poly`, `None` for the zero polynomial.
pub fn degree(poly: &[Elem]) -> Option<usize> {
    poly.iter().rposition(|&c| c != 0)
}

/// Remainder of `num` modulo `den`. `den` must be nonzero.
pub fn rem(field: &Field, num: &[Elem], den: &[Elem]) -> Vec<Elem> {
    let den_deg = degree(den).expect("division by the zero polynomial");
    let lead_inv = field.inv_nonzero(den[den_deg]);
    let mut out = num.to_vec();
    trim(&mut out);
    while let Some(deg) = degree(&out) {
        if deg < den_deg {
            break;
        }
        let factor = field.mul(out[deg], lead_inv);
        let shift = deg - den_deg;
        for (i, &d) in den[..=den_deg].iter().enumerate() {
            let sub = field.mul(factor, d);
            out[shift + i] = field.sub(out[shift + i], sub);
        }
        trim(&mut out);
    }
    out
}

/// Product of `a` and `b`, reduced modulo `modulus`.
pub fn mul_mod(field: &Field, a: &[Elem], b: &[Elem], modulus: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = field.add(prod[i + j], field.mul(x, y));
        }
    }
    rem(field, &prod, modulus)
}

/// The monic polynomial of degree `deg` whose lower coefficients are the
/// base-q digits of `index` (constant term least significant).
fn monic_from_index(field: &Field, deg: usize, mut index: u64) -> Vec<Elem> {
    let q = u64::from(field.q());
    let mut poly = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        poly.push((index % q) as Elem);
        index /= q;
    }
    poly.push(1);
    poly
}

/// Irreducibility by trial division against every monic polynomial of
/// degree at most half the degree of `poly`.
pub fn is_irreducible(field: &Field, poly: &[Elem]) -> bool {
    let Some(deg) = degree(poly) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    let q = u64::from(field.q());
    for div_deg in 1..=deg / 2 {
        let count = q.pow(div_deg as u32);
        for index in 0..count {
            let divisor = monic_from_index(field, div_deg, index);
            if degree(&rem(field, poly, &divisor)).is_none() {
                return false;
            }
        }
    }
    true
}

/// The irreducible monic polynomial of degree `deg` whose lower coefficients,
/// read as a base-q integer with the highest coefficient most significant,
/// are smallest.
pub fn smallest_irreducible(field: &Field, deg: usize) -> Option<Vec<Elem>> {
    let count = u64::from(field.q()).checked_pow(deg as u32)?;
    (0..count)
        .map(|index| monic_from_index(field, deg, index))
        .find(|poly| is_irreducible(field, poly))
}
