#![allow(dead_code)]

use constrank::{Elem, Field, MatGF, SubspaceBasis};
use rand::Rng;

pub fn gf(q: u32) -> Field {
    Field::with_order(q).unwrap()
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: &Field, rows: usize, cols: usize) -> MatGF {
    let entries = (0..rows * cols).map(|_| rng.gen_range(0..field.q()) as Elem).collect();
    MatGF::from_entries(field, rows, cols, entries).unwrap()
}

pub fn random_invertible<R: Rng>(rng: &mut R, field: &Field, n: usize) -> MatGF {
    loop {
        let m = random_matrix(rng, field, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

/// Rank from the size of the solution set of `Ax = 0`, by listing every `x`.
pub fn rank_by_kernel_count(a: &MatGF) -> usize {
    let f = a.field();
    let q = f.q() as u64;
    let cols = a.cols();
    let mut zeros = 0u64;
    for index in 0..q.pow(cols as u32) {
        let mut x = Vec::with_capacity(cols);
        let mut rest = index;
        for _ in 0..cols {
            x.push((rest % q) as Elem);
            rest /= q;
        }
        let annihilated = (0..a.rows()).all(|i| {
            (0..cols).fold(0, |acc, j| f.add(acc, f.mul(a.get(i, j), x[j]))) == 0
        });
        if annihilated {
            zeros += 1;
        }
    }
    let mut nullity = 0;
    let mut size = 1u64;
    while size < zeros {
        size *= q;
        nullity += 1;
    }
    assert_eq!(size, zeros, "kernel size must be a power of q");
    cols - nullity
}

/// A random `k`-dimensional subspace of the span of `space`, moved by a
/// random equivalence `X -> P X Q`.
pub fn harvest<R: Rng>(rng: &mut R, space: &SubspaceBasis, k: usize) -> SubspaceBasis {
    let f = space.field().clone();
    let d = space.dim();
    let coeffs = loop {
        let c = random_matrix(rng, &f, k, d);
        if c.rank() == k {
            break c;
        }
    };
    let mats: Vec<MatGF> = (0..k).map(|i| space.combine(coeffs.row(i))).collect();
    let p = random_invertible(rng, &f, space.rows());
    let q = random_invertible(rng, &f, space.cols());
    SubspaceBasis::new(&mats).unwrap().transform(&p, &q).unwrap()
}
