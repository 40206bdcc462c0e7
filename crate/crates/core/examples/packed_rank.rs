//! Rank over GF(2) with bit-packed rows against table elimination.

use std::time::Instant;

use constrank::{gf2, matrix, Elem, Field};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let f2 = Field::prime(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (rows, cols, count) = (8, 8, 200_000);
    let mats: Vec<Vec<Elem>> = (0..count)
        .map(|_| (0..rows * cols).map(|_| rng.gen_range(0..2)).collect())
        .collect();

    let start = Instant::now();
    let packed: Vec<usize> = mats.iter().map(|m| gf2::rank(m, rows, cols)).collect();
    let t_packed = start.elapsed();

    let start = Instant::now();
    let generic: Vec<usize> = mats
        .iter()
        .map(|m| matrix::rank_generic_in_place(&f2, &mut m.clone(), rows, cols))
        .collect();
    let t_generic = start.elapsed();

    assert_eq!(packed, generic);
    let mut hist = [0usize; 9];
    for r in packed {
        hist[r] += 1;
    }
    println!("{count} random {rows}x{cols} matrices, rank histogram {hist:?}");
    println!("packed {t_packed:.2?}, generic {t_generic:.2?}");
}
