//! Dimension-n constant-rank spaces from the regular representation of
//! GF(q^n), and their truncations to m x n matrices of rank r.

use constrank::construct::{regular_representation, truncated_construction};
use constrank::Field;

fn main() -> Result<(), constrank::Error> {
    let f2 = Field::prime(2)?;
    let full = regular_representation(&f2, 3)?;
    println!("GF(8) as 3x3 matrices over GF(2):\n{full}");
    println!("rank profile {:?}\n", full.rank_profile()?.counts);

    for (q, m, n, r) in [(2, 3, 4, 2), (3, 2, 5, 1), (4, 3, 3, 2), (5, 2, 4, 2)] {
        let f = Field::with_order(q)?;
        let s = truncated_construction(&f, m, n, r)?;
        let profile = s.rank_profile()?;
        println!(
            "GF({q}) {m}x{n} rank {r}: dim {}, {} nonzero elements all of rank {r}: {}",
            s.dim(),
            profile.total() - 1,
            profile.constant_rank() == Some(r)
        );
    }
    Ok(())
}
