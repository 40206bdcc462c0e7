//! Exhaustive search for constant-rank spaces beyond dimension n.
//!
//!     cargo run --release --example search -- 4 4 2 5 8
//!
//! Arguments: m n rank dim [workers], over GF(2). Without arguments it looks
//! at 3x3 matrices of rank 2 and 3 in dimension 4.

use constrank::search::{search_constant_rank, SearchParams};
use constrank::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let f2 = Field::prime(2)?;
    let jobs = match args.as_slice() {
        [] => vec![(3, 3, 2, 4, 1), (3, 3, 3, 4, 1)],
        [m, n, r, d] => vec![(*m, *n, *r, *d, 1)],
        [m, n, r, d, w] => vec![(*m, *n, *r, *d, *w)],
        _ => return Err("usage: search [m n rank dim [workers]]".into()),
    };
    for (m, n, r, d, workers) in jobs {
        let out = search_constant_rank(&SearchParams::new(&f2, m, n, r, d).workers(workers))?;
        println!(
            "{m}x{n} rank {r} dim {d}: {} after {} nodes in {:.2?}",
            out.status.as_str(),
            out.nodes_explored,
            out.elapsed
        );
        if let Some(w) = out.witness {
            for b in w.basis() {
                println!("  [{}]", b.inline());
            }
        }
    }
    Ok(())
}
