//! The pruned search against brute-force enumeration of every subspace.

use constrank::search::{brute_force_census, gaussian_binomial, search_constant_rank, SearchParams};
use constrank::Field;

fn main() -> Result<(), constrank::Error> {
    println!("{:<24} {:>12} {:>8} {:>8}", "instance", "subspaces", "oracle", "search");
    for (q, m, n, r, d) in [(2, 2, 2, 2, 1), (2, 2, 2, 2, 2), (2, 2, 3, 2, 3), (3, 2, 2, 1, 2), (2, 3, 3, 2, 4), (4, 2, 2, 2, 2)] {
        let f = Field::with_order(q)?;
        let total = gaussian_binomial(q, (m * n) as u32, d as u32);
        let oracle = brute_force_census(&f, m, n, r, d)?;
        let search = search_constant_rank(&SearchParams::new(&f, m, n, r, d).exhaust(true))?;
        println!(
            "{:<24} {total:>12} {oracle:>8} {:>8}",
            format!("GF({q}) {m}x{n} r={r} dim={d}"),
            search.found_count
        );
    }
    Ok(())
}
