//! Count pairs (A, u) with Au = 0 two ways, and the divisibility argument
//! that rules out dimension n + 1 when q >= r + 1.

use constrank::analysis::{counting_report, q_adic_valuation, rearranged_lhs};
use constrank::construct::truncated_construction;
use constrank::Field;

fn main() -> Result<(), constrank::Error> {
    for (q, m, n, r) in [(2, 2, 2, 1), (3, 3, 4, 2), (4, 2, 3, 2), (5, 3, 3, 3)] {
        let f = Field::with_order(q)?;
        let s = truncated_construction(&f, m, n, r)?.pad_to_square()?;
        let c = counting_report(&s)?;
        println!(
            "GF({q}) {m}x{n} rank {r}: by matrices {}, by vectors {}, min slice dim {}",
            c.omega_by_elements, c.omega_by_vectors, c.rhs_min_exponent
        );
    }

    println!("\nq^(2n+1-r) - q^(n-r) - q^(n+1) + q^n and its q-adic valuation:");
    for (q, n, r) in [(2, 2, 1), (3, 4, 2), (5, 6, 5), (9, 10, 3)] {
        let lhs = rearranged_lhs(q, n, r);
        let v = q_adic_valuation(&lhs, q).expect("nonzero");
        println!("  q={q} n={n} r={r}: {lhs}, valuation {v} (n - r = {})", n - r);
    }
    Ok(())
}
