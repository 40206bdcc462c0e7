//! The kernel-image property (Bu lies in im A for u in ker A) and the
//! kernel-slice scan, on a construction over GF(3) and on a constant rank 2
//! space of 3x3 matrices over GF(2) where the property fails.

use constrank::analysis::{check_image_of_kernel, check_lemma2_bound, ScanOptions};
use constrank::construct::truncated_construction;
use constrank::search::{search_constant_rank, SearchParams};
use constrank::{Field, SubspaceBasis};

fn show(label: &str, space: &SubspaceBasis) -> Result<(), constrank::Error> {
    let square = space.pad_to_square()?;
    let lemma1 = check_image_of_kernel(&square, ScanOptions::default())?;
    let slices = check_lemma2_bound(&square)?;
    println!("{label}: dim {}, rank {}", square.dim(), slices.rank);
    println!(
        "  kernel-image property: {} ({} elements, {} violations)",
        lemma1.holds, lemma1.elements_checked, lemma1.violation_count
    );
    if let Some(v) = lemma1.violations.first() {
        println!("  e.g. A = [{}], u = [{}], B = [{}]", v.a.inline(), v.u.inline(), v.b.inline());
    }
    println!(
        "  min slice dimension {} (bound {}, applicable {})",
        slices.min_r_u, slices.bound, slices.applicable
    );
    Ok(())
}

fn main() -> Result<(), constrank::Error> {
    let f3 = Field::prime(3)?;
    show("GF(3) 3x3 rank 2", &truncated_construction(&f3, 3, 3, 2)?)?;

    let f2 = Field::prime(2)?;
    let found = search_constant_rank(&SearchParams::new(&f2, 3, 3, 2, 4))?;
    let witness = found.witness.expect("a 4-dimensional rank 2 space exists");
    show("GF(2) 3x3 rank 2, found by search", &witness)?;
    Ok(())
}
