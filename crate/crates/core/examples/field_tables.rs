//! Build a few small fields and print their arithmetic tables.
//!
//!     cargo run --example field_tables -- 'GF(2^3)'

use constrank::Field;

fn main() -> Result<(), constrank::Error> {
    let descriptor = std::env::args().nth(1).unwrap_or_else(|| "GF(2^2)".to_string());
    let f: Field = descriptor.parse()?;
    println!("{f}: p = {}, degree = {}, modulus {:?}", f.p(), f.degree(), f.modulus());

    let elems: Vec<_> = f.elements().collect();
    for (name, op) in [("+", Field::add as fn(&Field, _, _) -> _), ("*", Field::mul)] {
        print!("\n{name:>3} |");
        for &b in &elems {
            print!("{b:>3}");
        }
        println!();
        println!("{}", "-".repeat(5 + 3 * elems.len()));
        for &a in &elems {
            print!("{a:>3} |");
            for &b in &elems {
                print!("{:>3}", op(&f, a, b));
            }
            println!();
        }
    }

    println!("\ninverses:");
    for &a in elems.iter().skip(1) {
        println!("  {a}^-1 = {}", f.inv(a)?);
    }
    Ok(())
}
