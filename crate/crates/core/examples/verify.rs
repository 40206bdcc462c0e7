//! Parse a subspace file and check it for constant rank.
//!
//!     cargo run --example verify -- path/to/subspace.txt

use constrank::SubspaceBasis;

const SAMPLE: &str = "\
2 2 2 GF(3)

2 2 GF(3)
1 0
0 1

2 2 GF(3)
0 2
1 0
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => SAMPLE.to_string(),
    };
    let space = SubspaceBasis::parse(&text)?;
    let profile = space.rank_profile()?;
    println!("{}x{} over {}, dim {}", space.rows(), space.cols(), space.field(), space.dim());
    for (rank, count) in profile.counts.iter().enumerate() {
        println!("  rank {rank}: {count}");
    }
    match profile.constant_rank() {
        Some(r) => println!("constant rank {r}"),
        None => {
            let r = space.basis()[0].rank();
            let check = space.is_constant_rank(r)?;
            let w = check.witness.expect("a witness exists when the check fails");
            println!("not constant rank: [{}] has rank {} but the first basis element has rank {r}", w.inline(), w.rank());
        }
    }
    Ok(())
}
