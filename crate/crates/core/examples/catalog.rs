//! Seed solutions of a leveled potential for the first few orders.

use jacobi_seed::{enumerate_solutions, PotentialSpec};

fn main() -> jacobi_seed::Result<()> {
    let spec = PotentialSpec::new(0.0, 0.25, 0.0, 8.0)?;
    println!("{:>2} {:>4} {:>10} {:>12} {:>12} {:>14}  nodeless", "m", "type", "tag", "lam0", "lam1", "eps");
    for m in 0..4 {
        for s in enumerate_solutions(&spec, m) {
            println!(
                "{:>2} {:>4} {:>10} {:>12.6} {:>12.6} {:>14.6}  {}",
                s.m,
                s.sol_type.letter(),
                s.tag.to_string(),
                s.lam0,
                s.lam1,
                s.eps,
                s.nodeless
            );
        }
    }
    Ok(())
}
