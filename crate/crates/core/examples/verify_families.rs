//! Randomized closed-form checks for every family.

use jacobi_seed::verify::{run_family, Family};

fn main() -> jacobi_seed::Result<()> {
    for f in Family::ALL {
        let r = run_family(f, 1, 200)?;
        println!("{:<9} pass={} skipped={}", f.name(), r.pass, r.skipped);
        for c in &r.checks {
            println!("    {:<58} {:>4} checked  max dev {:.2e}", c.name, c.checked, c.max_deviation);
        }
    }
    Ok(())
}
