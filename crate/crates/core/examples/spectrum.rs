//! Bound levels from the grid eigensolver next to the type-c seed energies.

use jacobi_seed::regions::bound_count;
use jacobi_seed::spectrum::spec_spectrum;
use jacobi_seed::{enumerate_solutions, PotentialSpec, SolType};

fn main() -> jacobi_seed::Result<()> {
    let spec = PotentialSpec::new(0.0, 0.25, 0.0, 8.0)?;
    let s = spec_spectrum(&spec)?;
    println!("window [{:.1}, {:.1}], h = {:.4}", s.window.xmin, s.window.xmax, s.window.h);
    for (k, e) in s.levels.iter().enumerate() {
        let exact = enumerate_solutions(&spec, k as u32).into_iter().find(|x| x.sol_type == SolType::C).map(|x| x.eps);
        println!("level {k}: {e:.8}  seed energy {exact:?}");
    }
    println!("predicted count {}, Richardson disagreement {:.1e}", bound_count(&spec), s.disagreement);
    Ok(())
}
