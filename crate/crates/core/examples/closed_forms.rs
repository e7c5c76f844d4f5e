//! Closed-form families against the generic quartic solver.

use jacobi_seed::closedform::{al_solutions, ltp_solutions, rm_parameters, rm_solutions};
use jacobi_seed::{enumerate_solutions, PotentialSpec};

fn main() -> jacobi_seed::Result<()> {
    let leveled = PotentialSpec::new(-0.4, 0.6, 0.0, 9.5)?;
    println!("leveled, m = 2");
    for s in al_solutions(&leveled, 2)? {
        println!("  {:<4} lam1 = {:>12.6}  eps = {:>12.6}", s.label, s.sol.lam1, s.sol.eps);
    }

    let linear = PotentialSpec::new(0.0, 2.0, 6.0, 8.3)?;
    println!("linear tangent polynomial, m = 2");
    for s in ltp_solutions(&linear, 2)? {
        println!("  {:<4} lam1 = {:>12.6}  eps = {:>12.6}{}", s.label, s.sol.lam1, s.sol.eps, s.note.map(|n| format!("  ({n})")).unwrap_or_default());
    }

    let (l0, mu0) = (1.5, 7.0);
    let (a, b) = rm_parameters(l0, mu0);
    println!("Rosen-Morse A = {a:.4}, B = {b:.4}, m = 1");
    let spec = PotentialSpec::new(0.0, 1.0, l0, mu0)?;
    let generic = enumerate_solutions(&spec, 1);
    for s in rm_solutions(l0, mu0, 1)? {
        let g = generic.iter().map(|x| (x.lam1 - s.sol.lam1).abs()).fold(f64::INFINITY, f64::min);
        println!("  {:<4} lam1 = {:>12.6}  generic gap = {g:.1e}", s.label, s.sol.lam1);
    }
    Ok(())
}
