//! Zero-energy lines, threshold curves and double-root curves at one lambda0.

use jacobi_seed::charexp::quartic_g4_1;
use jacobi_seed::regions::{drt_curves, near_separatrix_root, separatrices, threshold_curves};
use jacobi_seed::PotentialSpec;

fn main() -> jacobi_seed::Result<()> {
    let base = PotentialSpec::new(-0.3, 0.5, 1.0, 1.0)?;
    let l0 = 1.0;
    for m in 0..4 {
        let sep = separatrices(l0, m);
        let th = threshold_curves(&base, m);
        let drt = drt_curves(&base, m);
        println!(
            "m={m}: A line {:.3}, B line {:?}, C line {:?}, threshold a {:.4}, ad {:?}, bd {:?}",
            sep.a_line,
            sep.b_line,
            sep.c_line,
            th.mu_a(l0),
            drt.ad_mu(l0).ok(),
            drt.bd_mu(l0).ok()
        );
        let on = base.with_rays(l0, sep.a_line)?;
        println!("      free term on the A line: {:.2e}", quartic_g4_1(&on, m)[4]);
        let near = near_separatrix_root(l0, sep.a_line + 0.01, m)?;
        println!("      small root 0.01 above the A line: {near:.6}");
    }
    Ok(())
}
