//! Potential on the line, its asymptotes and the change of variable.

use jacobi_seed::liouville::{exact_asymptotes, tail_window, PotentialProfile};
use jacobi_seed::PotentialSpec;

fn main() -> jacobi_seed::Result<()> {
    let spec = PotentialSpec::new(-0.6, 0.3, 1.4, 6.0)?;
    let (vm, vp) = exact_asymptotes(&spec);
    let (xl, xr) = tail_window(&spec, 1e-6)?;
    println!("V(-inf) = {vm:.6}, V(+inf) = {vp:.6}; tails settle outside [{xl:.3}, {xr:.3}]");
    let p = PotentialProfile::uniform(&spec, xl, xr, 21)?;
    for ((x, z), v) in p.x_samples.iter().zip(&p.z_samples).zip(&p.v_samples) {
        println!("{x:10.4} {z:10.6} {v:12.6}");
    }
    Ok(())
}
