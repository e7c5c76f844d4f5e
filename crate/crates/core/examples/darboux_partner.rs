//! Single-step partners: isospectral, level-inserting and ground-deleting.

use jacobi_seed::susy::{isospectral_report, partner_result};
use jacobi_seed::{enumerate_solutions, PotentialSpec, SolType};

fn main() -> jacobi_seed::Result<()> {
    let spec = PotentialSpec::new(0.0, 0.25, 0.0, 8.0)?;
    for (t, m) in [(SolType::B, 1), (SolType::D, 0), (SolType::C, 0)] {
        let ff = enumerate_solutions(&spec, m).into_iter().find(|s| s.sol_type == t).unwrap();
        let pr = partner_result(&spec, &[ff], 5)?;
        let r = isospectral_report(&pr);
        println!("{}:{m} at eps = {:.3} ({:?})", t.letter(), ff.eps, pr.expected_change[0]);
        println!("  base    {:?}", pr.base_spectrum.iter().map(|e| format!("{e:.4}")).collect::<Vec<_>>());
        println!("  partner {:?}", pr.partner_spectrum.iter().map(|e| format!("{e:.4}")).collect::<Vec<_>>());
        println!("  pass = {}, max deviation {:.1e}", r.pass, r.max_deviation);
    }
    Ok(())
}
