//! Two- and three-step chains; the partner does not depend on the order of the factors.

use jacobi_seed::liouville::uniform_grid;
use jacobi_seed::susy::{crum_partner, isospectral_report, partner_result};
use jacobi_seed::{enumerate_solutions, PotentialSpec, SolType};

fn main() -> jacobi_seed::Result<()> {
    let spec = PotentialSpec::new(0.0, 0.25, 0.0, 8.0)?;
    let pick = |t, m| enumerate_solutions(&spec, m).into_iter().find(|s| s.sol_type == t).unwrap();
    let chain = [pick(SolType::A, 0), pick(SolType::B, 0), pick(SolType::B, 1)];

    let xs = uniform_grid(-5.0, 5.0, 2001);
    let p = crum_partner(&spec, &chain, &xs)?;
    let q = crum_partner(&spec, &[chain[2], chain[0], chain[1]], &xs)?;
    let gap = p.v_hat.iter().zip(&q.v_hat).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("three-step partner, reordering changes it by at most {gap:.1e}");

    let pr = partner_result(&spec, &chain[..2], 5)?;
    let r = isospectral_report(&pr);
    println!("two-step partner levels {:?}", pr.partner_spectrum);
    println!("isospectral: {} (max deviation {:.1e})", r.pass, r.max_deviation);
    Ok(())
}
