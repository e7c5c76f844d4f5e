//! Area map of the (lambda0, mu0) plane for one order, printed as a character grid.

use jacobi_seed::regions::{area_of, Area};

fn main() {
    let m = 2;
    println!("m = {m}; rows mu0 from 14 down to 0.5, columns lambda0 from 0 to 12");
    for i in 0..28 {
        let mu0 = 14.0 - 0.5 * i as f64;
        let row: String = (0..60)
            .map(|j| {
                let l0 = 0.2 * j as f64;
                match area_of(l0, mu0, m).area {
                    Area::A => 'A',
                    Area::B => 'b',
                    Area::C => 'c',
                    Area::D => '.',
                }
            })
            .collect();
        println!("{mu0:5.1} {row}");
    }
}
