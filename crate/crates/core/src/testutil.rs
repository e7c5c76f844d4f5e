//! Shared proptest strategies.

use proptest::prelude::*;

use crate::params::{PotentialSpec, TangentPoly};

/// Valid tangent polynomials: `d < -2 sqrt(c0)` or `a2 = 0`.
pub fn arb_tp() -> impl Strategy<Value = TangentPoly> {
    (0.05f64..4.0, 0.01f64..3.0, any::<bool>()).prop_map(|(c0, gap, linear)| {
        if linear {
            TangentPoly::new(0.0, c0).unwrap()
        } else {
            let d = -2.0 * c0.sqrt() - gap;
            TangentPoly::new(d + c0 + 1.0, c0).unwrap()
        }
    })
}

pub fn arb_spec() -> impl Strategy<Value = PotentialSpec> {
    (arb_tp(), 0.0f64..4.0, 0.2f64..12.0).prop_map(|(tp, l0, mu)| PotentialSpec::new(tp.a2, tp.c0, l0, mu).unwrap())
}
