//! Tangent polynomials and ray identifiers.
//!
//! A potential is fixed by the tangent polynomial
//! `T(z) = a2 z(z-1) + c0 (1-z) + c1 z` together with the zero-energy
//! exponent differences `lambda0` (at `z = 0`) and `mu0` (at infinity).
//! Everything downstream assumes the canonical scale `c1 = 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used to decide that `a2` vanishes (linear tangent polynomial).
pub const LINEAR_TOL: f64 = 1e-14;
/// Tolerance used to decide that `c0 = 1`.
pub const UNIT_C0_TOL: f64 = 1e-12;

/// Parameters as supplied by a user, before rescaling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RawParams {
    pub a2: f64,
    pub c0: f64,
    #[serde(default = "one")]
    pub c1: f64,
    #[serde(default)]
    pub lambda0: f64,
    pub mu0: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentPoly {
    pub a2: f64,
    pub c0: f64,
    pub c1: f64,
    /// `a2 - c0 - 1`
    pub d: f64,
    /// `d^2 - 4 c0`, the discriminant of `T` as a quadratic in `z`.
    pub delta_t: f64,
}

impl TangentPoly {
    pub fn new(a2: f64, c0: f64) -> Result<Self> {
        if !(c0 > 0.0) || !c0.is_finite() {
            return Err(Error::NonPositiveCoefficient("c0"));
        }
        if !a2.is_finite() {
            return Err(Error::NonPositiveCoefficient("a2"));
        }
        let d = a2 - c0 - 1.0;
        let tp = TangentPoly { a2, c0, c1: 1.0, d, delta_t: d * d - 4.0 * c0 };
        if !tp.is_linear() {
            let bound = 2.0 * c0.sqrt();
            if (d.abs() - bound).abs() <= 1e-14 * bound.max(1.0) {
                return Err(Error::DoubleRootTp);
            }
            if d.abs() < bound {
                return Err(Error::ComplexTpRoots { d, bound: -bound });
            }
        }
        let min = tp.min_on_interval();
        if !(min > 0.0) {
            return Err(Error::TpNotPositiveOnInterval(min));
        }
        Ok(tp)
    }

    pub fn is_linear(&self) -> bool {
        self.a2.abs() <= LINEAR_TOL
    }

    /// `T(z)` in the `d`-parametrization.
    pub fn eval(&self, z: f64) -> f64 {
        self.eval_split(z, 1.0 - z)
    }

    /// `T` evaluated from `z` and `w = 1 - z` supplied separately, which keeps
    /// full precision when `z` is extremely close to 1.
    pub fn eval_split(&self, z: f64, w: f64) -> f64 {
        -self.d * z * w + self.c0 * w * w + z * z
    }

    /// `T(z)` in the `(a2, c0, c1)` parametrization.
    pub fn eval_coeffs(&self, z: f64) -> f64 {
        self.a2 * z * (z - 1.0) + self.c0 * (1.0 - z) + self.c1 * z
    }

    /// `dT/dz` from `z` and `w = 1 - z`.
    pub fn deriv_split(&self, z: f64, w: f64) -> f64 {
        self.d * (z - w) - 2.0 * self.c0 * w + 2.0 * z
    }

    /// Coefficients of `T` as a quadratic in `z`, descending.
    pub fn quadratic(&self) -> [f64; 3] {
        [self.a2, self.c1 - self.c0 - self.a2, self.c0]
    }

    fn min_on_interval(&self) -> f64 {
        let [q2, q1, _] = self.quadratic();
        let mut min = self.c0.min(self.c1);
        if q2 != 0.0 {
            let zv = -q1 / (2.0 * q2);
            if zv > 0.0 && zv < 1.0 {
                min = min.min(self.eval_coeffs(zv));
            }
        }
        min
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RayIdentifiers {
    pub lambda0: f64,
    pub mu0: f64,
}

impl RayIdentifiers {
    pub fn new(lambda0: f64, mu0: f64) -> Result<Self> {
        if !(lambda0 >= 0.0) || !lambda0.is_finite() {
            return Err(Error::InvalidRay("lambda0 must be >= 0"));
        }
        if !(mu0 > 0.0) || !mu0.is_finite() {
            return Err(Error::InvalidRay("mu0 must be > 0"));
        }
        Ok(RayIdentifiers { lambda0, mu0 })
    }
}

/// One potential: canonical tangent polynomial plus ray identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialSpec {
    pub tp: TangentPoly,
    pub rays: RayIdentifiers,
}

impl PotentialSpec {
    pub fn new(a2: f64, c0: f64, lambda0: f64, mu0: f64) -> Result<Self> {
        Ok(PotentialSpec { tp: TangentPoly::new(a2, c0)?, rays: RayIdentifiers::new(lambda0, mu0)? })
    }

    /// Same tangent polynomial, different ray identifiers.
    pub fn with_rays(&self, lambda0: f64, mu0: f64) -> Result<Self> {
        Ok(PotentialSpec { tp: self.tp, rays: RayIdentifiers::new(lambda0, mu0)? })
    }

    pub fn a2(&self) -> f64 {
        self.tp.a2
    }
    pub fn c0(&self) -> f64 {
        self.tp.c0
    }
    pub fn d(&self) -> f64 {
        self.tp.d
    }
    pub fn lambda0(&self) -> f64 {
        self.rays.lambda0
    }
    pub fn mu0(&self) -> f64 {
        self.rays.mu0
    }

    /// `lambda0 = 0`: both asymptotes of the potential coincide.
    pub fn is_leveled(&self) -> bool {
        self.rays.lambda0 == 0.0
    }

    pub fn is_linear(&self) -> bool {
        self.tp.is_linear()
    }

    /// Linear tangent polynomial with `c0 = 1` (Rosen-Morse potential).
    pub fn is_rosen_morse(&self) -> bool {
        self.tp.is_linear() && (self.tp.c0 - 1.0).abs() <= UNIT_C0_TOL
    }

    pub fn to_raw(&self) -> RawParams {
        RawParams { a2: self.tp.a2, c0: self.tp.c0, c1: 1.0, lambda0: self.rays.lambda0, mu0: self.rays.mu0 }
    }
}

/// Validate raw parameters and rescale the tangent polynomial to `c1 = 1`.
pub fn canonicalize(raw: &RawParams) -> Result<PotentialSpec> {
    if !(raw.c0 > 0.0) {
        return Err(Error::NonPositiveCoefficient("c0"));
    }
    if !(raw.c1 > 0.0) {
        return Err(Error::NonPositiveCoefficient("c1"));
    }
    PotentialSpec::new(raw.a2 / raw.c1, raw.c0 / raw.c1, raw.lambda0, raw.mu0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::arb_tp;
    use proptest::prelude::*;

    fn raw(a2: f64, c0: f64, c1: f64, lambda0: f64, mu0: f64) -> RawParams {
        RawParams { a2, c0, c1, lambda0, mu0 }
    }

    #[test]
    fn e1_spec_derived_fields() {
        let s = canonicalize(&raw(0.0, 0.25, 1.0, 0.0, 8.0)).unwrap();
        assert_eq!(s.d(), -1.25);
        assert_eq!(s.tp.delta_t, 0.5625);
        // discriminant of T(z) = a2 z^2 + (1 - a2 - c0) z + c0
        let [q2, q1, q0] = s.tp.quadratic();
        assert_eq!(q1 * q1 - 4.0 * q2 * q0, 0.5625);
    }

    #[test]
    fn rescales_to_unit_c1() {
        let s = canonicalize(&raw(0.0, 0.5, 2.0, 1.0, 4.0)).unwrap();
        assert_eq!(s.c0(), 0.25);
        assert_eq!(s.tp.c1, 1.0);
        assert_eq!(s.a2(), 0.0);
        assert_eq!(s.lambda0(), 1.0);
    }

    #[test]
    fn rejects_complex_roots() {
        let e = canonicalize(&raw(0.5, 0.25, 1.0, 0.0, 3.0)).unwrap_err();
        assert!(matches!(e, Error::ComplexTpRoots { .. }));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(canonicalize(&raw(0.0, 0.0, 1.0, 0.0, 3.0)), Err(Error::NonPositiveCoefficient("c0")));
        assert_eq!(canonicalize(&raw(0.0, 1.0, -1.0, 0.0, 3.0)), Err(Error::NonPositiveCoefficient("c1")));
        assert!(canonicalize(&raw(0.0, 1.0, 1.0, -1.0, 3.0)).is_err());
        assert!(canonicalize(&raw(0.0, 1.0, 1.0, 0.0, 0.0)).is_err());
        assert_eq!(canonicalize(&raw(0.25, 0.25, 1.0, 0.0, 3.0)).unwrap_err(), Error::DoubleRootTp);
    }

    #[test]
    fn endpoint_values() {
        let s = PotentialSpec::new(-0.7, 0.4, 0.3, 2.0).unwrap();
        assert_eq!(s.tp.eval(0.0), 0.4);
        assert_eq!(s.tp.eval(1.0), 1.0);
        let e1 = PotentialSpec::new(0.0, 0.25, 0.0, 8.0).unwrap();
        assert!((e1.tp.eval(0.5) - 0.625).abs() < 1e-15);
    }

    #[test]
    fn families() {
        assert!(PotentialSpec::new(0.0, 1.0, 1.0, 4.0).unwrap().is_rosen_morse());
        assert!(PotentialSpec::new(0.0, 0.3, 1.0, 4.0).unwrap().is_linear());
        assert!(PotentialSpec::new(0.0, 0.3, 0.0, 4.0).unwrap().is_leveled());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn parametrizations_agree(tp in arb_tp(), z in 0.0f64..1.0) {
            let scale = 1.0 + tp.a2.abs() + tp.c0;
            prop_assert!((tp.eval(z) - tp.eval_coeffs(z)).abs() <= 1e-14 * scale);
            prop_assert!(tp.eval(z) > 0.0);
        }

        #[test]
        fn delta_is_discriminant(tp in arb_tp()) {
            let [q2, q1, q0] = tp.quadratic();
            let disc = q1 * q1 - 4.0 * q2 * q0;
            prop_assert!((disc - tp.delta_t).abs() <= 1e-14 * (1.0 + tp.d * tp.d + 4.0 * tp.c0));
            prop_assert!(tp.is_linear() || tp.delta_t > 0.0);
        }
    }
}
