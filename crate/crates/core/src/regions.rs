//! Geometry of the `(lambda0, mu0)` plane for a fixed seed order.

use serde::Serialize;

use crate::charexp::{self, order_shift, SeedSolution, SolType};
use crate::error::{Error, Result};
use crate::params::PotentialSpec;
use crate::poly;

pub const AREA_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Area {
    A,
    B,
    C,
    D,
}

impl std::fmt::Display for Area {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Area::A => "A",
            Area::B => "B",
            Area::C => "C",
            Area::D => "D",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaResult {
    pub area: Area,
    /// within [`AREA_TOL`] of one of the three lines
    pub boundary: bool,
}

/// Area membership by the three strict inequalities, `D` otherwise.
pub fn area_of(lambda0: f64, mu0: f64, m: u32) -> AreaResult {
    let n = order_shift(m);
    let gaps = [mu0 - n - lambda0, n - mu0 - lambda0, lambda0 - mu0 - n];
    let boundary = gaps.iter().any(|g| g.abs() <= AREA_TOL);
    let area = if gaps[0] > AREA_TOL {
        Area::A
    } else if gaps[1] > AREA_TOL {
        Area::B
    } else if gaps[2] > AREA_TOL {
        Area::C
    } else {
        Area::D
    };
    AreaResult { area, boundary }
}

/// `mu0` on the three zero-energy lines at a given `lambda0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Separatrices {
    /// `lambda0 + 2m + 1` (A|D)
    pub a_line: f64,
    /// `2m + 1 - lambda0` (B|D), absent when not positive
    pub b_line: Option<f64>,
    /// `lambda0 - 2m - 1` (C|D), absent when not positive
    pub c_line: Option<f64>,
}

impl Separatrices {
    pub fn present(&self) -> Vec<f64> {
        std::iter::once(self.a_line).chain(self.b_line).chain(self.c_line).collect()
    }
}

pub fn separatrices(lambda0: f64, m: u32) -> Separatrices {
    let n = order_shift(m);
    let pos = |x: f64| if x > 0.0 { Some(x) } else { None };
    Separatrices { a_line: lambda0 + n, b_line: pos(n - lambda0), c_line: pos(lambda0 - n) }
}

/// Curves on which `-m` is a root of one of the quartics.
#[derive(Debug, Clone, Copy)]
pub struct ThresholdCurves {
    pub spec: PotentialSpec,
    pub m: u32,
}

pub fn threshold_curves(spec: &PotentialSpec, m: u32) -> ThresholdCurves {
    ThresholdCurves { spec: *spec, m }
}

impl ThresholdCurves {
    fn mf(&self) -> f64 {
        self.m as f64
    }

    /// Curve where `lam1 = -m` solves the `lam1` quartic.
    pub fn mu_a(&self, lambda0: f64) -> f64 {
        let (m, d, c0) = (self.mf(), self.spec.d(), self.spec.c0());
        (-d * m * m + 2.0 * m + 1.0 + lambda0 * lambda0 + 2.0 * (m + 1.0) * (c0 * m * m + lambda0 * lambda0).sqrt()).sqrt()
    }

    /// Same curve written relative to its `lambda0 = 0` value.
    pub fn mu_a_alt(&self, lambda0: f64) -> f64 {
        let (m, c0) = (self.mf(), self.spec.c0());
        let l2 = lambda0 * lambda0;
        (self.mu_a_start().powi(2) + l2 + 2.0 * ((l2 + c0 * m * m).sqrt() - c0.sqrt() * m) * (m + 1.0)).sqrt()
    }

    /// `mu_a(0)` from the factorized expression.
    pub fn mu_a_start(&self) -> f64 {
        let (m, d, c0) = (self.mf(), self.spec.d(), self.spec.c0());
        let n = order_shift(self.m);
        (n * n - m * (2.0 * (1.0 - c0.sqrt()) * (m + 1.0) + (d + 2.0) * m)).sqrt()
    }

    /// Curve where `lam0 = -m` solves the `lam0` quartic; needs `lambda0 <= m`.
    pub fn mu_b(&self, lambda0: f64) -> Result<f64> {
        let (m, a2, c0) = (self.mf(), self.spec.a2(), self.spec.c0());
        if lambda0 > m {
            return Err(Error::DomainExceeded("mu_b (lambda0 > m)"));
        }
        let s2 = (m * m - lambda0 * lambda0) / c0;
        Ok(((s2.sqrt() + m + 1.0).powi(2) - a2 * s2).sqrt())
    }

    pub fn mu_b_alt(&self, lambda0: f64) -> Result<f64> {
        let (m, a2, c0) = (self.mf(), self.spec.a2(), self.spec.c0());
        if lambda0 > m {
            return Err(Error::DomainExceeded("mu_b (lambda0 > m)"));
        }
        let s = ((m * m - lambda0 * lambda0) / c0).sqrt();
        Ok((self.mu_b_start().powi(2) + (a2 - 1.0) * lambda0 * lambda0 / c0 + 2.0 * (m + 1.0) * s
            - 2.0 * m * (m + 1.0) / c0.sqrt())
        .sqrt())
    }

    pub fn mu_b_start(&self) -> f64 {
        let (m, d, c0) = (self.mf(), self.spec.d(), self.spec.c0());
        let n = order_shift(self.m);
        (n * n - m * (2.0 * (1.0 - 1.0 / c0.sqrt()) * (m + 1.0) + (d / c0 + 2.0) * m)).sqrt()
    }
}

/// Curves on which `-2m-1` is a double root of one of the quartics.
#[derive(Debug, Clone, Copy)]
pub struct DrtCurves {
    pub spec: PotentialSpec,
    pub m: u32,
}

pub fn drt_curves(spec: &PotentialSpec, m: u32) -> DrtCurves {
    DrtCurves { spec: *spec, m }
}

impl DrtCurves {
    /// `mu0 = sqrt(lambda0^2 - (1 + d)(2m+1)^2)`: double root of the `lam1` quartic.
    pub fn ad_mu(&self, lambda0: f64) -> Result<f64> {
        let n = order_shift(self.m);
        let r = lambda0 * lambda0 - (1.0 + self.spec.d()) * n * n;
        if r <= 0.0 {
            return Err(Error::DomainExceeded("ad curve"));
        }
        Ok(r.sqrt())
    }

    /// `mu0 = sqrt((1 - a2)((2m+1)^2 - lambda0^2) / c0)`: double root of the `lam0` quartic.
    pub fn bd_mu(&self, lambda0: f64) -> Result<f64> {
        let n = order_shift(self.m);
        let r = (1.0 - self.spec.a2()) * (n * n - lambda0 * lambda0) / self.spec.c0();
        if lambda0 > n || r <= 0.0 {
            return Err(Error::DomainExceeded("bd curve"));
        }
        Ok(r.sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Prediction {
    Nodeless,
    HasNodes,
    Unknown,
}

/// Opposite-sign rule: a Jacobi polynomial whose two indexes have opposite
/// signs has no zeros inside `(-1, 1)` iff its order is below the magnitude of
/// the negative index.
pub fn nodeless_predict(sol: &SeedSolution) -> Prediction {
    let m = sol.m as f64;
    let decide = |neg: f64| {
        if (m - neg.abs()).abs() <= 1e-9 * (1.0 + m) {
            Prediction::Unknown
        } else if m < neg.abs() {
            Prediction::Nodeless
        } else {
            Prediction::HasNodes
        }
    };
    match sol.sol_type {
        SolType::A => decide(sol.lam1),
        SolType::B => decide(sol.lam0),
        SolType::C => {
            if sol.m == 0 {
                Prediction::Nodeless
            } else {
                Prediction::HasNodes
            }
        }
        SolType::D => Prediction::Unknown,
    }
}

/// First-order approximation of the quartic root near a separatrix.
pub fn near_separatrix_root(lambda0: f64, mu0: f64, m: u32) -> Result<f64> {
    let n = order_shift(m);
    let near = separatrices(lambda0, m)
        .present()
        .into_iter()
        .map(|s| (mu0 - s).abs() / s.max(1.0))
        .fold(f64::INFINITY, f64::min);
    if near > 0.05 {
        return Err(Error::NotNearSeparatrix);
    }
    let free = (mu0 * mu0 - (lambda0 - n).powi(2)) * (mu0 * mu0 - (lambda0 + n).powi(2));
    let linear = -4.0 * n * (mu0 * mu0 + lambda0 * lambda0 - n * n);
    if linear == 0.0 {
        return Err(Error::NotNearSeparatrix);
    }
    Ok(-free / linear)
}

/// Reading of the closed-form level count on the `lambda0 = 0` line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum CountingRule {
    /// number of `m >= 0` with `2m + 1 < mu0`
    #[default]
    Strict,
    /// `ceil((mu0 - 1) / 2) + 1`, the bracket read as a ceiling
    CeilPlusOne,
}

/// Number of bound levels.
pub fn bound_count(spec: &PotentialSpec) -> usize {
    bound_count_with(spec, CountingRule::Strict)
}

pub fn bound_count_with(spec: &PotentialSpec, rule: CountingRule) -> usize {
    let mu = spec.mu0();
    if spec.is_leveled() {
        return match rule {
            CountingRule::Strict => (0..).take_while(|&m| order_shift(m) < mu).count(),
            CountingRule::CeilPlusOne => ((mu - 1.0) / 2.0).ceil().max(-1.0) as usize + 1,
        };
    }
    let cap = mu.ceil() as u32 + 2;
    (0..=cap)
        .take_while(|&m| charexp::solution_pairs(spec, m).iter().any(|&(a, b)| a > 0.0 && b > 0.0))
        .count()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionReport {
    pub m: u32,
    pub area: Area,
    pub boundary: bool,
    pub separatrices: Separatrices,
    pub threshold_a: Option<f64>,
    pub threshold_b: Option<f64>,
    pub ad_mu: Option<f64>,
    pub bd_mu: Option<f64>,
    pub bound_count_estimate: usize,
}

pub fn region_report(spec: &PotentialSpec, m: u32) -> RegionReport {
    let l0 = spec.lambda0();
    let ar = area_of(l0, spec.mu0(), m);
    let th = threshold_curves(spec, m);
    let drt = drt_curves(spec, m);
    RegionReport {
        m,
        area: ar.area,
        boundary: ar.boundary,
        separatrices: separatrices(l0, m),
        threshold_a: Some(th.mu_a(l0)).filter(|x| x.is_finite()),
        threshold_b: th.mu_b(l0).ok().filter(|x| x.is_finite()),
        ad_mu: drt.ad_mu(l0).ok(),
        bd_mu: drt.bd_mu(l0).ok(),
        bound_count_estimate: bound_count(spec),
    }
}

/// Value and derivative of a polynomial at a point, scaled by their rounding sizes.
pub fn scaled_value_and_slope(c: &[f64], x: f64) -> (f64, f64) {
    let dc = poly::deriv(c);
    (poly::eval(c, x) / poly::scale(c, x), poly::eval(&dc, x) / poly::scale(&dc, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charexp::{enumerate_solutions, quartic_g4_0, quartic_g4_1, Nodeless, SequenceTag};
    use crate::testutil::arb_spec;
    use proptest::prelude::*;

    #[test]
    fn areas() {
        assert_eq!(area_of(0.5, 8.0, 2).area, Area::A);
        assert_eq!(area_of(1.0, 1.5, 1).area, Area::B);
        assert_eq!(area_of(10.0, 2.0, 1).area, Area::C);
        assert_eq!(area_of(2.0, 4.0, 1), AreaResult { area: Area::D, boundary: false });
        assert_eq!(area_of(2.0, 5.0, 1), AreaResult { area: Area::D, boundary: true });
    }

    #[test]
    fn lines() {
        let s = separatrices(0.0, 1);
        assert_eq!((s.a_line, s.b_line, s.c_line), (3.0, Some(3.0), None));
        let s = separatrices(2.0, 1);
        assert_eq!((s.a_line, s.b_line, s.c_line), (5.0, Some(1.0), None));
        assert_eq!(separatrices(0.0, 1).present().len(), 2);
    }

    #[test]
    fn free_term_vanishes_on_lines() {
        let tp = PotentialSpec::new(-0.9, 0.4, 0.0, 1.0).unwrap();
        for &(l0, m) in &[(0.7, 1u32), (4.5, 1), (2.0, 3)] {
            for mu in separatrices(l0, m).present() {
                let g = quartic_g4_1(&tp.with_rays(l0, mu).unwrap(), m);
                assert!(g[4].abs() <= 1e-12 * (1.0 + mu.powi(4)), "{g:?}");
            }
        }
    }

    #[test]
    fn threshold_start_values() {
        let s = PotentialSpec::new(-0.9, 0.4, 0.0, 1.0).unwrap();
        for m in 0..5 {
            let th = threshold_curves(&s, m);
            assert!((th.mu_a(0.0) - th.mu_a_start()).abs() < 1e-12);
            assert!((th.mu_b(0.0).unwrap() - th.mu_b_start()).abs() < 1e-12);
        }
        let lin = PotentialSpec::new(0.0, 0.6, 0.0, 1.0).unwrap();
        let th = threshold_curves(&lin, 3);
        for &l0 in &[0.0, 0.8, 2.5] {
            assert!((th.mu_a(l0) - ((l0 * l0 + 0.6 * 9.0f64).sqrt() + 4.0)).abs() < 1e-12);
        }
        assert!(matches!(th.mu_b(3.5), Err(Error::DomainExceeded(_))));
    }

    #[test]
    fn thresholds_are_roots() {
        let s = PotentialSpec::new(-0.9, 0.4, 0.0, 1.0).unwrap();
        for m in 1..4 {
            let th = threshold_curves(&s, m);
            for &l0 in &[0.0, 0.3, 0.9] {
                let on_a = s.with_rays(l0, th.mu_a(l0)).unwrap();
                let g = quartic_g4_1(&on_a, m);
                assert!(poly::eval(&g, -(m as f64)).abs() <= 1e-10 * poly::scale(&g, m as f64));
                let on_b = s.with_rays(l0, th.mu_b(l0).unwrap()).unwrap();
                let g = quartic_g4_0(&on_b, m);
                assert!(poly::eval(&g, -(m as f64)).abs() <= 1e-10 * poly::scale(&g, m as f64));
            }
        }
    }

    #[test]
    fn drt_curves_are_double_roots() {
        let s = PotentialSpec::new(-2.8, 0.5, 0.0, 1.0).unwrap();
        let m = 2;
        let n = order_shift(m);
        let drt = drt_curves(&s, m);
        let l0 = 1.5;
        let on_ad = s.with_rays(l0, drt.ad_mu(l0).unwrap()).unwrap();
        let (v, dv) = scaled_value_and_slope(&quartic_g4_1(&on_ad, m), -n);
        assert!(v.abs() < 1e-9 && dv.abs() < 1e-9);
        let on_bd = s.with_rays(l0, drt.bd_mu(l0).unwrap()).unwrap();
        let (v, dv) = scaled_value_and_slope(&quartic_g4_0(&on_bd, m), -n);
        assert!(v.abs() < 1e-9 && dv.abs() < 1e-9);
    }

    #[test]
    fn ad_curve_and_area_a() {
        // The ad curve enters Area A only when d < -2.
        let check = |a2: f64, c0: f64| {
            let s = PotentialSpec::new(a2, c0, 0.0, 1.0).unwrap();
            let drt = drt_curves(&s, 1);
            (0..200).any(|k| {
                let l0 = 0.05 * k as f64;
                drt.ad_mu(l0).map(|mu| area_of(l0, mu, 1).area == Area::A).unwrap_or(false)
            })
        };
        assert!(check(-2.5, 0.5)); // d = -4
        assert!(!check(0.0, 0.25)); // d = -1.25
        assert!(!check(-0.2, 0.5)); // d = -1.7, between -2 and -2 sqrt(c0)
    }

    #[test]
    fn predictions() {
        let e1 = PotentialSpec::new(0.0, 0.25, 0.0, 8.0).unwrap();
        let sols = enumerate_solutions(&e1, 1);
        assert_eq!(nodeless_predict(&sols[1]), Prediction::Nodeless);
        let mut s = sols[0];
        s.m = 0;
        assert_eq!(nodeless_predict(&s), Prediction::Nodeless);
        let rm_a = SeedSolution::from_pair(2, 2.5, -1.5).unwrap();
        assert_eq!(nodeless_predict(&rm_a), Prediction::HasNodes);
        assert_eq!(nodeless_predict(&sols[3]), Prediction::Unknown);
    }

    #[test]
    fn near_separatrix() {
        let (l0, m) = (1.0, 2);
        let mu = l0 + 5.0 + 0.01;
        let approx = near_separatrix_root(l0, mu, m).unwrap();
        assert!((approx - 0.01).abs() < 1e-3);
        assert_eq!(near_separatrix_root(l0, l0 + 5.0, m).unwrap(), 0.0);
        assert_eq!(near_separatrix_root(l0, 9.0, m), Err(Error::NotNearSeparatrix));
        let spec = PotentialSpec::new(-0.9, 0.4, l0, mu).unwrap();
        let roots = poly::real_roots(&quartic_g4_1(&spec, m)).unwrap();
        let nearest = roots.iter().copied().min_by(|a, b| (a - approx).abs().partial_cmp(&(b - approx).abs()).unwrap()).unwrap();
        assert!((nearest - approx).abs() <= 0.05 * nearest.abs());
    }

    #[test]
    fn counts() {
        let e1 = PotentialSpec::new(0.0, 0.25, 0.0, 8.0).unwrap();
        assert_eq!(bound_count(&e1), 4);
        assert_eq!(bound_count(&e1.with_rays(0.0, 1.5).unwrap()), 1);
        assert_eq!(bound_count(&e1.with_rays(0.0, 7.0).unwrap()), 3);
        assert_eq!(bound_count_with(&e1.with_rays(0.0, 7.0).unwrap(), CountingRule::CeilPlusOne), 4);
        assert!(bound_count(&e1.with_rays(0.5, 8.0).unwrap()) >= 3);
        // the generic route reproduces the strict count on the leveled line
        let shifted = e1.with_rays(1e-9, 8.0).unwrap();
        assert_eq!(bound_count(&shifted), 4);
    }

    #[test]
    fn primary_a_nodeless_window() {
        // c0 < 1 and -2 - (1 - sqrt c0)/m < d < -2 sqrt c0
        let (c0, m) = (0.36f64, 2u32);
        let d = -2.0 - 0.5 * (1.0 - c0.sqrt()) / m as f64;
        let tp = PotentialSpec::new(d + c0 + 1.0, c0, 0.0, 1.0).unwrap();
        let n = order_shift(m);
        for k in 0..200 {
            let l0 = 0.04 * (k % 20) as f64;
            let mu = l0 + n + 0.05 + 0.3 * (k / 20) as f64;
            let s = tp.with_rays(l0, mu).unwrap();
            let a: Vec<SeedSolution> = enumerate_solutions(&s, m)
                .into_iter()
                .filter(|x| x.sol_type == SolType::A && x.tag == SequenceTag::Primary)
                .collect();
            assert_eq!(a.len(), 1, "{s:?}");
            assert_ne!(a[0].nodeless, Nodeless::No);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn threshold_forms_agree(spec in arb_spec(), m in 0u32..6, frac in 0.0f64..1.0) {
            let th = threshold_curves(&spec, m);
            let l0 = frac * m as f64;
            prop_assert!((th.mu_a(l0) - th.mu_a_alt(l0)).abs() <= 1e-10 * (1.0 + th.mu_a(l0)));
            prop_assert!((th.mu_b(l0).unwrap() - th.mu_b_alt(l0).unwrap()).abs() <= 1e-10 * (1.0 + th.mu_b(l0).unwrap()));
            let r = th.mu_a(l0).powi(2) - l0 * l0;
            let m = m as f64;
            let closed = -spec.d() * m * m + 2.0 * m + 1.0 + 2.0 * (m + 1.0) * (spec.c0() * m * m + l0 * l0).sqrt();
            prop_assert!((r - closed).abs() <= 1e-10 * (1.0 + closed.abs()));
        }

        #[test]
        fn threshold_a_monotone(spec in arb_spec(), m in 1u32..6, a in 0.0f64..5.0, b in 0.001f64..2.0) {
            let th = threshold_curves(&spec, m);
            prop_assert!(th.mu_a(a + b) > th.mu_a(a));
        }

        #[test]
        fn threshold_a_below_line_when_starting_in_b(c0 in 0.05f64..4.0, m in 1u32..6, frac in 0.01f64..0.99, l0 in 0.0f64..30.0) {
            // d between -2 sqrt(c0) and the value that puts the start on the a|b line
            let mf = m as f64;
            let upper = (4.0 * mf + 2.0 - 2.0 * (mf + 1.0) * c0.sqrt()) / mf;
            prop_assume!(upper > 2.0 * c0.sqrt() + 1e-6);
            let d = -2.0 * c0.sqrt() - frac * (upper - 2.0 * c0.sqrt());
            let spec = PotentialSpec::new(d + c0 + 1.0, c0, 0.0, 1.0).unwrap();
            let th = threshold_curves(&spec, m);
            prop_assert_eq!(area_of(0.0, th.mu_a(0.0), m).area, Area::B);
            prop_assert!(th.mu_a(l0) < l0 + order_shift(m));
        }

        #[test]
        fn zero_root_on_each_line(spec in arb_spec(), m in 0u32..5) {
            for mu in separatrices(spec.lambda0(), m).present() {
                let s = spec.with_rays(spec.lambda0(), mu).unwrap();
                let roots = poly::real_roots(&quartic_g4_1(&s, m)).unwrap();
                prop_assert!(roots.iter().any(|r| r.abs() < 1e-9), "{:?}", roots);
            }
        }
    }
}
