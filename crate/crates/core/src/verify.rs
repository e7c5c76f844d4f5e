//! Randomized equivalence checks between the closed forms and the generic solver.
//!
//! Each family draws parameters from a seeded generator, skips draws that sit
//! on a degeneracy the two routes resolve differently (merges, double roots,
//! zero-energy lines) and records the largest deviation seen.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::charexp::{enumerate_solutions, order_shift, quartic_g4_0, quartic_g4_1, SolType};
use crate::closedform::{self, Branch, DrtKind, LabeledSolution};
use crate::error::Result;
use crate::params::{PotentialSpec, UNIT_C0_TOL};
use crate::{poly, regions, seedsol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Al,
    Ltp,
    Rm,
    Drt,
    Crossing,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Al, Family::Ltp, Family::Rm, Family::Drt, Family::Crossing];

    pub fn name(self) -> &'static str {
        match self {
            Family::Al => "al",
            Family::Ltp => "ltp",
            Family::Rm => "rm",
            Family::Drt => "drt",
            Family::Crossing => "crossing",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| format!("unknown family '{s}'"))
    }
}

/// One named comparison inside a family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub tolerance: f64,
    pub max_deviation: f64,
    pub checked: usize,
    pub failures: usize,
}

impl Check {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Check { name, tolerance, max_deviation: 0.0, checked: 0, failures: 0 }
    }

    fn record(&mut self, dev: f64) {
        self.checked += 1;
        // NaN counts as a failure
        if !(dev <= self.tolerance) {
            self.failures += 1;
        }
        if dev.is_nan() {
            self.max_deviation = f64::NAN;
        } else if !self.max_deviation.is_nan() {
            self.max_deviation = self.max_deviation.max(dev);
        }
    }

    fn flag(&mut self, ok: bool) {
        self.record(if ok { 0.0 } else { f64::INFINITY });
    }

    pub fn pass(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyReport {
    pub family: Family,
    pub seed: u64,
    pub draws: usize,
    pub skipped: usize,
    pub checks: Vec<Check>,
    pub pass: bool,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs().max(b.abs()))
}

/// Largest deviation when every closed pair is matched to its nearest generic
/// pair; infinite if the sets differ in size.
fn set_deviation(closed: &[(f64, f64)], generic: &[(f64, f64)]) -> f64 {
    if closed.len() != generic.len() {
        return f64::INFINITY;
    }
    let one_way = |a: &[(f64, f64)], b: &[(f64, f64)]| {
        a.iter()
            .map(|p| b.iter().map(|q| rel(p.0, q.0).max(rel(p.1, q.1))).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(closed, generic).max(one_way(generic, closed))
}

/// Coefficient-wise deviation of `a * b` from a quartic, relative to its norm.
pub fn product_deviation(target: &[f64; 5], a: &[f64], b: &[f64]) -> f64 {
    let p = poly::padded(&poly::mul(a, b), 5);
    let scale = poly::norm(target).max(1.0);
    p.iter().zip(target).map(|(x, y)| (x - y).abs() / scale).fold(0.0, f64::max)
}

fn generic_pairs(spec: &PotentialSpec, m: u32) -> Vec<(f64, f64)> {
    enumerate_solutions(spec, m).iter().map(|s| (s.lam0, s.lam1)).collect()
}

fn closed_pairs(v: &[LabeledSolution]) -> Vec<(f64, f64)> {
    v.iter().map(|s| (s.sol.lam0, s.sol.lam1)).collect()
}

fn away_from_lines(spec: &PotentialSpec, m: u32) -> bool {
    let n = order_shift(m);
    let (l0, mu) = (spec.lambda0(), spec.mu0());
    [mu - n - l0, n - mu - l0, l0 - mu - n].iter().all(|g| g.abs() > 1e-3)
}

fn well_separated(q: &closedform::QuadFactor) -> bool {
    q.discriminant.abs() > 1e-6 * q.g1 * q.g1
}

fn labels_match(sols: &[LabeledSolution]) -> bool {
    sols.iter().all(|s| SolType::from_letter(s.label.chars().next().unwrap()) == Some(s.sol.sol_type))
}

/// Curved tangent polynomial `d = -2 sqrt(c0) - gap`, or the linear one.
fn draw_tp(rng: &mut ChaCha8Rng, linear: bool) -> (f64, f64) {
    let c0: f64 = rng.gen_range(0.05..4.0);
    if linear {
        (0.0, c0)
    } else {
        let gap: f64 = rng.gen_range(0.01..3.0);
        (-2.0 * c0.sqrt() - gap + c0 + 1.0, c0)
    }
}

/// Run one family with `draws` random parameter sets.
pub fn run_family(family: Family, seed: u64, draws: usize) -> Result<FamilyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (family as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let (checks, skipped) = match family {
        Family::Al => run_al(&mut rng, draws)?,
        Family::Ltp => run_ltp(&mut rng, draws)?,
        Family::Rm => run_rm(&mut rng, draws)?,
        Family::Drt => run_drt(&mut rng, draws)?,
        Family::Crossing => run_crossing(&mut rng, draws)?,
    };
    let pass = checks.iter().all(Check::pass);
    Ok(FamilyReport { family, seed, draws, skipped, checks, pass })
}

fn run_al(rng: &mut ChaCha8Rng, draws: usize) -> Result<(Vec<Check>, usize)> {
    let mut pairs = Check::new("closed pairs equal generic pairs", 1e-8);
    let mut fac1 = Check::new("g4_1 equals product of lam1 factors", 1e-10);
    let mut fac0 = Check::new("g4_0 equals product of lam0 factors", 1e-10);
    let mut ground = Check::new("ground identity residual", 1e-9);
    let mut place = Check::new("below-ground placement matches opposite-sign rule", 0.0);
    let mut skipped = 0;
    let mut done = 0;
    while done < draws {
        let linear = rng.gen_bool(0.5);
        let (a2, c0) = draw_tp(rng, linear);
        let mu = rng.gen_range(0.3..14.0);
        let m = rng.gen_range(0..6u32);
        let spec = PotentialSpec::new(a2, c0, 0.0, mu)?;
        if (c0 - 1.0).abs() <= UNIT_C0_TOL && a2 < 0.0 {
            continue;
        }
        done += 1;
        let f = closedform::al_factors(&spec, m)?;
        fac1.record(product_deviation(&quartic_g4_1(&spec, m), &f.plus1.coeffs(), &f.minus1.coeffs()));
        // the lam0 quartic carries an overall factor c0
        fac0.record(product_deviation(&quartic_g4_0(&spec, m), &poly::scaled(&f.plus0.coeffs(), c0), &f.minus0.coeffs()));
        let generic = generic_pairs(&spec, m);
        let n = order_shift(m);
        if !away_from_lines(&spec, m)
            || !generic.iter().all(|p| p.1.abs() > 1e-6 && (p.1 + n).abs() > 1e-4)
            || ![f.plus1, f.minus1].iter().all(well_separated)
        {
            skipped += 1;
            continue;
        }
        let sols = closedform::al_solutions(&spec, m)?;
        pairs.record(set_deviation(&closed_pairs(&sols), &generic));
        let c = closedform::al_factors(&spec, 0)?.plus1.roots().into_iter().filter(|&r| r > 0.0).fold(f64::NAN, f64::max);
        for s in sols.iter().filter(|s| matches!(s.sol.sol_type, SolType::A | SolType::B)) {
            let Ok(res) = closedform::al_ground_identity(&spec, &s.sol) else { continue };
            ground.record(res);
            let negative = if s.sol.sol_type == SolType::A { s.sol.lam1 } else { s.sol.lam0 };
            // below the ground level exactly when the order is below the negative index
            if (negative.abs() - m as f64).abs() > 1e-9 && (s.sol.lam1.abs() - c).abs() > 1e-9 {
                place.flag((negative.abs() > m as f64) == (s.sol.lam1.abs() > c));
            }
        }
    }
    Ok((vec![pairs, fac1, fac0, ground, place], skipped))
}

fn run_ltp(rng: &mut ChaCha8Rng, draws: usize) -> Result<(Vec<Check>, usize)> {
    let mut pairs = Check::new("closed pairs equal generic pairs", 1e-8);
    let mut fac = Check::new("g4_1 equals product of branch factors", 1e-10);
    let mut labels = Check::new("label letter matches sign type", 0.0);
    let mut thr = Check::new("threshold curves agree with generic forms", 1e-10);
    let mut skipped = 0;
    for _ in 0..draws {
        let c0 = loop {
            let c: f64 = rng.gen_range(0.05..4.0);
            if (c - 1.0).abs() > 1e-3 {
                break c;
            }
        };
        let l0 = rng.gen_range(0.0..8.0);
        let mu = rng.gen_range(0.3..14.0);
        let m = rng.gen_range(0..6u32);
        let spec = PotentialSpec::new(0.0, c0, l0, mu)?;
        let (qp, qm) = (closedform::ltp_factor(&spec, m, Branch::Plus), closedform::ltp_factor(&spec, m, Branch::Minus));
        fac.record(product_deviation(&quartic_g4_1(&spec, m), &qp.coeffs(), &qm.coeffs()));
        let lines = closedform::ltp_special_lines(&spec, m);
        let th = regions::threshold_curves(&spec, m);
        let lt = rng.gen_range(0.0..=m as f64);
        thr.record(rel(lines.threshold_a(lt), th.mu_a(lt)));
        if let (Ok(x), Ok(y)) = (lines.threshold_b(lt), th.mu_b(lt)) {
            thr.record(rel(x, y));
        }
        let sols = closedform::ltp_solutions(&spec, m)?;
        labels.flag(labels_match(&sols));
        let generic = generic_pairs(&spec, m);
        let n = order_shift(m);
        if !away_from_lines(&spec, m)
            || !well_separated(&qp)
            || !well_separated(&qm)
            || !generic.iter().all(|p| (p.1 + n).abs() > 1e-4 && (p.0 + n).abs() > 1e-4)
        {
            skipped += 1;
            continue;
        }
        pairs.record(set_deviation(&closed_pairs(&sols), &generic));
    }
    Ok((vec![pairs, fac, labels, thr], skipped))
}

fn run_rm(rng: &mut ChaCha8Rng, draws: usize) -> Result<(Vec<Check>, usize)> {
    let mut pairs = Check::new("closed pairs equal generic pairs", 1e-8);
    let mut labels = Check::new("label letter matches sign type", 0.0);
    let mut nodes = Check::new("nodeless ranges agree with zero counts", 0.0);
    let mut skipped = 0;
    let mut done = 0;
    while done < draws {
        let l0 = rng.gen_range(0.0..6.0);
        let mu = rng.gen_range(1.05..16.0);
        let m = rng.gen_range(0..8u32);
        let spec = PotentialSpec::new(0.0, 1.0, l0, mu)?;
        let (a, b) = closedform::rm_parameters(l0, mu);
        if (a - m as f64).abs() <= 1e-3 {
            continue;
        }
        done += 1;
        if !away_from_lines(&spec, m) || ((a - m as f64).abs() - b.sqrt()).abs() <= 1e-3 {
            skipped += 1;
            continue;
        }
        let sols = closedform::rm_solutions(l0, mu, m)?;
        pairs.record(set_deviation(&closed_pairs(&sols), &generic_pairs(&spec, m)));
        labels.flag(labels_match(&sols));
        for s in &sols {
            if let Some(pred) = closedform::rm_nodeless(a, b, m, s.label) {
                nodes.flag(pred == (seedsol::count_interior_zeros(&spec, &s.sol) == 0));
            }
        }
    }
    Ok((vec![pairs, labels, nodes], skipped))
}

fn run_drt(rng: &mut ChaCha8Rng, draws: usize) -> Result<(Vec<Check>, usize)> {
    let mut ad = Check::new("ad curve decompositions", 1e-9);
    let mut bd = Check::new("bd curve decompositions", 1e-9);
    let mut res = Check::new("decomposition pairs satisfy the identities", 1e-9);
    let mut skipped = 0;
    for _ in 0..draws {
        let (a2, c0) = draw_tp(rng, false);
        let m = rng.gen_range(0..5u32);
        let n = order_shift(m);
        let kind = if rng.gen_bool(0.5) { DrtKind::Ad } else { DrtKind::Bd };
        let l0 = match kind {
            DrtKind::Ad => rng.gen_range(0.0..6.0),
            DrtKind::Bd => rng.gen_range(0.0..1.0) * n,
        };
        let base = PotentialSpec::new(a2, c0, l0, 1.0)?;
        let curves = regions::drt_curves(&base, m);
        let mu = match kind {
            DrtKind::Ad => curves.ad_mu(l0),
            DrtKind::Bd => curves.bd_mu(l0),
        };
        let Ok(mu) = mu else {
            skipped += 1;
            continue;
        };
        let s = base.with_rays(l0, mu)?;
        let dec = closedform::drt_decomposition(&s, m, kind)?;
        let sq = [1.0, 2.0 * n, n * n];
        let (g_double, g_other) = match kind {
            DrtKind::Ad => (quartic_g4_1(&s, m), quartic_g4_0(&s, m)),
            DrtKind::Bd => (quartic_g4_0(&s, m), quartic_g4_1(&s, m)),
        };
        let dev = product_deviation(&g_double, &sq, &dec.cofactor.coeffs())
            .max(product_deviation(&g_other, &dec.partner_factor, &dec.partner_cofactor.coeffs()));
        match kind {
            DrtKind::Ad => ad.record(dev),
            DrtKind::Bd => bd.record(dev),
        }
        for &(p0, p1) in dec.pairs.iter().chain(&dec.double_root_pairs) {
            let sol = crate::charexp::SeedSolution::from_pair(m, p0, p1)?;
            let r = sol.identity_residuals(&s);
            res.record(r.iter().cloned().fold(0.0, f64::max));
        }
    }
    Ok((vec![ad, bd, res], skipped))
}

/// Relative coefficient deviation of `g4_1(l0 y)/l0^2` from `4 (2m+1)^2 A(y)`.
pub fn crossing_raw_deviation(spec_at: impl Fn(f64) -> Result<PotentialSpec>, m: u32, v: f64, l0: f64) -> Result<f64> {
    let s = spec_at(l0)?;
    let target = crossing_target(&s, m, v)?;
    Ok(coef_dev(&scaled_coeffs(&s, m, l0), &target))
}

/// Same deviation after removing the part linear in `l0` by comparing
/// `l0` with `2 l0`.
pub fn crossing_extrapolated_deviation(spec_at: impl Fn(f64) -> Result<PotentialSpec>, m: u32, v: f64, l0: f64) -> Result<f64> {
    let s1 = spec_at(l0)?;
    let s2 = spec_at(2.0 * l0)?;
    let target = crossing_target(&s1, m, v)?;
    let c1 = scaled_coeffs(&s1, m, l0);
    let c2 = scaled_coeffs(&s2, m, 2.0 * l0);
    let ext: Vec<f64> = c1.iter().zip(&c2).map(|(a, b)| 2.0 * a - b).collect();
    Ok(coef_dev(&ext, &target))
}

fn crossing_target(s: &PotentialSpec, m: u32, v: f64) -> Result<Vec<f64>> {
    let n = order_shift(m);
    let cl = closedform::crossing_limit(s, v)?;
    Ok(vec![0.0, 0.0, 4.0 * n * n * cl.a2_1[0], 4.0 * n * n * cl.a2_1[1], 4.0 * n * n * cl.a2_1[2]])
}

// coefficients of g4_1(l0 y)/l0^2 as a polynomial in y
fn scaled_coeffs(s: &PotentialSpec, m: u32, l0: f64) -> Vec<f64> {
    let g = quartic_g4_1(s, m);
    (0..5).map(|k| g[k] * l0.powi(2 - k as i32)).collect()
}

fn coef_dev(c: &[f64], target: &[f64]) -> f64 {
    let scale = poly::norm(target).max(f64::MIN_POSITIVE);
    c.iter().zip(target).map(|(a, b)| (a - b).abs() / scale).fold(0.0, f64::max)
}

fn run_crossing(rng: &mut ChaCha8Rng, draws: usize) -> Result<(Vec<Check>, usize)> {
    let mut lim = Check::new("scaled quartic limit at lambda0 = 1e-4 (extrapolated)", 1e-5);
    let mut raw = Check::new("scaled quartic at lambda0 = 1e-4 (raw, first-order error)", 1e-2);
    let mut ratios = Check::new("vanishing roots follow the limit ratios", 1e-6);
    let mut sum = Check::new("limit ratios obey the sum rule", 1e-12);
    let mut skipped = 0;
    for _ in 0..draws {
        let linear = rng.gen_bool(0.3);
        let (a2, c0) = draw_tp(rng, linear);
        if (c0 - 1.0).abs() <= 1e-3 {
            skipped += 1;
            continue;
        }
        let m = rng.gen_range(0..4u32);
        let v = rng.gen_range(-3.0..3.0);
        let n = order_shift(m);
        let at = |l0: f64| PotentialSpec::new(a2, c0, l0, n + v * l0);
        if n + v * 2e-4 <= 0.0 {
            skipped += 1;
            continue;
        }
        lim.record(crossing_extrapolated_deviation(at, m, v, 1e-4)?);
        raw.record(crossing_raw_deviation(at, m, v, 1e-4)?);
        let l0 = 1e-5;
        let s = at(l0)?;
        let cl = closedform::crossing_limit(&s, v)?;
        let (Some(r1), Some(r0)) = (cl.lam1_ratio, cl.lam0_ratio) else {
            continue;
        };
        for (a, b) in r1.iter().zip(&r0) {
            sum.record(rel(a + b, v));
        }
        // near a vanishing denominator the finite-l0 roots approach the limit slowly
        if (1.0 - c0).abs() < 0.05 || cl.delta < 1e-2 {
            skipped += 1;
            continue;
        }
        // first-order extrapolation from l0 and 2 l0, roots paired by nearest ratio
        let small = |l: f64| -> Result<Vec<(f64, f64)>> {
            Ok(enumerate_solutions(&at(l)?, m).iter().filter(|x| x.lam1.abs() < 1e-2).map(|x| (x.lam0 / l, x.lam1 / l)).collect())
        };
        // the correction grows with the ratio, so large ratios need a smaller lambda0
        let big = r1.iter().chain(&r0).fold(1.0f64, |a, b| a.max(b.abs()));
        let l0 = l0 / big;
        let (s1, s2) = (small(l0)?, small(2.0 * l0)?);
        if s1.len() != 2 || s2.len() != 2 {
            ratios.record(f64::INFINITY);
            continue;
        }
        let small: Vec<(f64, f64)> = s1
            .iter()
            .map(|p| {
                let q = s2.iter().min_by(|a, b| (a.1 - p.1).abs().partial_cmp(&(b.1 - p.1).abs()).unwrap()).unwrap();
                (2.0 * p.0 - q.0, 2.0 * p.1 - q.1)
            })
            .collect();
        let want: Vec<(f64, f64)> = r0.iter().zip(&r1).map(|(&a, &b)| (a, b)).collect();
        ratios.record(set_deviation(&want, &small));
    }
    Ok((vec![lim, raw, ratios, sum], skipped))
}
