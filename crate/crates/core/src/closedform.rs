//! Closed-form exponent differences for special families.
//!
//! * leveled potentials (`lambda0 = 0`): each quartic splits into two quadratics;
//! * linear tangent polynomials (`a2 = 0`): the sum rule becomes linear in `lam0`;
//! * Rosen-Morse (`a2 = 0`, `c0 = 1`): elementary rational formulas;
//! * large-`m` ratios, limits near the crossing point of the zero-energy lines,
//!   and the factorizations that hold on the double-root curves.
//!
//! Everything here is independent of the generic quartic solver in
//! [`crate::charexp`] and serves as an oracle for it.

use serde::Serialize;

use crate::charexp::{classify_type, nodeless_verdict, order_shift, SeedSolution, SequenceTag, SolType};
use crate::error::{Error, Result};
use crate::params::{PotentialSpec, UNIT_C0_TOL};
use crate::poly;
use crate::regions::{self, Area};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    Plus,
    Minus,
    /// factor without a sign label (double-root cofactors)
    Single,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variable {
    Lam1,
    Lam0,
}

/// `g2 x^2 + g1 x + g0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadFactor {
    pub g2: f64,
    pub g1: f64,
    pub g0: f64,
    pub branch: Branch,
    pub variable: Variable,
    pub discriminant: f64,
}

impl QuadFactor {
    pub fn new(g2: f64, g1: f64, g0: f64, branch: Branch, variable: Variable) -> Self {
        QuadFactor { g2, g1, g0, branch, variable, discriminant: g1 * g1 - 4.0 * g2 * g0 }
    }

    pub fn coeffs(&self) -> [f64; 3] {
        [self.g2, self.g1, self.g0]
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.g2 * x + self.g1) * x + self.g0
    }

    /// Real roots, ascending; a vanishing leading coefficient leaves the linear root.
    pub fn roots(&self) -> Vec<f64> {
        let big = self.g2.abs().max(self.g1.abs()).max(self.g0.abs());
        if self.g2.abs() <= 1e-14 * big {
            if self.g1.abs() <= 1e-14 * big {
                return Vec::new();
            }
            return vec![-self.g0 / self.g1];
        }
        poly::quadratic_roots(self.g2, self.g1, self.g0).into_iter().flatten().collect()
    }
}

/// A closed-form solution with its label in the classification tables
/// (primes mark secondary sequences).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledSolution {
    pub sol: SeedSolution,
    pub label: &'static str,
    pub branch: Branch,
    /// 1 for the root with the minus sign in front of the square root, 2 otherwise
    pub root_index: u8,
    pub note: Option<&'static str>,
}

fn finish(
    spec: &PotentialSpec,
    m: u32,
    lam0: f64,
    lam1: f64,
    label: &'static str,
    branch: Branch,
    root_index: u8,
) -> Result<LabeledSolution> {
    let mut sol = SeedSolution::from_pair(m, lam0, lam1)?;
    sol.tag = if label.contains('\'') { SequenceTag::Secondary } else { SequenceTag::Primary };
    sol.nodeless = nodeless_verdict(spec, &sol);
    Ok(LabeledSolution { sol, label, branch, root_index, note: None })
}

fn prime(t: SolType, primed: bool) -> &'static str {
    match (t, primed) {
        (SolType::A, false) => "a",
        (SolType::A, true) => "a'",
        (SolType::B, false) => "b",
        (SolType::B, true) => "b'",
        (SolType::C, false) => "c",
        (SolType::C, true) => "c'",
        (SolType::D, false) => "d",
        (SolType::D, true) => "d'",
    }
}

fn is_sym_case(spec: &PotentialSpec) -> bool {
    (spec.c0() - 1.0).abs() <= UNIT_C0_TOL && spec.a2() < 0.0
}

// ---------------------------------------------------------------------------
// Leveled potentials

/// The four quadratic factors at `lambda0 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlFactors {
    pub plus1: QuadFactor,
    pub minus1: QuadFactor,
    pub plus0: QuadFactor,
    pub minus0: QuadFactor,
}

// (1 +- sqrt(c0))^2 - a2, 2 (1 +- sqrt(c0)) n, n^2 - mu0^2
fn al_quad(c0: f64, a2: f64, n: f64, mu: f64, branch: Branch, variable: Variable) -> QuadFactor {
    let s = if branch == Branch::Plus { c0.sqrt() } else { -c0.sqrt() };
    QuadFactor::new((1.0 + s).powi(2) - a2, 2.0 * (1.0 + s) * n, n * n - mu * mu, branch, variable)
}

pub fn al_factors(spec: &PotentialSpec, m: u32) -> Result<AlFactors> {
    if !spec.is_leveled() {
        return Err(Error::WrongFamily("lambda0 = 0"));
    }
    if is_sym_case(spec) {
        return Err(Error::SymCaseExcluded);
    }
    let n = order_shift(m);
    let (c0, a2, mu) = (spec.c0(), spec.a2(), spec.mu0());
    // the lam0 factors follow from c0 -> 1/c0, a2 -> a2/c0
    Ok(AlFactors {
        plus1: al_quad(c0, a2, n, mu, Branch::Plus, Variable::Lam1),
        minus1: al_quad(c0, a2, n, mu, Branch::Minus, Variable::Lam1),
        plus0: al_quad(1.0 / c0, a2 / c0, n, mu, Branch::Plus, Variable::Lam0),
        minus0: al_quad(1.0 / c0, a2 / c0, n, mu, Branch::Minus, Variable::Lam0),
    })
}

/// Leveled solutions: `lam0 = +sqrt(c0) lam1` on the plus branch, `-sqrt(c0) lam1` on the minus one.
pub fn al_solutions(spec: &PotentialSpec, m: u32) -> Result<Vec<LabeledSolution>> {
    let f = al_factors(spec, m)?;
    let s = spec.c0().sqrt();
    let mut out = Vec::new();
    for (q, sign) in [(f.plus1, 1.0), (f.minus1, -1.0)] {
        let roots = q.roots();
        let typed: Vec<(f64, Option<SolType>)> = roots.iter().map(|&l| (l, classify_type(sign * s * l, l).ok())).collect();
        for (k, &(l1, t)) in typed.iter().enumerate() {
            let Some(t) = t else { continue };
            // of two same-type roots in one branch, the one nearer zero came through a separatrix
            let primed = typed.iter().enumerate().any(|(j, &(o, ot))| j != k && ot == Some(t) && o.abs() > l1.abs());
            let idx = if roots.len() == 2 && k == 1 { 2 } else { 1 };
            out.push(finish(spec, m, sign * s * l1, l1, prime(t, primed), q.branch, idx)?);
        }
    }
    Ok(out)
}

/// Where two regular solutions of the minus branch merge and leave the real axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlMerge {
    pub mu_merge: f64,
    pub merged_lam1: f64,
}

pub fn al_merge(spec: &PotentialSpec, m: u32) -> Result<AlMerge> {
    if spec.a2() >= 0.0 {
        return Err(Error::NoMerge);
    }
    if is_sym_case(spec) {
        return Err(Error::SymCaseExcluded);
    }
    let n = order_shift(m);
    let g2m = (1.0 - spec.c0().sqrt()).powi(2) - spec.a2();
    Ok(AlMerge { mu_merge: n * (-spec.a2() / g2m).sqrt(), merged_lam1: -(1.0 - spec.c0().sqrt()) * n / g2m })
}

/// Residual of the identity tying a regular `a`/`b` solution to the basic
/// eigenfunction `c0` of the same leveled potential:
///
/// ```text
/// a: 4(L - m)(sqrt(c0) L + m + 1)  = (L - c)[g2+ (c + L) + 2(sqrt(c0) + 1)],  L = |lam1|
/// b: 4(K - m)(L + m + 1)          = (L - c)[g2+ (L + c) + 2(sqrt(c0) + 1)],  K = |lam0|
/// ```
///
/// with `c` the `lam1` of the basic eigenfunction. A positive left side puts
/// the solution below the ground level.
pub fn al_ground_identity(spec: &PotentialSpec, sol: &SeedSolution) -> Result<f64> {
    let f = al_factors(spec, 0)?;
    let c = f.plus1.roots().into_iter().filter(|&r| r > 0.0).fold(f64::NAN, f64::max);
    if c.is_nan() {
        return Err(Error::MissingSolution { kind: 'c', m: 0 });
    }
    let s = spec.c0().sqrt();
    let m = sol.m as f64;
    let l = sol.lam1.abs();
    let rhs = (l - c) * (f.plus1.g2 * (l + c) + 2.0 * (s + 1.0));
    let lhs = match sol.sol_type {
        SolType::A => 4.0 * (l - m) * (s * l + m + 1.0),
        SolType::B => {
            let k = sol.lam0.abs();
            4.0 * (k - m) * (l + m + 1.0)
        }
        _ => return Err(Error::WrongFamily("a regular a or b solution")),
    };
    Ok((lhs - rhs).abs() / (1.0 + lhs.abs() + rhs.abs()))
}

// ---------------------------------------------------------------------------
// Linear tangent polynomials

fn check_ltp(spec: &PotentialSpec) -> Result<()> {
    if !spec.is_linear() {
        return Err(Error::WrongFamily("a2 = 0"));
    }
    if spec.is_rosen_morse() {
        return Err(Error::RmCase);
    }
    Ok(())
}

/// `G2(lam1) = (c0 - 1) lam1^2 - 2(n + s mu0) lam1 + lambda0^2 - (n + s mu0)^2`, `s = +-1`.
pub fn ltp_factor(spec: &PotentialSpec, m: u32, branch: Branch) -> QuadFactor {
    let n = order_shift(m);
    let k = n + if branch == Branch::Minus { -spec.mu0() } else { spec.mu0() };
    QuadFactor::new(spec.c0() - 1.0, -2.0 * k, spec.lambda0().powi(2) - k * k, branch, Variable::Lam1)
}

/// Label from the classification tables of the linear case.
fn ltp_label(spec: &PotentialSpec, m: u32, branch: Branch, j: u8) -> (&'static str, Option<&'static str>) {
    let (l0, mu, c0) = (spec.lambda0(), spec.mu0(), spec.c0());
    let area = regions::area_of(l0, mu, m).area;
    let plus = branch == Branch::Plus;
    if c0 < 1.0 {
        return match (area, plus, j) {
            (_, true, 2) => ("a", None),
            (Area::C, true, _) => ("b'''", Some("third type-b solution in area C")),
            (_, true, _) => ("d", None),
            (Area::A, false, 1) => ("b", None),
            (Area::A, false, _) => ("c", None),
            (Area::B, false, 1) => ("d'", None),
            (_, false, 1) => ("b", None),
            (_, false, _) => ("a'", None),
        };
    }
    let lines = ltp_special_lines(spec, m);
    match (area, plus, j) {
        (Area::C, true, 1) => ("b'''", None),
        (_, true, 1) => ("d", None),
        (_, true, _) => ("b", None),
        (Area::A, false, 1) => ("a", None),
        (Area::A, false, _) => ("c", None),
        (Area::B, false, 1) => ("d'", None),
        (Area::B, false, _) => ("b'", None),
        (_, false, j) => {
            let above = lines.line_plus.map_or(false, |f| mu > f(l0));
            match (above, j) {
                (true, 1) => ("a", None),
                (true, _) => ("a'", None),
                (false, 1) => ("b''", None),
                (false, _) => ("b'", None),
            }
        }
    }
}

/// Closed-form solutions of a linear tangent polynomial with `c0 != 1`.
pub fn ltp_solutions(spec: &PotentialSpec, m: u32) -> Result<Vec<LabeledSolution>> {
    check_ltp(spec)?;
    let n = order_shift(m);
    let mu = spec.mu0();
    let mut out = Vec::new();
    for branch in [Branch::Plus, Branch::Minus] {
        let q = ltp_factor(spec, m, branch);
        if q.discriminant < -1e-12 * (q.g1 * q.g1 + (4.0 * q.g2 * q.g0).abs()) {
            continue;
        }
        let half = 0.5 * q.discriminant.max(0.0).sqrt();
        let k = -0.5 * q.g1;
        let sm = if branch == Branch::Plus { mu } else { -mu };
        for j in [1u8, 2] {
            let lam1 = -(sm + n + if j == 1 { -half } else { half }) / (1.0 - spec.c0());
            debug_assert!((lam1 - (k + if j == 1 { -half } else { half }) / q.g2).abs() < 1e-6 * (1.0 + lam1.abs()));
            // sum rule lam0 + lam1 + n = -s mu0
            let lam0 = -(lam1 + sm + n);
            if classify_type(lam0, lam1).is_err() {
                continue;
            }
            let (label, note) = ltp_label(spec, m, branch, j);
            let mut ls = finish(spec, m, lam0, lam1, label, branch, j)?;
            ls.note = note;
            out.push(ls);
        }
    }
    Ok(out)
}

/// Special lines of the linear case as evaluators in `lambda0`.
pub struct LtpLines {
    pub c0: f64,
    pub m: u32,
    /// `sqrt(1 - 1/c0) lambda0 + 2m + 1`; absent for `c0 <= 1`
    pub line_plus: Option<Box<dyn Fn(f64) -> f64>>,
    /// `-sqrt(1 - 1/c0) lambda0 + 2m + 1`
    pub line_minus: Option<Box<dyn Fn(f64) -> f64>>,
    /// `sqrt(1 - 1/c0) lambda0 - 2m - 1`
    pub line_cutoff: Option<Box<dyn Fn(f64) -> f64>>,
}

impl LtpLines {
    /// `sqrt(lambda0^2 + c0 m^2) + m + 1`
    pub fn threshold_a(&self, lambda0: f64) -> f64 {
        let m = self.m as f64;
        (lambda0 * lambda0 + self.c0 * m * m).sqrt() + m + 1.0
    }

    /// `m + 1 + sqrt((m^2 - lambda0^2) / c0)`, defined for `lambda0 <= m`
    pub fn threshold_b(&self, lambda0: f64) -> Result<f64> {
        let m = self.m as f64;
        if lambda0 > m {
            return Err(Error::DomainExceeded("b threshold"));
        }
        Ok(m + 1.0 + ((m * m - lambda0 * lambda0) / self.c0).sqrt())
    }
}

impl std::fmt::Debug for LtpLines {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LtpLines").field("c0", &self.c0).field("m", &self.m).field("lines", &self.line_plus.is_some()).finish()
    }
}

pub fn ltp_special_lines(spec: &PotentialSpec, m: u32) -> LtpLines {
    let c0 = spec.c0();
    let n = order_shift(m);
    let mut lines = LtpLines { c0, m, line_plus: None, line_minus: None, line_cutoff: None };
    if c0 > 1.0 + UNIT_C0_TOL {
        let k = (1.0 - 1.0 / c0).sqrt();
        lines.line_plus = Some(Box::new(move |l| k * l + n));
        lines.line_minus = Some(Box::new(move |l| -k * l + n));
        lines.line_cutoff = Some(Box::new(move |l| k * l - n));
    }
    lines
}

// ---------------------------------------------------------------------------
// Rosen-Morse

/// `A = (mu0 - 1)/2`, `B = lambda0^2/4`.
pub fn rm_parameters(lambda0: f64, mu0: f64) -> (f64, f64) {
    (0.5 * (mu0 - 1.0), 0.25 * lambda0 * lambda0)
}

/// Closed-form Rosen-Morse solutions of order `m`: one per sign of `mu0`.
pub fn rm_solutions(lambda0: f64, mu0: f64, m: u32) -> Result<Vec<LabeledSolution>> {
    let spec = PotentialSpec::new(0.0, 1.0, lambda0, mu0)?;
    let (a, b) = rm_parameters(lambda0, mu0);
    let mf = m as f64;
    if (a - mf).abs() < 1e-10 {
        return Err(Error::PoleAtAEqualsM);
    }
    let mut out = Vec::new();
    let v = a - mf;
    let minus_label = if mf < a - b.sqrt() {
        "c"
    } else if mf < a {
        "a'"
    } else if mf < a + b.sqrt() {
        "b''"
    } else {
        "d'"
    };
    if let Ok(s) = finish(&spec, m, v + b / v, v - b / v, minus_label, Branch::Minus, 1) {
        out.push(s);
    }
    let u = a + mf + 1.0;
    let plus_label = if regions::area_of(lambda0, mu0, m).area == Area::C { "b'''" } else { "d" };
    if let Ok(s) = finish(&spec, m, -u - b / u, -u + b / u, plus_label, Branch::Plus, 1) {
        out.push(s);
    }
    Ok(out)
}

/// Energy of a Rosen-Morse solution from `A +- m`: `-(A+-m)^2 - B^2/(A+-m)^2 + 2B`.
pub fn rm_energy(b: f64, shifted: f64) -> f64 {
    -shifted * shifted - b * b / (shifted * shifted) + 2.0 * b
}

/// Nodeless ranges of the regular Rosen-Morse solutions: `a'` iff `A(A - m) < B`,
/// `b''` iff `A(m - A) < B`. `None` for other labels.
pub fn rm_nodeless(a: f64, b: f64, m: u32, label: &str) -> Option<bool> {
    let mf = m as f64;
    match label {
        "a'" => Some(a * (a - mf) < b),
        "b''" => Some(a * (mf - a) < b),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Large-m asymptotics

/// Limits of `lam1 / (2m+1)` as `m` grows, ordered primary then secondary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticTau {
    /// both irregular-at-both-ends families
    pub plus: Option<[f64; 2]>,
    /// regular families: `a` for `c0 < 1`, `b` for `c0 > 1`
    pub minus: Option<[f64; 2]>,
    pub minus_type: SolType,
}

/// Roots of `g2 tau^2 + 2(1 +- sqrt(c0)) tau + 1 = 0`, the leading behaviour
/// of the leveled quadratics in `tau = lam1/(2m+1)`. Ray identifiers drop out.
pub fn asymptotic_tau(spec: &PotentialSpec) -> AsymptoticTau {
    let s = spec.c0().sqrt();
    let solve = |sg: f64| {
        let q = QuadFactor::new((1.0 + sg).powi(2) - spec.a2(), 2.0 * (1.0 + sg), 1.0, Branch::Single, Variable::Lam1);
        let mut r = q.roots();
        if r.len() != 2 {
            return None;
        }
        // the secondary member comes through zero energy, so it is the smaller one
        r.sort_by(|x, y| y.abs().partial_cmp(&x.abs()).unwrap());
        Some([r[0], r[1]])
    };
    AsymptoticTau {
        plus: solve(s),
        minus: solve(-s),
        minus_type: if spec.c0() < 1.0 { SolType::A } else { SolType::B },
    }
}

/// First order of the secondary `a'` sequence: `ceil((mu0 - lambda0 - 1)/2) + 1`.
pub fn secondary_start(spec: &PotentialSpec) -> u32 {
    let x = 0.5 * (spec.mu0() - spec.lambda0() - 1.0);
    (x.ceil().max(0.0) as u32) + 1
}

// ---------------------------------------------------------------------------
// Crossing point of the zero-energy lines

/// Leading quadratics near `lambda0 = 0`, `mu0 = 2m+1` approached along
/// `mu0 = 2m+1 + v lambda0`, in the scaled unknown `y = lam / lambda0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossingLimit {
    pub v: f64,
    /// `(1-c0) y^2 - 2 v y + v^2 - 1`
    pub a2_1: [f64; 3],
    /// `(c0-1) y^2 - 2 c0 v y + c0 v^2 + 1`
    pub a2_0: [f64; 3],
    /// `4(c0 v^2 + 1 - c0)`, shared by both quadratics
    pub delta: f64,
    /// limits of `lam1/lambda0`, `(v -+ sqrt(delta)/2)/(1 - c0)`
    pub lam1_ratio: Option<[f64; 2]>,
    /// matching limits of `lam0/lambda0`, `(c0 v -+ sqrt(delta)/2)/(c0 - 1)`
    pub lam0_ratio: Option<[f64; 2]>,
    /// slope below which the pair is complex, `sqrt(1 - 1/c0)` for `c0 > 1`
    pub v_a: Option<f64>,
}

pub fn crossing_limit(spec: &PotentialSpec, v: f64) -> Result<CrossingLimit> {
    let c0 = spec.c0();
    if (c0 - 1.0).abs() <= UNIT_C0_TOL {
        return Err(Error::SymCaseExcluded);
    }
    let delta = 4.0 * (c0 * v * v + 1.0 - c0);
    let (lam1_ratio, lam0_ratio) = if delta >= 0.0 {
        let h = 0.5 * delta.sqrt();
        (
            Some([(v - h) / (1.0 - c0), (v + h) / (1.0 - c0)]),
            Some([(c0 * v - h) / (c0 - 1.0), (c0 * v + h) / (c0 - 1.0)]),
        )
    } else {
        (None, None)
    };
    Ok(CrossingLimit {
        v,
        a2_1: [1.0 - c0, -2.0 * v, v * v - 1.0],
        a2_0: [c0 - 1.0, -2.0 * c0 * v, c0 * v * v + 1.0],
        delta,
        lam1_ratio,
        lam0_ratio,
        v_a: (c0 > 1.0).then(|| (1.0 - 1.0 / c0).sqrt()),
    })
}

// ---------------------------------------------------------------------------
// Double-root curves

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DrtKind {
    /// `lam1 = -2m-1` is a double root
    Ad,
    /// `lam0 = -2m-1` is a double root
    Bd,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DrtDecomposition {
    pub kind: DrtKind,
    /// cofactor of `(lam + 2m + 1)^2` in the quartic with the double root
    pub cofactor: QuadFactor,
    pub cofactor_roots: Vec<f64>,
    /// quadratic cofactor of the other quartic
    pub partner_cofactor: QuadFactor,
    /// the remaining quadratic factor of the other quartic
    pub partner_factor: [f64; 3],
    /// `(lam0, lam1)` from the cofactor roots and the linear interrelation
    pub pairs: Vec<(f64, f64)>,
    /// `(lam0, lam1)` of the two solutions sharing the double root
    pub double_root_pairs: Vec<(f64, f64)>,
}

pub fn drt_decomposition(spec: &PotentialSpec, m: u32, kind: DrtKind) -> Result<DrtDecomposition> {
    let n = order_shift(m);
    let (l0, mu, c0, d) = (spec.lambda0(), spec.mu0(), spec.c0(), spec.d());
    let curves = regions::drt_curves(spec, m);
    let on = match kind {
        DrtKind::Ad => curves.ad_mu(l0),
        DrtKind::Bd => curves.bd_mu(l0),
    };
    let target = on.map_err(|_| Error::NotOnCurve(f64::INFINITY))?;
    let resid = (mu * mu - target * target).abs() / (1.0 + mu * mu);
    if resid > 1e-8 {
        return Err(Error::NotOnCurve(resid));
    }
    let dd = d * d;
    Ok(match kind {
        DrtKind::Ad => {
            let cof = QuadFactor::new(
                dd - 4.0 * c0,
                -2.0 * d * (d + 2.0) * n,
                (d + 2.0).powi(2) * n * n - 4.0 * l0 * l0,
                Branch::Single,
                Variable::Lam1,
            );
            let partner = QuadFactor::new(
                dd / c0 - 4.0,
                -4.0 * n * (d + 2.0),
                -dd * l0 * l0 / c0 - (d + 2.0).powi(2) * n * n,
                Branch::Single,
                Variable::Lam0,
            );
            let roots = cof.roots();
            let pairs = roots.iter().map(|&l1| (0.5 * (d * l1 - (d + 2.0) * n), l1)).collect();
            let s = (l0 * l0 + c0 * n * n).sqrt();
            DrtDecomposition {
                kind,
                cofactor: cof,
                cofactor_roots: roots,
                partner_cofactor: partner,
                partner_factor: [1.0, 0.0, -l0 * l0 - c0 * n * n],
                pairs,
                double_root_pairs: vec![(s, -n), (-s, -n)],
            }
        }
        DrtKind::Bd => {
            let cof = QuadFactor::new(
                (dd - 4.0 * c0) / c0,
                -2.0 * d * (d + 2.0 * c0) * n / c0,
                (d + 2.0 * c0).powi(2) * n * n / c0 + 4.0 * l0 * l0,
                Branch::Single,
                Variable::Lam0,
            );
            let lx = (1.0 + 2.0 * c0 / d) * n;
            let partner = QuadFactor::new(
                dd / c0 - 4.0,
                -4.0 * n * (d / c0 + 2.0),
                dd * (l0 * l0 - lx * lx) / (c0 * c0),
                Branch::Single,
                Variable::Lam1,
            );
            let roots = cof.roots();
            let pairs = roots.iter().map(|&lz| (lz, (d * lz - (d + 2.0 * c0) * n) / (2.0 * c0))).collect();
            let s = ((n * n - l0 * l0) / c0).max(0.0).sqrt();
            DrtDecomposition {
                kind,
                cofactor: cof,
                cofactor_roots: roots,
                partner_cofactor: partner,
                partner_factor: [c0, 0.0, l0 * l0 - n * n],
                pairs,
                double_root_pairs: vec![(-n, s), (-n, -s)],
            }
        }
    })
}
