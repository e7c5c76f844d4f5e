//! Signed exponent differences of Jacobi-seed solutions.
//!
//! For seed order `m` the signed exponent differences `(lam0, lam1)` at
//! `z = 0` and `z = 1` solve
//!
//! ```text
//! lam0^2 = lambda0^2 + c0 lam1^2
//! (lam0 + lam1 + 2m + 1)^2 = mu0^2 + a2 lam1^2
//! ```
//!
//! Eliminating one unknown gives a quartic in the other; the partner value
//! then follows from a fraction formula. Both eliminations are run and merged
//! so that a vanishing denominator on one side never loses a solution.

use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};
use crate::params::PotentialSpec;
use crate::poly;
use crate::regions::{self, Prediction};
use crate::seedsol;

/// Denominator tolerance of the fraction formulas.
pub const TOL_DENOM: f64 = 1e-8;
/// Relative tolerance for identifying the same solution from both routes.
pub const TOL_MATCH: f64 = 1e-7;
/// Values this close to zero sit on a zero-energy separatrix.
pub const TOL_BOUNDARY: f64 = 1e-9;
/// Number of steps of the `lambda0` homotopy used for sequence tags.
pub const HOMOTOPY_STEPS: usize = 64;

pub use poly::real_roots;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SolType {
    /// regular at `z = 0` only
    A,
    /// regular at `z = 1` only
    B,
    /// regular at both ends (eigenfunction)
    C,
    /// irregular at both ends
    D,
}

impl SolType {
    pub fn letter(self) -> char {
        match self {
            SolType::A => 'a',
            SolType::B => 'b',
            SolType::C => 'c',
            SolType::D => 'd',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_lowercase() {
            'a' => Some(SolType::A),
            'b' => Some(SolType::B),
            'c' => Some(SolType::C),
            'd' => Some(SolType::D),
            _ => None,
        }
    }

    pub fn is_regular_at_zero(self) -> bool {
        matches!(self, SolType::A | SolType::C)
    }

    pub fn is_regular_at_one(self) -> bool {
        matches!(self, SolType::B | SolType::C)
    }
}

impl fmt::Display for SolType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SequenceTag {
    Primary,
    Secondary,
}

impl fmt::Display for SequenceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceTag::Primary => "primary",
            SequenceTag::Secondary => "secondary",
        })
    }
}

/// Whether the seed wavefunction is free of interior zeros.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Nodeless {
    Yes,
    No,
    /// No usable prediction; decided by counting zeros.
    Numeric(bool),
}

impl Nodeless {
    pub fn is_nodeless(self) -> bool {
        matches!(self, Nodeless::Yes | Nodeless::Numeric(true))
    }
}

impl fmt::Display for Nodeless {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Nodeless::Yes => "yes",
            Nodeless::No => "no",
            Nodeless::Numeric(true) => "numeric-yes",
            Nodeless::Numeric(false) => "numeric-no",
        })
    }
}

/// Which elimination produced the reported values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Route {
    /// quartic in `lam1`, `lam0` from its fraction formula
    Lambda1,
    /// quartic in `lam0`, `lam1` from its fraction formula
    Lambda0,
    /// both routes agree
    Both,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Lambda1 => "g4_1",
            Route::Lambda0 => "g4_0",
            Route::Both => "both",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeedSolution {
    pub m: u32,
    pub lam0: f64,
    pub lam1: f64,
    pub mu_signed: f64,
    pub eps: f64,
    pub sol_type: SolType,
    pub tag: SequenceTag,
    pub nodeless: Nodeless,
    pub route: Route,
}

impl SeedSolution {
    /// Bare record with derived fields filled in; tag and verdict are placeholders.
    pub fn from_pair(m: u32, lam0: f64, lam1: f64) -> Result<Self> {
        Ok(SeedSolution {
            m,
            lam0,
            lam1,
            mu_signed: lam0 + lam1 + order_shift(m),
            eps: -lam1 * lam1,
            sol_type: classify_type(lam0, lam1)?,
            tag: SequenceTag::Primary,
            nodeless: Nodeless::Numeric(false),
            route: Route::Both,
        })
    }

    /// Residuals of the three defining identities, each scaled by its magnitude.
    pub fn identity_residuals(&self, spec: &PotentialSpec) -> [f64; 3] {
        let n = order_shift(self.m);
        let (l0, l1) = (self.lam0, self.lam1);
        let sum = (l0 + l1 + n - self.mu_signed).abs() / (1.0 + l0.abs() + l1.abs() + n);
        let rhs0 = spec.lambda0().powi(2) + spec.c0() * l1 * l1;
        let r0 = (l0 * l0 - rhs0).abs() / (1.0 + l0 * l0 + rhs0);
        let rhsm = spec.mu0().powi(2) + spec.a2() * l1 * l1;
        let rm = (self.mu_signed.powi(2) - rhsm).abs() / (1.0 + self.mu_signed.powi(2) + rhsm.abs());
        [sum, r0, rm]
    }
}

/// `2m + 1`.
pub fn order_shift(m: u32) -> f64 {
    2.0 * m as f64 + 1.0
}

/// Coefficients (descending) of the quartic whose roots are `lam1`.
pub fn quartic_g4_1(spec: &PotentialSpec, m: u32) -> [f64; 5] {
    let n = order_shift(m);
    let (l0, mu, d, c0) = (spec.lambda0(), spec.mu0(), spec.d(), spec.c0());
    let inner = [d, -2.0 * n, mu * mu - l0 * l0 - n * n];
    let shift2 = [1.0, 2.0 * n, n * n];
    let g = poly::add(&poly::mul(&inner, &inner), &poly::scaled(&poly::mul(&shift2, &[c0, 0.0, l0 * l0]), -4.0));
    to5(&g)
}

/// Coefficients (descending) of the quartic whose roots are `lam0`.
pub fn quartic_g4_0(spec: &PotentialSpec, m: u32) -> [f64; 5] {
    let n = order_shift(m);
    let (l0, mu, a2, c0) = (spec.lambda0(), spec.mu0(), spec.a2(), spec.c0());
    let k = (1.0 - a2) / c0;
    let inner = [1.0 + k, 2.0 * n, n * n - mu * mu - k * l0 * l0];
    let shift2 = [1.0, 2.0 * n, n * n];
    let g = poly::add(
        &poly::scaled(&poly::mul(&inner, &inner), c0),
        &poly::scaled(&poly::mul(&shift2, &[1.0, 0.0, -l0 * l0]), -4.0),
    );
    to5(&g)
}

/// Quartic in the energy magnitude `e = lam1^2` obtained by squaring away the
/// sign of `lam1`; every returned `|eps|` must be one of its roots.
pub fn energy_quartic(spec: &PotentialSpec, m: u32) -> [f64; 5] {
    let n = order_shift(m);
    let (l0, mu, d, c0) = (spec.lambda0(), spec.mu0(), spec.d(), spec.c0());
    let k = mu * mu - l0 * l0 - n * n;
    // even part: (d^2 - 4 c0) e^2 + (2 d k + 4 n^2 - 4 l0^2 - 4 c0 n^2) e + k^2 - 4 l0^2 n^2
    let even = [d * d - 4.0 * c0, 2.0 * d * k + 4.0 * n * n - 4.0 * l0 * l0 - 4.0 * c0 * n * n, k * k - 4.0 * l0 * l0 * n * n];
    // odd part: -4 n [(d + 2 c0) e + k + 2 l0^2] multiplies lam1
    let odd = [-4.0 * n * (d + 2.0 * c0), -4.0 * n * (k + 2.0 * l0 * l0)];
    let g = poly::add(&poly::mul(&even, &even), &poly::scaled(&poly::mul(&[1.0, 0.0], &poly::mul(&odd, &odd)), -1.0));
    to5(&g)
}

fn to5(g: &[f64]) -> [f64; 5] {
    let p = poly::padded(g, 5);
    [p[0], p[1], p[2], p[3], p[4]]
}

/// `lam0` paired with a root `lam1` of [`quartic_g4_1`].
pub fn lambda0_from_lambda1(spec: &PotentialSpec, m: u32, lam1: f64) -> Result<f64> {
    let n = order_shift(m);
    let den = 2.0 * (lam1 + n);
    if (lam1 + n).abs() <= TOL_DENOM {
        return Err(Error::DenominatorVanishes(lam1 + n));
    }
    let (l0, mu, d) = (spec.lambda0(), spec.mu0(), spec.d());
    Ok((mu * mu - l0 * l0 - n * n + d * lam1 * lam1 - 2.0 * n * lam1) / den)
}

/// `lam1` paired with a root `lam0` of [`quartic_g4_0`].
pub fn lambda1_from_lambda0(spec: &PotentialSpec, m: u32, lam0: f64) -> Result<f64> {
    let n = order_shift(m);
    if (lam0 + n).abs() <= TOL_DENOM {
        return Err(Error::DenominatorVanishes(lam0 + n));
    }
    let (l0, mu, a2, c0) = (spec.lambda0(), spec.mu0(), spec.a2(), spec.c0());
    Ok((mu * mu + (a2 - 1.0) * (lam0 * lam0 - l0 * l0) / c0 - (lam0 + n).powi(2)) / (2.0 * (lam0 + n)))
}

/// Type from the sign pattern of `(lam0, lam1)`.
pub fn classify_type(lam0: f64, lam1: f64) -> Result<SolType> {
    if lam0.abs() <= TOL_BOUNDARY || lam1.abs() <= TOL_BOUNDARY {
        return Err(Error::Boundary);
    }
    Ok(match (lam0 > 0.0, lam1 > 0.0) {
        (true, false) => SolType::A,
        (false, true) => SolType::B,
        (true, true) => SolType::C,
        (false, false) => SolType::D,
    })
}

/// Side information gathered while enumerating.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Annotation {
    /// `lam1 = -2m-1` root: the `lam1` route failed, values came from `lam0`.
    AdDoubleRoot,
    /// `lam0 = -2m-1` root: the `lam0` route failed.
    BdDoubleRoot,
    /// A pair of solutions is complex here; the real part estimates where it merged.
    MergeEvent { lam1_re: f64, lam1_im: f64 },
    /// A solution sits on a zero-energy separatrix and carries no type.
    OnSeparatrix { lam0: f64, lam1: f64 },
    /// The energy quartic check failed for this energy.
    EnergyQuarticMismatch { eps: f64, residual: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Enumeration {
    pub solutions: Vec<SeedSolution>,
    pub annotations: Vec<Annotation>,
}

#[derive(Debug, Clone, Copy)]
struct Pair {
    lam0: f64,
    lam1: f64,
    route: Route,
    // relative size of the fraction denominator, larger is better conditioned
    quality: f64,
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL_MATCH * (1.0 + a.abs().max(b.abs()))
}

/// Largest relative residual of the two defining identities.
fn pair_residual(spec: &PotentialSpec, n: f64, x: f64, y: f64) -> f64 {
    let (l0sq, mu2, a2, c0) = (spec.lambda0().powi(2), spec.mu0().powi(2), spec.a2(), spec.c0());
    let s = x + y + n;
    let r1 = (x * x - l0sq - c0 * y * y).abs() / (1.0 + x * x + l0sq + c0 * y * y);
    let r2 = (s * s - mu2 - a2 * y * y).abs() / (1.0 + s * s + mu2 + (a2 * y * y).abs());
    r1.max(r2)
}

/// Newton iteration on the two defining identities.
fn polish_pair(spec: &PotentialSpec, n: f64, lam0: f64, lam1: f64) -> (f64, f64) {
    let (l0sq, mu2, a2, c0) = (spec.lambda0().powi(2), spec.mu0().powi(2), spec.a2(), spec.c0());
    let resid = |x: f64, y: f64| {
        let s = x + y + n;
        let f1 = x * x - l0sq - c0 * y * y;
        let f2 = s * s - mu2 - a2 * y * y;
        let sc1 = 1.0 + x * x + l0sq + c0 * y * y;
        let sc2 = 1.0 + s * s + mu2 + (a2 * y * y).abs();
        (f1, f2, (f1 / sc1).abs().max((f2 / sc2).abs()))
    };
    let (mut x, mut y) = (lam0, lam1);
    let (_, _, mut best) = resid(x, y);
    let start = (x, y);
    for _ in 0..8 {
        let (f1, f2, r) = resid(x, y);
        if r < 1e-16 {
            break;
        }
        let s = x + y + n;
        let (j11, j12, j21, j22) = (2.0 * x, -2.0 * c0 * y, 2.0 * s, 2.0 * s - 2.0 * a2 * y);
        let det = j11 * j22 - j12 * j21;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let nx = x - (f1 * j22 - f2 * j12) / det;
        let ny = y - (j11 * f2 - j21 * f1) / det;
        let (_, _, nr) = resid(nx, ny);
        if !(nr < best) {
            break;
        }
        best = nr;
        x = nx;
        y = ny;
    }
    // never let the polish jump to a different solution
    if (x - start.0).abs() > 1e-4 * (1.0 + start.0.abs()) || (y - start.1).abs() > 1e-4 * (1.0 + start.1.abs()) {
        return start;
    }
    (x, y)
}

/// Unlabelled solution pairs from both routes, merged and polished.
fn raw_pairs(spec: &PotentialSpec, m: u32, notes: &mut Vec<Annotation>) -> Vec<Pair> {
    let n = order_shift(m);
    let mut pairs: Vec<Pair> = Vec::new();
    let g1 = quartic_g4_1(spec, m);
    let mut ad = false;
    for lam1 in poly::real_roots(&g1).unwrap_or_default() {
        match lambda0_from_lambda1(spec, m, lam1) {
            Ok(lam0) => pairs.push(Pair { lam0, lam1, route: Route::Lambda1, quality: (lam1 + n).abs() / (1.0 + lam1.abs()) }),
            Err(_) => ad = true,
        }
    }
    let mut bd = false;
    let g0 = quartic_g4_0(spec, m);
    let from0: Vec<Pair> = poly::real_roots(&g0)
        .unwrap_or_default()
        .into_iter()
        .filter_map(|lam0| match lambda1_from_lambda0(spec, m, lam0) {
            Ok(lam1) => Some(Pair { lam0, lam1, route: Route::Lambda0, quality: (lam0 + n).abs() / (1.0 + lam0.abs()) }),
            Err(_) => {
                bd = true;
                None
            }
        })
        .collect();
    let mut taken = vec![false; pairs.len()];
    for p in from0 {
        let hit = (0..taken.len()).find(|&i| !taken[i] && close(pairs[i].lam0, p.lam0) && close(pairs[i].lam1, p.lam1));
        match hit {
            Some(i) => {
                taken[i] = true;
                let better = if p.quality > pairs[i].quality { p } else { pairs[i] };
                pairs[i] = Pair { route: Route::Both, ..better };
            }
            None => pairs.push(p),
        }
    }
    for p in &mut pairs {
        let (a, b) = polish_pair(spec, n, p.lam0, p.lam1);
        p.lam0 = a;
        p.lam1 = b;
    }
    // near a double root the fraction formula can return a finite but wrong partner
    pairs.retain(|p| {
        let ok = pair_residual(spec, n, p.lam0, p.lam1) <= 1e-8;
        if !ok && (p.lam1 + n).abs() < 1e-3 {
            ad = true;
        }
        if !ok && (p.lam0 + n).abs() < 1e-3 {
            bd = true;
        }
        ok
    });
    // drop duplicates that the polish brought together
    let mut out: Vec<Pair> = Vec::new();
    for p in pairs {
        if let Some(q) = out.iter_mut().find(|q| close(q.lam0, p.lam0) && close(q.lam1, p.lam1)) {
            if q.route != p.route {
                q.route = Route::Both;
            }
            continue;
        }
        out.push(p);
    }
    out.truncate(4);
    if ad {
        notes.push(Annotation::AdDoubleRoot);
    }
    if bd {
        notes.push(Annotation::BdDoubleRoot);
    }
    for (re, im) in complex_roots(&g1) {
        if im > 0.0 {
            notes.push(Annotation::MergeEvent { lam1_re: re, lam1_im: im });
        }
    }
    out
}

/// Non-real roots of a polynomial as `(re, im)`.
fn complex_roots(c: &[f64]) -> Vec<(f64, f64)> {
    let c = poly::trim(c);
    if c.len() < 3 {
        return Vec::new();
    }
    let n = c.len() - 1;
    let mut comp = nalgebra::DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        comp[(0, j)] = -c[j + 1] / c[0];
    }
    for i in 1..n {
        comp[(i, i - 1)] = 1.0;
    }
    comp.complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() > 1e-6 * (1.0 + z.re.abs()))
        .map(|z| (z.re, z.im))
        .collect()
}

/// Untagged solution pairs `(lam0, lam1)` for one order.
pub fn solution_pairs(spec: &PotentialSpec, m: u32) -> Vec<(f64, f64)> {
    raw_pairs(spec, m, &mut Vec::new()).into_iter().map(|p| (p.lam0, p.lam1)).collect()
}

/// All Jacobi-seed solutions of order `m` (at most four).
pub fn enumerate_solutions(spec: &PotentialSpec, m: u32) -> Vec<SeedSolution> {
    enumerate_detailed(spec, m).solutions
}

/// [`enumerate_solutions`] together with annotations.
pub fn enumerate_detailed(spec: &PotentialSpec, m: u32) -> Enumeration {
    let mut notes = Vec::new();
    let pairs = raw_pairs(spec, m, &mut notes);
    let tags = sequence_tags(spec, m, &pairs);
    let mut solutions = Vec::new();
    for (p, tag) in pairs.iter().zip(tags) {
        let mut sol = match SeedSolution::from_pair(m, p.lam0, p.lam1) {
            Ok(s) => s,
            Err(_) => {
                notes.push(Annotation::OnSeparatrix { lam0: p.lam0, lam1: p.lam1 });
                continue;
            }
        };
        sol.tag = tag;
        sol.route = p.route;
        sol.nodeless = nodeless_verdict(spec, &sol);
        solutions.push(sol);
    }
    let eq = energy_quartic(spec, m);
    for s in &solutions {
        let e = -s.eps;
        let r = poly::eval(&eq, e).abs() / poly::scale(&eq, e).max(f64::MIN_POSITIVE);
        if r > 1e-8 {
            notes.push(Annotation::EnergyQuarticMismatch { eps: s.eps, residual: r });
        }
    }
    solutions.sort_by(|a, b| a.sol_type.cmp(&b.sol_type).then(a.lam1.partial_cmp(&b.lam1).unwrap()));
    Enumeration { solutions, annotations: notes }
}

/// Prediction from the opposite-sign rule, falling back to counting zeros.
pub fn nodeless_verdict(spec: &PotentialSpec, sol: &SeedSolution) -> Nodeless {
    match regions::nodeless_predict(sol) {
        Prediction::Nodeless => Nodeless::Yes,
        Prediction::HasNodes => Nodeless::No,
        Prediction::Unknown => Nodeless::Numeric(seedsol::count_interior_zeros(spec, sol) == 0),
    }
}

/// Closed-form solutions on the `lambda0 = 0` line with their basic labels.
fn leveled_labels(spec: &PotentialSpec, m: u32) -> Vec<(f64, f64, SolType, SequenceTag)> {
    let n = order_shift(m);
    let (c0, a2, mu) = (spec.c0(), spec.a2(), spec.mu0());
    let s = c0.sqrt();
    let g0 = n * n - mu * mu;
    let mut out = Vec::new();
    for plus in [true, false] {
        let sg = if plus { s } else { -s };
        let g2 = (1.0 + sg).powi(2) - a2;
        let g1 = 2.0 * (1.0 + sg) * n;
        let roots: Vec<(f64, bool)> = if g2.abs() <= 1e-12 * (1.0 + a2.abs()) {
            if g1.abs() <= 1e-12 * n {
                Vec::new()
            } else {
                vec![(-g0 / g1, g1 > 0.0)]
            }
        } else {
            let disc = g1 * g1 - 4.0 * g2 * g0;
            if disc < 0.0 {
                Vec::new()
            } else {
                let q = disc.sqrt();
                // (root, is the "minus sqrt" root)
                vec![((-g1 - q) / (2.0 * g2), true), ((-g1 + q) / (2.0 * g2), false)]
            }
        };
        for (lam1, lower) in roots {
            let lam0 = sg * lam1;
            let Ok(t) = classify_type(lam0, lam1) else { continue };
            let tag = if plus {
                // lower root: d; upper root: c when positive, otherwise secondary d
                if lower || t == SolType::C {
                    SequenceTag::Primary
                } else {
                    SequenceTag::Secondary
                }
            } else if c0 < 1.0 {
                // lower root always a; upper root b when positive, otherwise secondary a
                if lower || t == SolType::B {
                    SequenceTag::Primary
                } else {
                    SequenceTag::Secondary
                }
            } else if c0 > 1.0 {
                // upper root always b; lower root a when negative, otherwise secondary b
                if !lower || t == SolType::A {
                    SequenceTag::Primary
                } else {
                    SequenceTag::Secondary
                }
            } else if (lower && t == SolType::A) || (!lower && t == SolType::B) {
                SequenceTag::Primary
            } else {
                SequenceTag::Secondary
            };
            out.push((lam0, lam1, t, tag));
        }
    }
    out
}

/// Exponent difference at the irregular end(s); smaller means primary when
/// two solutions of one type compete.
fn chexp_key(lam0: f64, lam1: f64, t: SolType) -> f64 {
    match t {
        SolType::A => lam1,
        SolType::B => lam0,
        SolType::C | SolType::D => lam0 + lam1,
    }
}

#[derive(Debug, Clone, Copy)]
struct Track {
    lam0: f64,
    lam1: f64,
    origin: Option<(SolType, SequenceTag)>,
}

fn match_tracks(tracks: &[Track], pairs: &[(f64, f64)]) -> Vec<Option<usize>> {
    // greedy nearest matching; returns for each pair the index of its track
    let mut cand: Vec<(f64, usize, usize)> = Vec::new();
    for (i, t) in tracks.iter().enumerate() {
        for (j, p) in pairs.iter().enumerate() {
            let sc = 1.0 + t.lam0.abs() + t.lam1.abs();
            cand.push((((t.lam0 - p.0).powi(2) + (t.lam1 - p.1).powi(2)).sqrt() / sc, i, j));
        }
    }
    cand.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut used_t = vec![false; tracks.len()];
    let mut out = vec![None; pairs.len()];
    for (_, i, j) in cand {
        if !used_t[i] && out[j].is_none() {
            used_t[i] = true;
            out[j] = Some(i);
        }
    }
    out
}

/// Primary/secondary labels by continuation from `lambda0 = 0`.
fn sequence_tags(spec: &PotentialSpec, m: u32, pairs: &[Pair]) -> Vec<SequenceTag> {
    let target = spec.lambda0();
    let mut tracks: Vec<Track> = leveled_labels(spec, m)
        .into_iter()
        .map(|(lam0, lam1, t, tag)| Track { lam0, lam1, origin: Some((t, tag)) })
        .collect();
    let steps = if target == 0.0 { 0 } else { HOMOTOPY_STEPS };
    let final_pairs: Vec<(f64, f64)> = pairs.iter().map(|p| (p.lam0, p.lam1)).collect();
    for k in 1..=steps {
        let l0 = target * k as f64 / steps as f64;
        let here: Vec<(f64, f64)> = if k == steps {
            final_pairs.clone()
        } else {
            match spec.with_rays(l0, spec.mu0()) {
                Ok(s) => raw_pairs(&s, m, &mut Vec::new()).into_iter().map(|p| (p.lam0, p.lam1)).collect(),
                Err(_) => continue,
            }
        };
        let assign = match_tracks(&tracks, &here);
        tracks = here
            .iter()
            .zip(assign)
            .map(|(&(lam0, lam1), a)| Track { lam0, lam1, origin: a.and_then(|i| tracks[i].origin) })
            .collect();
    }
    let assign = if steps == 0 { match_tracks(&tracks, &final_pairs) } else { (0..final_pairs.len()).map(Some).collect() };
    let mut out = Vec::with_capacity(final_pairs.len());
    let mut kinds = Vec::with_capacity(final_pairs.len());
    for (j, &(lam0, lam1)) in final_pairs.iter().enumerate() {
        let t = classify_type(lam0, lam1).ok();
        kinds.push(t);
        let origin = assign[j].and_then(|i| tracks[i].origin);
        out.push(match (origin, t) {
            (Some((ot, SequenceTag::Primary)), Some(t)) if ot == t => Some(SequenceTag::Primary),
            (Some(_), _) => Some(SequenceTag::Secondary),
            (None, _) => None,
        });
    }
    // newborn solutions and duplicate primaries: smaller exponent at the irregular end wins
    for j in 0..final_pairs.len() {
        let Some(t) = kinds[j] else {
            out[j].get_or_insert(SequenceTag::Secondary);
            continue;
        };
        let key = chexp_key(final_pairs[j].0, final_pairs[j].1, t);
        let rival_better = (0..final_pairs.len()).any(|i| {
            i != j
                && kinds[i] == Some(t)
                && out[i] != Some(SequenceTag::Secondary)
                && chexp_key(final_pairs[i].0, final_pairs[i].1, t) < key
        });
        if out[j].is_none() || (out[j] == Some(SequenceTag::Primary) && rival_better) {
            out[j] = Some(if rival_better { SequenceTag::Secondary } else { SequenceTag::Primary });
        }
    }
    out.into_iter().map(|t| t.unwrap_or(SequenceTag::Secondary)).collect()
}
