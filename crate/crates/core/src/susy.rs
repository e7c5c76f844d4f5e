//! Darboux partners built from nodeless seed solutions.
//!
//! With `W = psi'/psi` for a factorization function `psi` at energy `eps`,
//! the partner of `V` is `V - 2 (ln|psi|)'' = -V + 2 eps + 2 W^2`. Several
//! factorization functions combine through their Wronskian; writing
//! `psi_i^(j) = psi_i (A_j + B_j W_i)` with coefficients generated by the
//! Schrodinger equation,
//!
//! ```text
//! (ln|Wr|)'' = sum_i (V - eps_i - W_i^2) + (ln|det[A_j + B_j W_i]|)''
//! ```
//!
//! For one and two functions the last term is available in closed form; longer
//! chains differentiate it numerically on a uniform grid.

use serde::Serialize;

use crate::charexp::{SeedSolution, SolType};
use crate::error::{Error, Result};
use crate::liouville::{self, LiouvilleMap};
use crate::params::PotentialSpec;
use crate::seedsol::{self, SeedWavefunction};
use crate::spectrum::{self, Spectrum, Window};

/// Potential and partner on a common set of `x` nodes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartnerSamples {
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub v_hat: Vec<f64>,
}

/// Base potential and, per factorization function, `W` and the sign of its Jacobi factor.
struct Pointwise {
    v: Vec<f64>,
    w: Vec<Vec<f64>>,
    sign: Vec<Vec<f64>>,
}

fn pointwise(spec: &PotentialSpec, ffs: &[SeedSolution], xs: &[f64]) -> Result<Pointwise> {
    let ts = LiouvilleMap::new(spec).t_grid(xs)?;
    let wfs: Vec<SeedWavefunction> = ffs.iter().map(|f| SeedWavefunction::new(spec, f)).collect();
    let mut v = Vec::with_capacity(xs.len());
    let mut w = vec![Vec::with_capacity(xs.len()); ffs.len()];
    let mut sign = vec![Vec::with_capacity(xs.len()); ffs.len()];
    for &t in &ts {
        let (z, zc) = liouville::split_of_t(t);
        v.push(liouville::potential_split(spec, z, zc));
        for (i, wf) in wfs.iter().enumerate() {
            w[i].push(wf.log_deriv_x(z, zc));
            sign[i].push(wf.jacobi(z, zc).signum());
        }
    }
    Ok(Pointwise { v, w, sign })
}

/// Position of the first interior zero of a seed solution, if any.
fn first_node(spec: &PotentialSpec, ff: &SeedSolution) -> Result<Option<f64>> {
    match seedsol::interior_zeros(ff.lam1, ff.lam0, ff.m).first() {
        Some(&eta) => Ok(Some(LiouvilleMap::new(spec).x_of_z(0.5 * (eta + 1.0))?)),
        None => Ok(None),
    }
}

/// Single-step partner from the closed-form logarithmic derivative.
pub fn darboux_partner(spec: &PotentialSpec, ff: &SeedSolution, xs: &[f64]) -> Result<PartnerSamples> {
    if let Some(x) = first_node(spec, ff)? {
        return Err(Error::NodeDetected(x));
    }
    let p = pointwise(spec, std::slice::from_ref(ff), xs)?;
    let v_hat = p.v.iter().zip(&p.w[0]).map(|(&v, &w)| -v + 2.0 * ff.eps + 2.0 * w * w).collect();
    Ok(PartnerSamples { x: xs.to_vec(), v: p.v, v_hat })
}

/// Single-step partner from samples of `ln|psi|` and `sign(psi)` on a uniform grid
/// with spacing `h`; the second derivative uses five-point differences (three-point at the ends).
pub fn darboux_partner_fd(v: &[f64], ln_abs: &[f64], sign: &[f64], xs: &[f64]) -> Result<Vec<f64>> {
    if let Some(i) = sign.windows(2).position(|s| s[0] * s[1] < 0.0) {
        return Err(Error::NodeDetected(xs[i]));
    }
    let d2 = second_derivative(ln_abs, xs[1] - xs[0]);
    Ok(v.iter().zip(d2).map(|(&v, d)| v - 2.0 * d).collect())
}

fn second_derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let h2 = h * h;
    (0..n)
        .map(|i| {
            if i >= 2 && i + 2 < n {
                (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h2)
            } else if i >= 1 && i + 1 < n {
                (f[i - 1] - 2.0 * f[i] + f[i + 1]) / h2
            } else if i == 0 {
                (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2
            } else {
                (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2
            }
        })
        .collect()
}

fn first_derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    (0..n)
        .map(|i| {
            if i >= 2 && i + 2 < n {
                (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h)
            } else if i >= 1 && i + 1 < n {
                (f[i + 1] - f[i - 1]) / (2.0 * h)
            } else if i == 0 {
                (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
            } else {
                (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h)
            }
        })
        .collect()
}

fn check_energies(ffs: &[SeedSolution]) -> Result<()> {
    for i in 0..ffs.len() {
        for j in 0..i {
            if (ffs[i].eps - ffs[j].eps).abs() <= 1e-10 * (1.0 + ffs[i].eps.abs()) {
                return Err(Error::RepeatedEnergy);
            }
        }
    }
    Ok(())
}

/// Multi-step partner `V - 2 (ln|Wr(psi_1..psi_k)|)''`.
///
/// Chains of length three or more need a uniform grid.
pub fn crum_partner(spec: &PotentialSpec, ffs: &[SeedSolution], xs: &[f64]) -> Result<PartnerSamples> {
    check_energies(ffs)?;
    match ffs.len() {
        0 => {
            let v = spectrum::sample_spec(spec, xs)?;
            Ok(PartnerSamples { x: xs.to_vec(), v_hat: v.clone(), v })
        }
        1 => darboux_partner(spec, &ffs[0], xs),
        2 => crum_pair(spec, ffs, xs),
        _ => crum_partner_fd(spec, ffs, xs),
    }
}

fn wronskian_sign_change(xs: &[f64], signs: impl Iterator<Item = f64>) -> Result<()> {
    let s: Vec<f64> = signs.collect();
    match s.windows(2).position(|p| p[0] * p[1] <= 0.0) {
        Some(i) => Err(Error::WronskianNode(xs[i])),
        None => Ok(()),
    }
}

// det = W2 - W1 = D, D' = (e1 - e2) - D S with S = W1 + W2
fn crum_pair(spec: &PotentialSpec, ffs: &[SeedSolution], xs: &[f64]) -> Result<PartnerSamples> {
    let p = pointwise(spec, ffs, xs)?;
    let (e1, e2) = (ffs[0].eps, ffs[1].eps);
    let n = xs.len();
    wronskian_sign_change(xs, (0..n).map(|k| p.sign[0][k] * p.sign[1][k] * (p.w[1][k] - p.w[0][k])))?;
    let v_hat = (0..n)
        .map(|k| {
            let (v, w1, w2) = (p.v[k], p.w[0][k], p.w[1][k]);
            let d = w2 - w1;
            let s = w1 + w2;
            let dp = (e1 - e2) - d * s;
            let sp = 2.0 * v - e1 - e2 - w1 * w1 - w2 * w2;
            let ln_det2 = -(e1 - e2) * dp / (d * d) - sp;
            let sum = (v - e1 - w1 * w1) + (v - e2 - w2 * w2);
            v - 2.0 * (sum + ln_det2)
        })
        .collect();
    Ok(PartnerSamples { x: xs.to_vec(), v: p.v, v_hat })
}

/// Chain of any length on a uniform grid; `(ln|det|)''` and the derivatives of
/// `V` entering the recurrence are taken by finite differences.
pub fn crum_partner_fd(spec: &PotentialSpec, ffs: &[SeedSolution], xs: &[f64]) -> Result<PartnerSamples> {
    check_energies(ffs)?;
    let n = xs.len();
    if n < 8 {
        return Err(Error::DomainExceeded("grid too short for differencing"));
    }
    let h = xs[1] - xs[0];
    if xs.windows(2).any(|p| ((p[1] - p[0]) - h).abs() > 1e-9 * h.abs().max(1.0)) {
        return Err(Error::DomainExceeded("uniform grid"));
    }
    let k = ffs.len();
    if k > 6 {
        return Err(Error::DomainExceeded("chains longer than six"));
    }
    let p = pointwise(spec, ffs, xs)?;
    // derivatives of V up to order k - 2
    let mut vder = vec![p.v.clone()];
    for _ in 1..k.saturating_sub(1) {
        let last = vder.last().unwrap();
        vder.push(first_derivative(last, h));
    }
    let mut ln_det = vec![0.0; n];
    let mut sign_det = vec![0.0; n];
    for pt in 0..n {
        let mut mat = nalgebra::DMatrix::<f64>::zeros(k, k);
        for (i, f) in ffs.iter().enumerate() {
            let w = p.w[i][pt];
            let vm = |order: usize| vder.get(order).map_or(0.0, |d| d[pt]);
            mat[(i, 0)] = 1.0;
            for j in 1..k {
                let (an, bn) = if j == 1 { (0.0, 1.0) } else { recurrence_step(j, &vm, f.eps) };
                mat[(i, j)] = an + bn * w;
            }
        }
        let det = mat.determinant();
        ln_det[pt] = det.abs().ln();
        let s: f64 = (0..k).map(|i| p.sign[i][pt]).product();
        sign_det[pt] = s * det.signum();
    }
    wronskian_sign_change(xs, sign_det.into_iter())?;
    let d2 = second_derivative(&ln_det, h);
    let v_hat = (0..n)
        .map(|pt| {
            let sum: f64 = (0..k).map(|i| p.v[pt] - ffs[i].eps - p.w[i][pt].powi(2)).sum();
            p.v[pt] - 2.0 * (sum + d2[pt])
        })
        .collect();
    Ok(PartnerSamples { x: xs.to_vec(), v: p.v, v_hat })
}

/// `(A_j, B_j)` for `j >= 2` from `A_{j+1} = A_j' + B_j (V - eps)`, `B_{j+1} = A_j + B_j'`.
/// Closed forms through `j = 5` in terms of `V` and its derivatives.
fn recurrence_step(j: usize, vm: &dyn Fn(usize) -> f64, eps: f64) -> (f64, f64) {
    let u = vm(0) - eps;
    match j {
        2 => (u, 0.0),
        3 => (vm(1), u),
        4 => (vm(2) + u * u, 2.0 * vm(1)),
        5 => (vm(3) + 4.0 * u * vm(1), vm(2) + u * u + 2.0 * vm(2)),
        _ => (f64::NAN, f64::NAN),
    }
}

/// What a chain is expected to do to the bound-state spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ExpectedChange {
    Isospectral,
    /// a new level appears at this energy
    InsertAt(f64),
    /// the ground level disappears
    DeleteGround,
}

/// Change produced by one nodeless factorization function.
pub fn expected_change(ff: &SeedSolution) -> ExpectedChange {
    match ff.sol_type {
        SolType::A | SolType::B => ExpectedChange::Isospectral,
        SolType::C => ExpectedChange::DeleteGround,
        SolType::D => ExpectedChange::InsertAt(ff.eps),
    }
}

/// `(x, V)` samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Profile {
    pub x: Vec<f64>,
    pub v: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartnerResult {
    pub base_profile: Profile,
    pub partner_profile: Profile,
    pub ff_chain: Vec<SeedSolution>,
    pub base_spectrum: Vec<f64>,
    pub partner_spectrum: Vec<f64>,
    pub expected_change: Vec<ExpectedChange>,
}

/// Build the partner of `spec` for a chain of factorization functions and
/// compute both spectra with the numeric oracle.
pub fn partner_result(spec: &PotentialSpec, ffs: &[SeedSolution], profile_points: usize) -> Result<PartnerResult> {
    check_energies(ffs)?;
    let (xl, xr) = liouville::tail_window(spec, 1e-6)?;
    let upper = {
        let (vm, vp) = liouville::exact_asymptotes(spec);
        vm.min(vp)
    };
    let base: Spectrum = spectrum::spec_spectrum(spec)?;
    let partner_sampler = |xs: &[f64]| crum_partner(spec, ffs, xs).map(|p| p.v_hat);
    let pw: Window = spectrum::window_for(&partner_sampler, xl, xr, upper)?;
    // the partner window must be at least as wide as the base one
    let pw = Window { xmin: pw.xmin.min(base.window.xmin), xmax: pw.xmax.max(base.window.xmax), ..pw };
    let partner = spectrum::schrodinger_spectrum(&partner_sampler, pw, None)?;
    let xs = liouville::uniform_grid(xl, xr, profile_points.max(2));
    let samples = crum_partner(spec, ffs, &xs)?;
    Ok(PartnerResult {
        base_profile: Profile { x: xs.clone(), v: samples.v },
        partner_profile: Profile { x: xs, v: samples.v_hat },
        ff_chain: ffs.to_vec(),
        base_spectrum: base.levels,
        partner_spectrum: partner.levels,
        expected_change: ffs.iter().map(expected_change).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoReport {
    pub pass: bool,
    pub expected: Vec<f64>,
    pub observed: Vec<f64>,
    /// largest relative deviation over matched levels
    pub max_deviation: f64,
    /// levels present on one side only (expected minus observed count mismatch)
    pub unmatched: Vec<f64>,
}

/// Relative tolerance per level.
pub const ISO_TOL: f64 = 1e-3;

/// Compare the partner spectrum with the base spectrum transformed by the expected changes.
pub fn isospectral_report(pr: &PartnerResult) -> IsoReport {
    let mut expected = pr.base_spectrum.clone();
    for c in &pr.expected_change {
        match *c {
            ExpectedChange::Isospectral => {}
            ExpectedChange::InsertAt(e) => expected.push(e),
            ExpectedChange::DeleteGround => {
                if !expected.is_empty() {
                    let i = (0..expected.len()).min_by(|&a, &b| expected[a].partial_cmp(&expected[b]).unwrap()).unwrap();
                    expected.remove(i);
                }
            }
        }
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
    }
    let observed = pr.partner_spectrum.clone();
    let k = expected.len().min(observed.len());
    let max_deviation = (0..k).map(|i| (observed[i] - expected[i]).abs() / expected[i].abs()).fold(0.0, f64::max);
    let unmatched: Vec<f64> = if expected.len() > k { expected[k..].to_vec() } else { observed[k..].to_vec() };
    IsoReport { pass: unmatched.is_empty() && max_deviation <= ISO_TOL, expected, observed, max_deviation, unmatched }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charexp::enumerate_solutions;

    fn e1() -> PotentialSpec {
        PotentialSpec::new(0.0, 0.25, 0.0, 8.0).unwrap()
    }

    fn pick(spec: &PotentialSpec, t: SolType, m: u32) -> SeedSolution {
        enumerate_solutions(spec, m).into_iter().find(|s| s.sol_type == t).unwrap()
    }

    #[test]
    fn single_step_routes_agree() {
        let spec = e1();
        let ff = pick(&spec, SolType::B, 1);
        let xs = liouville::uniform_grid(-6.0, 6.0, 2401);
        let a = darboux_partner(&spec, &ff, &xs).unwrap();
        let wf = SeedWavefunction::new(&spec, &ff);
        let ts = LiouvilleMap::new(&spec).t_grid(&xs).unwrap();
        let mut ln = Vec::new();
        let mut sg = Vec::new();
        for &t in &ts {
            let (z, w) = liouville::split_of_t(t);
            // psi = rho^(1/4) Phi
            let rho = spec.tp.eval_split(z, w) / (4.0 * z * z * w * w);
            ln.push(0.25 * rho.ln() + wf.ln_abs(z, w));
            sg.push(wf.jacobi(z, w).signum());
        }
        let b = darboux_partner_fd(&a.v, &ln, &sg, &xs).unwrap();
        for k in 2..xs.len() - 2 {
            assert!((a.v_hat[k] - b[k]).abs() < 1e-6 * (1.0 + a.v_hat[k].abs()), "{k}: {} {}", a.v_hat[k], b[k]);
        }
    }

    #[test]
    fn nodes_are_rejected() {
        let spec = e1();
        let c1 = pick(&spec, SolType::C, 1);
        let xs = liouville::uniform_grid(-3.0, 3.0, 50);
        assert!(matches!(darboux_partner(&spec, &c1, &xs), Err(Error::NodeDetected(_))));
    }

    #[test]
    fn one_function_chain_is_darboux() {
        let spec = e1();
        let ff = pick(&spec, SolType::A, 0);
        let xs = liouville::uniform_grid(-5.0, 5.0, 201);
        assert_eq!(crum_partner(&spec, &[ff], &xs).unwrap(), darboux_partner(&spec, &ff, &xs).unwrap());
    }

    #[test]
    fn pair_is_symmetric_and_matches_differencing() {
        let spec = e1();
        let a0 = pick(&spec, SolType::A, 0);
        let b1 = pick(&spec, SolType::B, 1);
        let xs = liouville::uniform_grid(-6.0, 6.0, 4801);
        let p = crum_partner(&spec, &[a0, b1], &xs).unwrap();
        let q = crum_partner(&spec, &[b1, a0], &xs).unwrap();
        for k in 0..xs.len() {
            assert!((p.v_hat[k] - q.v_hat[k]).abs() <= 1e-9 * (1.0 + p.v_hat[k].abs()));
        }
        let f = crum_partner_fd(&spec, &[a0, b1], &xs).unwrap();
        for k in 2..xs.len() - 2 {
            assert!((p.v_hat[k] - f.v_hat[k]).abs() <= 1e-5 * (1.0 + p.v_hat[k].abs()), "{k}");
        }
        assert_eq!(crum_partner(&spec, &[a0, a0], &xs).unwrap_err(), Error::RepeatedEnergy);
    }

    #[test]
    fn three_step_chain_is_symmetric() {
        let spec = e1();
        let chain = [pick(&spec, SolType::A, 0), pick(&spec, SolType::B, 0), pick(&spec, SolType::B, 1)];
        let xs = liouville::uniform_grid(-5.0, 5.0, 2001);
        let p = crum_partner(&spec, &chain, &xs).unwrap();
        let q = crum_partner(&spec, &[chain[2], chain[0], chain[1]], &xs).unwrap();
        for k in 0..xs.len() {
            assert!((p.v_hat[k] - q.v_hat[k]).abs() <= 1e-9 * (1.0 + p.v_hat[k].abs()));
        }
    }

    #[test]
    fn partner_keeps_asymptotes() {
        let spec = PotentialSpec::new(-0.6, 0.3, 1.4, 6.0).unwrap();
        let ff = pick(&spec, SolType::A, 0);
        let (xl, xr) = liouville::tail_window(&spec, 1e-8).unwrap();
        let p = darboux_partner(&spec, &ff, &[xl - 20.0, xr + 20.0]).unwrap();
        let (vm, vp) = liouville::exact_asymptotes(&spec);
        assert!((p.v_hat[0] - vm).abs() < 1e-5);
        assert!((p.v_hat[1] - vp).abs() < 1e-5);
    }

    #[test]
    fn report_flags_perturbed_partner() {
        let spec = e1();
        let ff = pick(&spec, SolType::B, 1);
        let pr = partner_result(&spec, &[ff], 101).unwrap();
        assert!(isospectral_report(&pr).pass);
        let mut bad = pr.clone();
        for e in &mut bad.partner_spectrum {
            *e *= 1.01;
        }
        assert!(!isospectral_report(&bad).pass);
    }

    #[test]
    fn d_type_inserts_level() {
        let spec = e1();
        let ff = enumerate_solutions(&spec, 0).into_iter().find(|s| s.sol_type == SolType::D && s.nodeless.is_nodeless()).unwrap();
        assert!((ff.eps + 36.0).abs() < 1e-9);
        let pr = partner_result(&spec, &[ff], 11).unwrap();
        assert_eq!(pr.partner_spectrum.len(), 5);
        assert!((pr.partner_spectrum[0] + 36.0).abs() < 1e-2, "{:?}", pr.partner_spectrum);
        assert!(isospectral_report(&pr).pass);
    }

    #[test]
    fn ground_state_deletion() {
        let spec = e1();
        let ff = pick(&spec, SolType::C, 0);
        let pr = partner_result(&spec, &[ff], 11).unwrap();
        assert_eq!(pr.partner_spectrum.len(), 3);
        let r = isospectral_report(&pr);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn two_step_isospectral() {
        let spec = e1();
        let chain = [pick(&spec, SolType::A, 0), pick(&spec, SolType::B, 1)];
        let r = isospectral_report(&partner_result(&spec, &chain, 11).unwrap());
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn deletion_is_undone_by_reciprocal() {
        // -ln|psi0| factorizes the partner at the deleted energy and restores V
        let spec = e1();
        let g = pick(&spec, SolType::C, 0);
        let xs = liouville::uniform_grid(-5.0, 5.0, 4001);
        let p = darboux_partner(&spec, &g, &xs).unwrap();
        let wf = SeedWavefunction::new(&spec, &g);
        let ts = LiouvilleMap::new(&spec).t_grid(&xs).unwrap();
        let ln: Vec<f64> = ts
            .iter()
            .map(|&t| {
                let (z, w) = liouville::split_of_t(t);
                let rho = spec.tp.eval_split(z, w) / (4.0 * z * z * w * w);
                -(0.25 * rho.ln() + wf.ln_abs(z, w))
            })
            .collect();
        let back = darboux_partner_fd(&p.v_hat, &ln, &vec![1.0; xs.len()], &xs).unwrap();
        for k in 0..xs.len() {
            assert!((back[k] - p.v[k]).abs() < 1e-5 * (1.0 + p.v[k].abs()), "{k}");
        }
    }
}
