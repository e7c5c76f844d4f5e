//! Seed wavefunctions: Jacobi polynomials with arbitrary real indexes times
//! endpoint powers.

use crate::charexp::SeedSolution;
use crate::error::{Error, Result};
use crate::liouville;
use crate::params::PotentialSpec;

/// Generalized binomial coefficient `C(a, k)` for real `a`.
pub fn binom(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a - i as f64) / (i + 1) as f64)
}

/// `P_m^{(alpha, beta)}(eta)` from the explicit finite sum.
pub fn jacobi_explicit(alpha: f64, beta: f64, m: u32, eta: f64) -> f64 {
    let (u, v) = (0.5 * (eta - 1.0), 0.5 * (eta + 1.0));
    let n = m as f64;
    (0..=m).map(|s| binom(n + alpha, m - s) * binom(n + beta, s) * u.powi(s as i32) * v.powi((m - s) as i32)).sum()
}

/// `P_m^{(alpha, beta)}(eta)` for real indexes, by the three-term recurrence.
///
/// Where the recurrence divides by a (nearly) vanishing factor the explicit
/// sum is used instead.
pub fn jacobi_eval(alpha: f64, beta: f64, m: u32, eta: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let ab = alpha + beta;
    let degenerate = (1..=m).any(|k| {
        let k = k as f64;
        (k + ab).abs() < 1e-6 || (2.0 * k + ab - 2.0).abs() < 1e-6
    });
    if degenerate {
        return jacobi_explicit(alpha, beta, m, eta);
    }
    let mut p0 = 1.0;
    let mut p1 = 0.5 * (alpha - beta) + 0.5 * (ab + 2.0) * eta;
    for k in 2..=m {
        let k = k as f64;
        let c = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * eta + alpha * alpha - beta * beta);
        let a3 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c;
        let p2 = (a2 * p1 - a3 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// `d/d eta P_m^{(alpha, beta)}(eta)`.
pub fn jacobi_deriv(alpha: f64, beta: f64, m: u32, eta: f64) -> f64 {
    if m == 0 {
        return 0.0;
    }
    0.5 * (m as f64 + alpha + beta + 1.0) * jacobi_eval(alpha + 1.0, beta + 1.0, m - 1, eta)
}

/// `P(1)` and `P(-1)`.
pub fn jacobi_endpoints(alpha: f64, beta: f64, m: u32) -> (f64, f64) {
    let n = m as f64;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    (binom(n + alpha, m), sign * binom(n + beta, m))
}

/// A seed solution bound to its potential.
#[derive(Debug, Clone, Copy)]
pub struct SeedWavefunction {
    pub spec: PotentialSpec,
    pub sol: SeedSolution,
    /// characteristic exponent at `z = 0`
    pub rho0: f64,
    /// characteristic exponent at `z = 1`
    pub rho1: f64,
}

impl SeedWavefunction {
    pub fn new(spec: &PotentialSpec, sol: &SeedSolution) -> Self {
        SeedWavefunction { spec: *spec, sol: *sol, rho0: 0.5 * (sol.lam0 + 1.0), rho1: 0.5 * (sol.lam1 + 1.0) }
    }

    /// Jacobi factor at `eta = z - w`.
    pub fn jacobi(&self, z: f64, w: f64) -> f64 {
        jacobi_eval(self.sol.lam1, self.sol.lam0, self.sol.m, z - w)
    }

    pub fn value(&self, z: f64) -> Result<f64> {
        if !(z > 0.0 && z < 1.0) {
            return Err(Error::OutOfInterval(z));
        }
        let w = 1.0 - z;
        Ok(z.powf(self.rho0) * w.powf(self.rho1) * self.jacobi(z, w))
    }

    /// `ln |Phi|` from `z` and `w` given separately.
    pub fn ln_abs(&self, z: f64, w: f64) -> f64 {
        self.rho0 * z.ln() + self.rho1 * w.ln() + self.jacobi(z, w).abs().ln()
    }

    /// `Phi' / Phi` with respect to `z`.
    pub fn log_deriv_z(&self, z: f64, w: f64) -> f64 {
        let (a, b, m) = (self.sol.lam1, self.sol.lam0, self.sol.m);
        let eta = z - w;
        self.rho0 / z - self.rho1 / w + 2.0 * jacobi_deriv(a, b, m, eta) / jacobi_eval(a, b, m, eta)
    }

    /// Logarithmic derivative of the Liouville-gauge wavefunction
    /// `psi = rho^(1/4) Phi` with respect to `x`.
    pub fn log_deriv_x(&self, z: f64, w: f64) -> f64 {
        let (a, b, m) = (self.sol.lam1, self.sol.lam0, self.sol.m);
        let tp = &self.spec.tp;
        let t = tp.eval_split(z, w);
        let zw = z * w;
        let eta = z - w;
        let p_ratio = if m == 0 { 0.0 } else { jacobi_deriv(a, b, m, eta) / jacobi_eval(a, b, m, eta) };
        let dt = tp.deriv_split(z, w) * zw / (4.0 * t) + 0.5 * self.sol.lam0 * w - 0.5 * self.sol.lam1 * z + 2.0 * zw * p_ratio;
        2.0 * dt / t.sqrt()
    }
}

pub fn seed_wavefunction(spec: &PotentialSpec, sol: &SeedSolution, z: f64) -> Result<f64> {
    SeedWavefunction::new(spec, sol).value(z)
}

/// Interior grid clustered towards both ends, avoiding `1e-4` of each.
pub fn chebyshev_interior(n: usize) -> Vec<f64> {
    let lo = 1e-4;
    (0..n)
        .map(|k| {
            let c = 0.5 * (1.0 - (std::f64::consts::PI * (k as f64 + 0.5) / n as f64).cos());
            lo + (1.0 - 2.0 * lo) * c
        })
        .collect()
}

/// Relative residual of the rational equation `Phi'' + I(z; eps) Phi = 0`.
///
/// `Phi''` comes from a seven-point stencil with step proportional to the
/// distance to the nearer end. Each point is scaled by
/// `max|Phi| (|I| + 1 / min(z, 1 - z)^2)` over its stencil.
pub fn rcsle_residual(spec: &PotentialSpec, sol: &SeedSolution, grid: &[f64]) -> Result<f64> {
    const C: [f64; 4] = [-49.0 / 18.0, 1.5, -0.15, 1.0 / 90.0];
    let wf = SeedWavefunction::new(spec, sol);
    let mut worst: f64 = 0.0;
    for &z in grid {
        if !(z >= 1e-4 && z <= 1.0 - 1e-4) {
            return Err(Error::OutOfInterval(z));
        }
        let edge = z.min(1.0 - z);
        // large exponents vary on a scale much shorter than the distance to the edge
        let rate = wf.rho0.abs() / z + wf.rho1.abs() / (1.0 - z) + 2.0 * (sol.m as f64 + 1.0) / edge;
        let h = (2e-3 * edge).min(0.02 / rate);
        // stencil values rescaled by the largest power product, which may over- or underflow
        let zs: Vec<f64> = (-3..=3).map(|k| z + k as f64 * h).collect();
        let logs: Vec<f64> = zs.iter().map(|&x| wf.rho0 * x.ln() + wf.rho1 * (1.0 - x).ln()).collect();
        let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let v: Vec<f64> = zs.iter().zip(&logs).map(|(&x, &l)| (l - top).exp() * wf.jacobi(x, 1.0 - x)).collect();
        let f0 = v[3];
        let mut d2 = C[0] * f0;
        let mut big = f0.abs();
        for k in 1..4 {
            let (a, b) = (v[3 + k], v[3 - k]);
            d2 += C[k] * (a + b);
            big = big.max(a.abs()).max(b.abs());
        }
        d2 /= h * h;
        let inv = liouville::bose_invariant(spec, z, sol.eps)?;
        let scale = big * (inv.abs() + 1.0 / (edge * edge));
        if scale > 0.0 {
            worst = worst.max((d2 + inv * f0).abs() / scale);
        }
    }
    Ok(worst)
}

/// Sign changes of `P_m^{(lam1, lam0)}(2z - 1)` on `0 < z < 1`.
pub fn count_interior_zeros(_spec: &PotentialSpec, sol: &SeedSolution) -> usize {
    interior_zeros(sol.lam1, sol.lam0, sol.m).len()
}

/// Zeros of `P_m^{(alpha, beta)}` in `(-1, 1)`, located by a Chebyshev scan and bisection.
pub fn interior_zeros(alpha: f64, beta: f64, m: u32) -> Vec<f64> {
    if m == 0 {
        return Vec::new();
    }
    let n = 64 * (m as usize + 2);
    let p = |x: f64| jacobi_eval(alpha, beta, m, x);
    let (p_hi, p_lo) = jacobi_endpoints(alpha, beta, m);
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(n + 2);
    if p_lo != 0.0 {
        pts.push((-1.0, p_lo));
    }
    for k in (0..n).rev() {
        let x = (std::f64::consts::PI * (k as f64 + 0.5) / n as f64).cos();
        pts.push((x, p(x)));
    }
    if p_hi != 0.0 {
        pts.push((1.0, p_hi));
    }
    let mut zeros = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for &(x, v) in &pts {
        if v == 0.0 {
            if x > -1.0 && x < 1.0 {
                zeros.push(x);
            }
            last = None;
            continue;
        }
        if let Some((xl, vl)) = last {
            if vl.signum() != v.signum() {
                let (mut a, mut b, mut fa) = (xl, x, vl);
                for _ in 0..200 {
                    let c = 0.5 * (a + b);
                    if c <= a || c >= b {
                        break;
                    }
                    let fc = p(c);
                    if fc == 0.0 {
                        a = c;
                        b = c;
                        break;
                    }
                    if fc.signum() == fa.signum() {
                        a = c;
                        fa = fc;
                    } else {
                        b = c;
                    }
                }
                let root = 0.5 * (a + b);
                if root > -1.0 && root < 1.0 {
                    zeros.push(root);
                }
            }
        }
        last = Some((x, v));
    }
    zeros
}
