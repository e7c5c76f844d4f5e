//! Bose invariant, Schwarzian derivative, the Liouville change of variable
//! and the resulting potential on the line.
//!
//! The map `x(z)` solves `dx/dz = sqrt(rho(z))` with `z = 1/2` at `x = 0`.
//! Internally everything runs in the logit variable `t = ln(z / (1 - z))`,
//! where `dx/dt = sqrt(T(z)) / 2` is smooth and bounded away from zero, so
//! neither endpoint needs special treatment beyond a short series tail.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::PotentialSpec;
use crate::quad;

/// Below this distance from an endpoint the map uses its leading series.
pub const SERIES_SWITCH: f64 = 1e-6;
/// Points at which asymptotic values are reported.
pub const ASYMPTOTIC_Z: f64 = 1e-8;

/// `z` and `w = 1 - z` for a given logit.
pub fn split_of_t(t: f64) -> (f64, f64) {
    if t >= 0.0 {
        let e = (-t).exp();
        (1.0 / (1.0 + e), e / (1.0 + e))
    } else {
        let e = t.exp();
        (e / (1.0 + e), 1.0 / (1.0 + e))
    }
}

pub fn t_of_z(z: f64) -> f64 {
    (z / (1.0 - z)).ln()
}

fn check(z: f64) -> Result<()> {
    if z > 0.0 && z < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfInterval(z))
    }
}

/// `rho(z) = T(z) / (4 z^2 (1-z)^2)`.
pub fn density(spec: &PotentialSpec, z: f64) -> Result<f64> {
    check(z)?;
    let w = 1.0 - z;
    Ok(spec.tp.eval(z) / (4.0 * z * z * w * w))
}

/// Schwarzian derivative `{z, x}` in closed form.
pub fn schwarzian(spec: &PotentialSpec, z: f64) -> Result<f64> {
    check(z)?;
    Ok(schwarzian_split(spec, z, 1.0 - z))
}

pub fn schwarzian_split(spec: &PotentialSpec, z: f64, w: f64) -> f64 {
    let tp = &spec.tp;
    let t = tp.eval_split(z, w);
    let zw = z * w;
    -2.0 / t - 2.0 * tp.a2 * zw * zw / (t * t) + 2.0 * zw * (tp.a2 + (tp.c1 - tp.c0) * (z - w)) / (t * t)
        + 2.5 * tp.delta_t * zw * zw / (t * t * t)
}

/// Energy-independent part of the Bose invariant.
pub fn bose_invariant0(spec: &PotentialSpec, z: f64) -> Result<f64> {
    check(z)?;
    let w = 1.0 - z;
    let (h00, h01, f0) = rational_coeffs(spec);
    Ok(-h00 / (4.0 * z * z * w) - h01 / (4.0 * z * w * w) + f0 / (4.0 * z * w))
}

/// Full Bose invariant `I0(z) + rho(z) eps`.
pub fn bose_invariant(spec: &PotentialSpec, z: f64, eps: f64) -> Result<f64> {
    Ok(bose_invariant0(spec, z)? + density(spec, z)? * eps)
}

fn rational_coeffs(spec: &PotentialSpec) -> (f64, f64, f64) {
    let l0 = spec.lambda0();
    let mu = spec.mu0();
    (l0 * l0 - 1.0, -1.0, mu * mu - 1.0)
}

/// `I0 / rho`, free of endpoint poles.
fn invariant_over_density(spec: &PotentialSpec, z: f64, w: f64) -> f64 {
    let (h00, h01, f0) = rational_coeffs(spec);
    (-h00 * w - h01 * z + f0 * z * w) / spec.tp.eval_split(z, w)
}

/// Potential `V = -I0 / rho - {z, x} / 2` at a point of the unit interval.
pub fn potential(spec: &PotentialSpec, z: f64) -> Result<f64> {
    check(z)?;
    Ok(potential_split(spec, z, 1.0 - z))
}

pub fn potential_split(spec: &PotentialSpec, z: f64, w: f64) -> f64 {
    -invariant_over_density(spec, z, w) - 0.5 * schwarzian_split(spec, z, w)
}

pub fn potential_at_t(spec: &PotentialSpec, t: f64) -> f64 {
    let (z, w) = split_of_t(t);
    potential_split(spec, z, w)
}

/// Exact limits `(V(-inf), V(+inf))`.
pub fn exact_asymptotes(spec: &PotentialSpec) -> (f64, f64) {
    (spec.lambda0().powi(2) / spec.c0(), 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    XOfZ,
    ZOfX,
}

/// Evaluate the change of variable in either direction.
pub fn map_variable(spec: &PotentialSpec, direction: Direction, value: f64) -> Result<f64> {
    let map = LiouvilleMap::new(spec);
    match direction {
        Direction::XOfZ => {
            check(value)?;
            map.x_of_t(t_of_z(value))
        }
        Direction::ZOfX => Ok(split_of_t(map.t_of_x(value)?).0),
    }
}

/// The change of variable for one tangent polynomial.
#[derive(Debug, Clone, Copy)]
pub struct LiouvilleMap {
    spec: PotentialSpec,
    slope_min: f64,
    slope_max: f64,
}

impl LiouvilleMap {
    pub fn new(spec: &PotentialSpec) -> Self {
        let [q2, q1, _] = spec.tp.quadratic();
        let mut lo = spec.c0().min(1.0);
        let mut hi = spec.c0().max(1.0);
        if q2 != 0.0 {
            let zv = -q1 / (2.0 * q2);
            if zv > 0.0 && zv < 1.0 {
                let v = spec.tp.eval(zv);
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        LiouvilleMap { spec: *spec, slope_min: 0.5 * lo.sqrt(), slope_max: 0.5 * hi.sqrt() }
    }

    /// `dx/dt = sqrt(T) / 2`.
    pub fn slope(&self, t: f64) -> f64 {
        let (z, w) = split_of_t(t);
        0.5 * self.spec.tp.eval_split(z, w).sqrt()
    }

    /// `x(t_b) - x(t_a)`.
    pub fn increment(&self, ta: f64, tb: f64) -> Result<f64> {
        if (tb - ta).abs() <= 0.25 {
            return Ok(quad::gauss_legendre(|t| self.slope(t), ta, tb));
        }
        quad::integrate(|t| self.slope(t), ta, tb, 1e-14 * (1.0 + (tb - ta).abs()))
    }

    pub fn x_of_t(&self, t: f64) -> Result<f64> {
        let tp = &self.spec.tp;
        let (z, w) = split_of_t(t);
        if z < SERIES_SWITCH {
            // integrand ~ sqrt(c0)/2 (1 + q1 z / (2 c0))
            let ts = t_of_z(SERIES_SWITCH);
            let q1 = tp.c1 - tp.c0 - tp.a2;
            let xs = self.increment(0.0, ts)?;
            return Ok(xs + 0.5 * tp.c0.sqrt() * (t - ts) + q1 / (4.0 * tp.c0.sqrt()) * (z - SERIES_SWITCH));
        }
        if w < SERIES_SWITCH {
            // integrand ~ (1 - (d + 2) w / 2) / 2
            let ts = -t_of_z(SERIES_SWITCH);
            let xs = self.increment(0.0, ts)?;
            return Ok(xs + 0.5 * (t - ts) + (tp.d + 2.0) / 4.0 * (w - SERIES_SWITCH));
        }
        self.increment(0.0, t)
    }

    pub fn x_of_z(&self, z: f64) -> Result<f64> {
        check(z)?;
        self.x_of_t(t_of_z(z))
    }

    /// Invert `x(t)` by safeguarded Newton iteration inside a slope bracket.
    pub fn t_of_x(&self, x: f64) -> Result<f64> {
        self.t_of_x_from(x, 0.0, 0.0)
    }

    /// Same as [`t_of_x`](Self::t_of_x), starting from a known pair `x(t0) = x0`.
    pub fn t_of_x_from(&self, x: f64, t0: f64, x0: f64) -> Result<f64> {
        let dx = x - x0;
        if dx == 0.0 {
            return Ok(t0);
        }
        let (mut lo, mut hi) = if dx > 0.0 {
            (t0 + dx / self.slope_max, t0 + dx / self.slope_min)
        } else {
            (t0 + dx / self.slope_min, t0 + dx / self.slope_max)
        };
        let mut t = t0 + dx / self.slope(t0);
        if !(t > lo && t < hi) {
            t = 0.5 * (lo + hi);
        }
        // residual measured incrementally from the nearest known point
        let (mut tk, mut xk) = (t0, x0);
        for _ in 0..200 {
            let xt = xk + self.increment(tk, t)?;
            tk = t;
            xk = xt;
            let f = xt - x;
            if f.abs() <= 1e-15 * (1.0 + x.abs()) {
                return Ok(t);
            }
            if f > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let mut next = t - f / self.slope(t);
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - t).abs() <= 1e-15 * (1.0 + t.abs()) {
                return Ok(next);
            }
            t = next;
        }
        Err(Error::NonConvergence("inverse Liouville map"))
    }

    /// Logits for an ascending grid of `x` values, marching outward from the anchor.
    pub fn t_grid(&self, xs: &[f64]) -> Result<Vec<f64>> {
        let mut ts = vec![0.0; xs.len()];
        let split = xs.partition_point(|&x| x < 0.0);
        let (mut tp, mut xp) = (0.0, 0.0);
        for i in split..xs.len() {
            tp = self.t_of_x_from(xs[i], tp, xp)?;
            xp = xs[i];
            ts[i] = tp;
        }
        let (mut tp, mut xp) = (0.0, 0.0);
        for i in (0..split).rev() {
            tp = self.t_of_x_from(xs[i], tp, xp)?;
            xp = xs[i];
            ts[i] = tp;
        }
        Ok(ts)
    }
}

/// Potential sampled on an `x` grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialProfile {
    pub x_samples: Vec<f64>,
    pub z_samples: Vec<f64>,
    pub v_samples: Vec<f64>,
    pub v_plus_inf: f64,
    pub v_minus_inf: f64,
    pub z_anchor: f64,
}

impl PotentialProfile {
    /// Sample on `n` uniformly spaced points of `[xmin, xmax]`.
    pub fn uniform(spec: &PotentialSpec, xmin: f64, xmax: f64, n: usize) -> Result<Self> {
        Self::sample(spec, &uniform_grid(xmin, xmax, n))
    }

    pub fn sample(spec: &PotentialSpec, xs: &[f64]) -> Result<Self> {
        let map = LiouvilleMap::new(spec);
        let ts = map.t_grid(xs)?;
        let mut z_samples = Vec::with_capacity(xs.len());
        let mut v_samples = Vec::with_capacity(xs.len());
        for &t in &ts {
            let (z, w) = split_of_t(t);
            z_samples.push(z);
            v_samples.push(potential_split(spec, z, w));
        }
        let a = ASYMPTOTIC_Z;
        Ok(PotentialProfile {
            x_samples: xs.to_vec(),
            z_samples,
            v_samples,
            v_plus_inf: potential_split(spec, 1.0 - a, a),
            v_minus_inf: potential_split(spec, a, 1.0 - a),
            z_anchor: 0.5,
        })
    }
}

pub fn uniform_grid(xmin: f64, xmax: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![xmin];
    }
    let h = (xmax - xmin) / (n - 1) as f64;
    (0..n).map(|i| xmin + h * i as f64).collect()
}

/// Symmetric-ish window in which `|V - V(+-inf)|` stays below `tol` outside.
pub fn tail_window(spec: &PotentialSpec, tol: f64) -> Result<(f64, f64)> {
    let map = LiouvilleMap::new(spec);
    let (vm, vp) = exact_asymptotes(spec);
    let mut t_hi = 1.0;
    while (potential_at_t(spec, t_hi) - vp).abs() > tol || (potential_at_t(spec, t_hi + 2.0) - vp).abs() > tol {
        t_hi += 1.0;
        if t_hi > 700.0 {
            return Err(Error::NonConvergence("right tail"));
        }
    }
    let mut t_lo = -1.0;
    while (potential_at_t(spec, t_lo) - vm).abs() > tol || (potential_at_t(spec, t_lo - 2.0) - vm).abs() > tol {
        t_lo -= 1.0;
        if t_lo < -700.0 {
            return Err(Error::NonConvergence("left tail"));
        }
    }
    Ok((map.x_of_t(t_lo)?, map.x_of_t(t_hi)?))
}
