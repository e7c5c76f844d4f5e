//! Bound-state energies of `-psi'' + V psi = E psi` on the line.
//!
//! The operator is discretized with the three-point Laplacian on a uniform
//! grid with Dirichlet ends. The matrix is symmetric tridiagonal, so every
//! eigenvalue below a cutoff is isolated by Sturm-sequence bisection. Two
//! grids (`h` and `h/2`) are combined by Richardson extrapolation.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liouville::{self, PotentialProfile};
use crate::params::PotentialSpec;

/// Largest relative disagreement tolerated between extrapolated and fine-grid levels.
pub const RICHARDSON_TOL: f64 = 1e-3;

/// Uniform grid and energy cutoff for one computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub xmin: f64,
    pub xmax: f64,
    /// coarse spacing; the fine grid uses `h/2`
    pub h: f64,
    /// only levels strictly below this value are reported
    pub upper: f64,
}

impl Window {
    /// Interior nodes of the grid with spacing `h` (end points carry the Dirichlet condition).
    pub fn nodes(&self, h: f64) -> Vec<f64> {
        let n = ((self.xmax - self.xmin) / h).round() as usize;
        (1..n).map(|i| self.xmin + h * i as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    /// extrapolated levels, ascending
    pub levels: Vec<f64>,
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
    /// largest `|extrapolated - fine| / |extrapolated|`
    pub disagreement: f64,
    pub window: Window,
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `lam`.
fn sturm_count(diag: &[f64], off2: f64, lam: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        q = d - lam - if i == 0 { 0.0 } else { off2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (d.abs() + lam.abs() + 1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues of `-D2 + V` below `upper`, from potential samples on the interior nodes.
pub fn fd_levels(v: &[f64], h: f64, upper: f64) -> Vec<f64> {
    if v.is_empty() {
        return Vec::new();
    }
    let inv = 1.0 / (h * h);
    let diag: Vec<f64> = v.iter().map(|&x| x + 2.0 * inv).collect();
    let off2 = inv * inv;
    // Gershgorin bound from below
    let lo = v.iter().cloned().fold(f64::INFINITY, f64::min) - 1.0;
    let k = sturm_count(&diag, off2, upper);
    (0..k)
        .into_par_iter()
        .map(|j| {
            let (mut a, mut b) = (lo, upper);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if sturm_count(&diag, off2, mid) > j {
                    b = mid;
                } else {
                    a = mid;
                }
                if b - a <= 1e-14 * (1.0 + mid.abs()) {
                    break;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// Levels from a potential sampler on two grids, combined by Richardson extrapolation.
///
/// `sample` maps interior node positions to potential values.
pub fn schrodinger_spectrum<F>(sample: F, window: Window, n_max: Option<usize>) -> Result<Spectrum>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let coarse = fd_levels(&sample(&window.nodes(window.h))?, window.h, window.upper);
    let fine = fd_levels(&sample(&window.nodes(0.5 * window.h))?, 0.5 * window.h, window.upper);
    let mut k = coarse.len().min(fine.len());
    if coarse.len() != fine.len() {
        // a level may cross the cutoff between grids only if it is essentially at it
        let extra = if coarse.len() > fine.len() { coarse[k] } else { fine[k] };
        if (window.upper - extra).abs() > RICHARDSON_TOL * (1.0 + window.upper.abs()) {
            return Err(Error::GridTooCoarse(f64::INFINITY));
        }
    }
    if let Some(n) = n_max {
        k = k.min(n);
    }
    let mut levels = Vec::with_capacity(k);
    let mut disagreement: f64 = 0.0;
    for j in 0..k {
        let r = (4.0 * fine[j] - coarse[j]) / 3.0;
        disagreement = disagreement.max((r - fine[j]).abs() / r.abs().max(f64::MIN_POSITIVE));
        levels.push(r);
    }
    if disagreement > RICHARDSON_TOL {
        return Err(Error::GridTooCoarse(disagreement));
    }
    Ok(Spectrum { levels, coarse, fine, disagreement, window })
}

/// Window for a rational potential: the tail region plus a margin of many
/// decay lengths of the least bound level, with spacing set by the well depth.
pub fn auto_window(spec: &PotentialSpec) -> Result<Window> {
    let (xl, xr) = liouville::tail_window(spec, 1e-6)?;
    let (vm, vp) = liouville::exact_asymptotes(spec);
    window_for(|xs| sample_spec(spec, xs), xl, xr, vm.min(vp))
}

/// Same construction for any sampler whose tails have settled outside `[xl, xr]`.
pub fn window_for<F>(sample: F, xl: f64, xr: f64, upper: f64) -> Result<Window>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let probe = sample(&liouville::uniform_grid(xl, xr, 4001))?;
    let vmin = probe.iter().cloned().fold(upper, f64::min);
    let depth = (upper - vmin).max(1e-2);
    let h = 0.02 / depth.sqrt();
    // first pass on a coarse grid to find the least bound level
    let rough = Window { xmin: xl - 10.0, xmax: xr + 10.0, h: 4.0 * h, upper };
    let levels = fd_levels(&sample(&rough.nodes(rough.h))?, rough.h, upper);
    let margin = levels.last().map_or(10.0, |&e| (30.0 / (upper - e).max(1e-8).sqrt()).max(10.0));
    let margin = margin.min(400.0);
    Ok(Window { xmin: xl - margin, xmax: xr + margin, h, upper })
}

pub fn sample_spec(spec: &PotentialSpec, xs: &[f64]) -> Result<Vec<f64>> {
    Ok(PotentialProfile::sample(spec, xs)?.v_samples)
}

/// Bound-state spectrum of the potential defined by `spec`.
pub fn spec_spectrum(spec: &PotentialSpec) -> Result<Spectrum> {
    let window = auto_window(spec)?;
    schrodinger_spectrum(|xs| sample_spec(spec, xs), window, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::bound_count;

    #[test]
    fn harmonic_oscillator_levels() {
        // V = x^2 - 20, levels 2k + 1 - 20
        let w = Window { xmin: -10.0, xmax: 10.0, h: 0.01, upper: 0.0 };
        let s = schrodinger_spectrum(|xs| Ok(xs.iter().map(|x| x * x - 20.0).collect()), w, None).unwrap();
        assert_eq!(s.levels.len(), 10);
        for (k, e) in s.levels.iter().enumerate() {
            assert!((e - (2.0 * k as f64 + 1.0 - 20.0)).abs() < 1e-6, "{k}: {e}");
        }
    }

    #[test]
    fn square_well_levels() {
        // depth 10 on |x| < 1; with the jumps midway between nodes the scheme stays second order
        let h = 0.002;
        let w = Window { xmin: -12.0 - 0.5 * h, xmax: 12.0 + 0.5 * h, h, upper: 0.0 };
        let v: Vec<f64> = w.nodes(h).iter().map(|x| if x.abs() < 1.0 { -10.0 } else { 0.0 }).collect();
        let levels = fd_levels(&v, h, 0.0);
        let bisect = |f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64| {
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if f(a) * f(m) <= 0.0 {
                    b = m
                } else {
                    a = m
                }
            }
            0.5 * (a + b)
        };
        // even: k tan k = kappa, odd: -k cot k = kappa, k^2 + kappa^2 = 10
        let v0 = 10.0f64;
        let even = |k: f64| k * k.tan() - (v0 - k * k).sqrt();
        let odd = |k: f64| -k / k.tan() - (v0 - k * k).sqrt();
        let k0 = bisect(&even, 1e-9, std::f64::consts::FRAC_PI_2 - 1e-9);
        let k1 = bisect(&odd, std::f64::consts::FRAC_PI_2 + 1e-9, v0.sqrt());
        let exact = [k0 * k0 - v0, k1 * k1 - v0];
        assert_eq!(levels.len(), 2);
        for (e, x) in levels.iter().zip(exact) {
            assert!((e - x).abs() < 1e-4 * x.abs(), "{e} vs {x}");
        }
    }

    #[test]
    fn coarse_grid_is_reported() {
        let w = Window { xmin: -10.0, xmax: 10.0, h: 0.5, upper: 0.0 };
        let r = schrodinger_spectrum(|xs| Ok(xs.iter().map(|x| 4.0 * x * x - 60.0).collect()), w, None);
        assert!(matches!(r, Err(Error::GridTooCoarse(_))));
    }

    #[test]
    fn e1_levels() {
        let spec = PotentialSpec::new(0.0, 0.25, 0.0, 8.0).unwrap();
        let s = spec_spectrum(&spec).unwrap();
        let expect = [-196.0 / 9.0, -100.0 / 9.0, -4.0, -4.0 / 9.0];
        assert_eq!(s.levels.len(), 4, "{s:?}");
        for (e, x) in s.levels.iter().zip(expect) {
            assert!((e - x).abs() <= 1e-3 * x.abs(), "{e} vs {x}");
        }
        assert_eq!(bound_count(&spec), 4);
    }

    #[test]
    fn levels_match_type_c_energies() {
        let spec = PotentialSpec::new(-0.8, 0.6, 1.2, 9.0).unwrap();
        let s = spec_spectrum(&spec).unwrap();
        let mut eig: Vec<f64> = (0..10)
            .flat_map(|m| crate::charexp::enumerate_solutions(&spec, m))
            .filter(|x| x.sol_type == crate::charexp::SolType::C)
            .map(|x| x.eps)
            .collect();
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(s.levels.len(), eig.len());
        for (e, x) in s.levels.iter().zip(&eig) {
            assert!((e - x).abs() <= 1e-3 * x.abs(), "{e} vs {x}");
        }
    }
}
