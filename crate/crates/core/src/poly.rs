//! Small dense polynomials with coefficients stored in descending order.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Horner evaluation of `c[0] x^n + ... + c[n]`.
pub fn eval(c: &[f64], x: f64) -> f64 {
    c.iter().fold(0.0, |acc, &a| acc * x + a)
}

/// `sum |c_i| |x|^i`, the natural rounding scale for [`eval`].
pub fn scale(c: &[f64], x: f64) -> f64 {
    let ax = x.abs();
    c.iter().fold(0.0, |acc, &a| acc * ax + a.abs())
}

pub fn deriv(c: &[f64]) -> Vec<f64> {
    let n = c.len().saturating_sub(1);
    c[..n].iter().enumerate().map(|(i, &a)| a * (n - i) as f64).collect()
}

pub fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Sum of two polynomials of possibly different degree.
pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().max(b.len());
    let mut out = vec![0.0; n];
    for (k, &x) in a.iter().rev().enumerate() {
        out[n - 1 - k] += x;
    }
    for (k, &x) in b.iter().rev().enumerate() {
        out[n - 1 - k] += x;
    }
    out
}

pub fn scaled(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// Coefficients padded on the left to `len` entries.
pub fn padded(a: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len.saturating_sub(a.len())];
    out.extend_from_slice(a);
    out
}

/// Largest absolute coefficient.
pub fn norm(c: &[f64]) -> f64 {
    c.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Strip leading coefficients that are negligible relative to the largest one.
pub fn trim(c: &[f64]) -> &[f64] {
    let big = norm(c);
    let start = c.iter().position(|x| x.abs() > 1e-14 * big).unwrap_or(c.len());
    &c[start..]
}

/// Real roots with multiplicity, ascending.
///
/// Roots come from the eigenvalues of the companion matrix and are then
/// polished by Newton iteration on the original coefficients. Clusters of
/// complex eigenvalues whose centroid is real and annihilates the polynomial
/// to rounding level are reported as a multiple real root.
pub fn real_roots(coeffs: &[f64]) -> Result<Vec<f64>> {
    if coeffs.iter().all(|&x| x == 0.0) {
        return Err(Error::DegenerateAllZero);
    }
    let c = trim(coeffs);
    let n = c.len() - 1;
    let mut roots = match n {
        0 => Vec::new(),
        1 => vec![-c[1] / c[0]],
        2 => quadratic_roots(c[0], c[1], c[2]).into_iter().flatten().collect(),
        _ => higher_roots(c),
    };
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(roots)
}

/// Real roots of `a x^2 + b x + c` with the cancellation-free formula.
/// Returns `None` entries when the discriminant is negative beyond rounding.
pub fn quadratic_roots(a: f64, b: f64, c: f64) -> [Option<f64>; 2] {
    let disc = b * b - 4.0 * a * c;
    let tol = 1e-14 * (b * b + (4.0 * a * c).abs());
    if disc < -tol {
        return [None, None];
    }
    let sq = disc.max(0.0).sqrt();
    let q = -0.5 * (b + if b >= 0.0 { sq } else { -sq });
    if q == 0.0 {
        return [Some(0.0), Some(0.0)];
    }
    let (r1, r2) = (q / a, c / q);
    if r1 <= r2 {
        [Some(r1), Some(r2)]
    } else {
        [Some(r2), Some(r1)]
    }
}

fn higher_roots(c: &[f64]) -> Vec<f64> {
    // The unshifted QR iteration can stall on symmetric root patterns; retry
    // on a Taylor-shifted copy of the polynomial when it does.
    let eig = [0.0, 0.3183, -0.5772, 1.4142]
        .iter()
        .find_map(|&frac| {
            let sigma = frac * (1.0 + (c[1] / c[0]).abs());
            companion_eigenvalues(&taylor_shift(c, sigma)).map(|e| e.into_iter().map(|(re, im)| (re + sigma, im)).collect::<Vec<_>>())
        })
        .unwrap_or_default();
    let mut out = Vec::new();
    let mut pending: Vec<(f64, f64)> = Vec::new();
    for &(re, im) in &eig {
        let (re, im) = polish_complex(c, re, im);
        if im.abs() <= 1e-9 * (1.0 + re.abs()) {
            out.push(polish_real(c, re, 0));
        } else {
            pending.push((re, im));
        }
    }
    // Multiple real roots perturbed into the complex plane by rounding.
    while let Some(first) = pending.pop() {
        let mut cluster = vec![first];
        let radius = 1e-2 * (1.0 + first.0.abs());
        pending.retain(|&p| {
            let close = ((p.0 - first.0).powi(2) + (p.1 - first.1).powi(2)).sqrt() < 2.0 * radius;
            if close {
                cluster.push(p);
            }
            !close
        });
        let k = cluster.len();
        let cre = cluster.iter().map(|p| p.0).sum::<f64>() / k as f64;
        let cim = cluster.iter().map(|p| p.1).sum::<f64>() / k as f64;
        if k < 2 || cim.abs() > 1e-9 * (1.0 + cre.abs()) {
            continue;
        }
        let r = polish_real(c, cre, k - 1);
        if eval(c, r).abs() <= 1e-12 * scale(c, r) {
            out.extend(std::iter::repeat(r).take(k));
        }
    }
    out
}

/// Coefficients of `p(x + sigma)`.
fn taylor_shift(c: &[f64], sigma: f64) -> Vec<f64> {
    let mut out = vec![0.0; c.len()];
    for &a in c {
        // Horner in polynomial arithmetic: out = out * (x + sigma) + a
        let mut next = vec![0.0; c.len()];
        for k in 1..c.len() {
            next[k - 1] += out[k];
            next[k] += sigma * out[k];
        }
        next[c.len() - 1] += a;
        out = next;
    }
    out
}

fn companion_eigenvalues(c: &[f64]) -> Option<Vec<(f64, f64)>> {
    let n = c.len() - 1;
    if c[0] == 0.0 {
        return None;
    }
    // Rescale the variable so that the companion matrix is well balanced.
    let s = (c[n].abs() / c[0].abs()).powf(1.0 / n as f64).max(1e-8);
    let monic: Vec<f64> = (0..=n).map(|k| c[k] / c[0] * s.powi(-(k as i32))).collect();
    let mut comp = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        comp[(0, j)] = -monic[j + 1];
    }
    for i in 1..n {
        comp[(i, i - 1)] = 1.0;
    }
    let schur = comp.try_schur(f64::EPSILON, 500)?;
    Some(schur.complex_eigenvalues().iter().map(|z| (z.re * s, z.im * s)).collect())
}

/// Complex Newton steps, keeping the best iterate.
fn polish_complex(c: &[f64], mut re: f64, mut im: f64) -> (f64, f64) {
    for _ in 0..20 {
        let (mut pr, mut pi, mut dr, mut di) = (0.0, 0.0, 0.0, 0.0);
        for &a in c {
            let (ndr, ndi) = (dr * re - di * im + pr, dr * im + di * re + pi);
            dr = ndr;
            di = ndi;
            let (npr, npi) = (pr * re - pi * im + a, pr * im + pi * re);
            pr = npr;
            pi = npi;
        }
        let den = dr * dr + di * di;
        if den == 0.0 {
            break;
        }
        let sr = (pr * dr + pi * di) / den;
        let si = (pi * dr - pr * di) / den;
        re -= sr;
        im -= si;
        if sr.abs() + si.abs() <= 1e-16 * (re.abs() + im.abs()) {
            break;
        }
    }
    (re, im)
}

/// Newton polish of a real root of the `order`-th derivative.
fn polish_real(c: &[f64], x0: f64, order: usize) -> f64 {
    let mut p = c.to_vec();
    for _ in 0..order {
        p = deriv(&p);
    }
    let dp = deriv(&p);
    let mut x = x0;
    let mut best = (eval(&p, x).abs(), x);
    for _ in 0..50 {
        let f = eval(&p, x);
        let g = eval(&dp, x);
        if g == 0.0 || f == 0.0 {
            break;
        }
        let step = f / g;
        x -= step;
        let r = eval(&p, x).abs();
        if r < best.0 {
            best = (r, x);
        }
        if step.abs() <= 1e-16 * x.abs().max(1e-300) {
            break;
        }
    }
    best.1
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn quartic_with_two_real_roots() {
        assert_eq!(real_roots(&[1.0, 0.0, 0.0, 0.0, -1.0]).unwrap(), vec![-1.0, 1.0]);
    }

    #[test]
    fn quadruple_root() {
        // (x + 1)^4
        let r = real_roots(&[1.0, 4.0, 6.0, 4.0, 1.0]).unwrap();
        assert_eq!(r.len(), 4);
        for x in r {
            assert!((x + 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn double_root_pair() {
        // (x - 2)^2 (x + 3)(x - 0.5)
        let p = mul(&mul(&[1.0, -2.0], &[1.0, -2.0]), &mul(&[1.0, 3.0], &[1.0, -0.5]));
        let r = real_roots(&p).unwrap();
        assert_eq!(r.len(), 4);
        let expect = [-3.0, 0.5, 2.0, 2.0];
        for (a, b) in r.iter().zip(expect) {
            assert!((a - b).abs() < 1e-7, "{r:?}");
        }
    }

    #[test]
    fn degree_drops_when_leading_vanishes() {
        assert_eq!(real_roots(&[0.0, 0.0, 1.0, -3.0, 2.0]).unwrap(), vec![1.0, 2.0]);
        assert_eq!(real_roots(&[0.0, 0.0, 0.0, 2.0, -1.0]).unwrap(), vec![0.5]);
        assert!(real_roots(&[0.0, 0.0, 0.0, 0.0, 3.0]).unwrap().is_empty());
        assert_eq!(real_roots(&[0.0; 5]), Err(Error::DegenerateAllZero));
    }

    #[test]
    fn complex_pairs_dropped() {
        // (x^2 + 1)(x^2 - 4)
        assert_eq!(real_roots(&[1.0, 0.0, -3.0, 0.0, -4.0]).unwrap(), vec![-2.0, 2.0]);
        // (x^2 + 1e-6): a genuine complex pair close to the real axis
        assert!(real_roots(&mul(&[1.0, 0.0, 1e-6], &[1.0, 0.0, 1e-6])).unwrap().is_empty());
    }

    #[test]
    fn quadratic_formula_is_stable() {
        let [a, b] = quadratic_roots(1.0, -1e8, 1.0);
        assert!((a.unwrap() - 1e-8).abs() < 1e-22);
        assert!((b.unwrap() - 1e8).abs() < 1e-6);
        assert_eq!(quadratic_roots(1.0, 0.0, 1.0), [None, None]);
        assert_eq!(quadratic_roots(1.0, 0.0, -4.0), [Some(-2.0), Some(2.0)]);
    }

    #[test]
    fn arithmetic() {
        assert_eq!(mul(&[1.0, 1.0], &[1.0, -1.0]), vec![1.0, 0.0, -1.0]);
        assert_eq!(add(&[1.0, 0.0, 0.0], &[2.0, 3.0]), vec![1.0, 2.0, 3.0]);
        assert_eq!(deriv(&[1.0, 2.0, 3.0]), vec![2.0, 2.0]);
        assert_eq!(padded(&[1.0], 3), vec![0.0, 0.0, 1.0]);
    }

    proptest! {
        #[test]
        fn recovers_planted_real_roots(r in proptest::collection::vec(-30.0f64..30.0, 4), lead in 0.1f64..10.0) {
            let mut sorted = r.clone();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            prop_assume!(sorted.windows(2).all(|w| w[1] - w[0] > 1e-3));
            let mut p = vec![lead];
            for &x in &r {
                p = mul(&p, &[1.0, -x]);
            }
            let got = real_roots(&p).unwrap();
            prop_assert_eq!(got.len(), 4);
            for (g, e) in got.iter().zip(&sorted) {
                prop_assert!((g - e).abs() <= 1e-7 * (1.0 + e.abs()), "{:?} vs {:?}", got, sorted);
                prop_assert!(eval(&p, *g).abs() <= 1e-12 * scale(&p, *g));
            }
        }
    }
}
