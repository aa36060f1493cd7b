//! Independent reference computations shared by the oracle suite and the
//! acceptance harness.
#![allow(dead_code)]

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Standard error of the empirical (1−α)-quantile, with f the density there.
pub fn quantile_stderr(alpha: f64, reps: usize, density: f64) -> f64 {
    (alpha * (1.0 - alpha) / reps as f64).sqrt() / density
}

/// P(χ²_d(λ) > x) = Σ_k Pois(k; λ/2)·P(χ²_{d+2k} > x).
pub fn noncentral_chi_square_sf(d: f64, lambda: f64, x: f64) -> f64 {
    let half = lambda / 2.0;
    let mut log_w = -half;
    let mut total = 0.0;
    for k in 0..400 {
        if k > 0 {
            log_w += half.ln() - (k as f64).ln();
        }
        total += log_w.exp() * ChiSquared::new(d + 2.0 * k as f64).unwrap().sf(x);
        if k as f64 > half && log_w < -40.0 {
            break;
        }
    }
    total
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        return left + right + (left + right - whole) / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson on 64 equal panels, so a narrow peak cannot hide
/// between the first three nodes.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let panels = 64;
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let (lo, hi) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            let (fa, fb, fm) = (f(lo), f(hi), f(0.5 * (lo + hi)));
            let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            simpson(f, lo, hi, fa, fm, fb, whole, tol / panels as f64, 50)
        })
        .sum()
}

/// E|Z|^r = 2∫₀^∞ x^r φ(x) dx. Near 0 the substitution x = s^k with k·r ≥ 2
/// smooths the integrand; the tail is cut at √r + 40.
pub fn quadrature_moment(r: f64) -> f64 {
    let phi = |x: f64| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let k = (2.0 / r).ceil().max(1.0);
    let head = |s: f64| if s == 0.0 { 0.0 } else { 2.0 * k * s.powf(k * r + k - 1.0) * phi(s.powf(k)) };
    let tail = |x: f64| 2.0 * x.powf(r) * phi(x);
    let peak = tail(r.sqrt().max(1.0));
    let tol = 1e-13 * peak.max(1e-300);
    adaptive_simpson(&head, 0.0, 1.0, tol) + adaptive_simpson(&tail, 1.0, r.sqrt() + 40.0, tol)
}
