//! Library results against independent references: statrs distributions,
//! a Poisson-mixture noncentral χ² tail, adaptive quadrature and plain
//! summation.

use pnorm_core::critical::{asymptotic_kappa_finite, mc_calibrate};
use pnorm_core::math::{abs_moment, gauss_moments};
use pnorm_core::procedure::{build_norm_test, Calibration};
use pnorm_core::{estimate_rejection, p_norm_stat, regression_reduce, Exponent, MonteCarloPlan};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use statrs::distribution::{ChiSquared, Continuous, ContinuousCDF, Normal};

mod common;

use common::{noncentral_chi_square_sf, quadrature_moment, quantile_stderr};

const ALPHA: f64 = 0.05;

#[test]
fn two_norm_critical_value_matches_chi_square_quantile() {
    let d = 50;
    let reps = 100_000;
    let kappa = mc_calibrate(Exponent::Finite(2.0), d, ALPHA, &MonteCarloPlan::new(reps, 11)).unwrap().value;
    let chi = ChiSquared::new(d as f64).unwrap();
    let exact = chi.inverse_cdf(1.0 - ALPHA).sqrt();
    // Density of ‖y‖₂ at t is 2t·f_χ²(t²).
    let se = quantile_stderr(ALPHA, reps, 2.0 * exact * chi.pdf(exact * exact));
    assert!((kappa - exact).abs() <= 3.0 * se, "κ = {kappa}, oracle {exact}, se {se}");
}

#[test]
fn two_norm_power_matches_noncentral_chi_square() {
    let d = 50;
    let test = build_norm_test(Exponent::Finite(2.0), d, ALPHA, &Calibration::MonteCarlo(MonteCarloPlan::new(50_000, 5))).unwrap();
    let kappa = match &test {
        pnorm_core::TestSpec::Norm(t) => t.kappa(),
        _ => unreachable!(),
    };
    let mut theta = vec![0.0; d];
    theta[0] = 5.0;
    let est = estimate_rejection(&test, &theta, &MonteCarloPlan::new(40_000, 99)).unwrap();
    let exact = noncentral_chi_square_sf(d as f64, 25.0, kappa * kappa);
    assert!((est.rate - exact).abs() <= 3.0 * est.stderr, "rate {} ± {}, oracle {exact}", est.rate, est.stderr);
    assert!(exact > 0.3 && exact < 0.9);
}

#[test]
fn noncentral_series_reduces_to_central() {
    let chi = ChiSquared::new(7.0).unwrap();
    assert!((noncentral_chi_square_sf(7.0, 0.0, 9.0) - chi.sf(9.0)).abs() < 1e-15);
}

#[test]
fn sup_calibration_in_one_dimension_is_half_normal_quantile() {
    let reps = 100_000;
    let kappa = mc_calibrate(Exponent::Sup, 1, ALPHA, &MonteCarloPlan::new(reps, 3)).unwrap().value;
    let n = Normal::standard();
    let exact = n.inverse_cdf(1.0 - ALPHA / 2.0);
    let se = quantile_stderr(ALPHA, reps, 2.0 * n.pdf(exact));
    assert!((kappa - exact).abs() <= 3.0 * se, "κ = {kappa}, oracle {exact}");
}

#[test]
fn asymptotic_two_norm_value() {
    let z = Normal::standard().inverse_cdf(0.95);
    let exact = (z * 200f64.sqrt() + 100.0).sqrt();
    let k = asymptotic_kappa_finite(2.0, 100, 0.05).unwrap();
    assert!((k - exact).abs() < 1e-10);
    assert!((k - 11.1024).abs() < 1e-4);
}

#[test]
fn absolute_moments_match_quadrature() {
    let mut r = 0.1;
    while r <= 60.0 + 1e-9 {
        let exact = quadrature_moment(r);
        let m = abs_moment(r).unwrap();
        assert!(((m - exact) / exact).abs() < 1e-8, "r = {r}: {m} vs {exact}");
        r += 0.1;
    }
}

#[test]
fn moment_bounds_hold_above_one() {
    let mut r: f64 = 1.05;
    while r <= 60.0 {
        let m = abs_moment(r).unwrap();
        let core = r.powf(r / 2.0) * (-r / 2.0).exp();
        let lo = (2.0 * std::f64::consts::E / std::f64::consts::PI).sqrt() * core;
        let hi = 2f64.sqrt() * core;
        assert!(lo <= m * (1.0 + 1e-12) && m < hi, "r = {r}: {lo} <= {m} < {hi}");
        r += 0.05;
    }
}

#[test]
fn variance_of_power_matches_its_definition() {
    for p in [0.5, 1.0, 2.5, 4.0, 7.0] {
        let g = gauss_moments(p).unwrap();
        let direct = quadrature_moment(2.0 * p) - quadrature_moment(p).powi(2);
        assert!(((g.sigma2_p - direct) / direct).abs() < 1e-8, "p = {p}");
    }
}

#[test]
fn norms_match_direct_summation() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let d = rng.random_range(1..300);
        let y: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal) * 3.0).collect();
        for p in [0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 7.25, 20.0] {
            let direct = y.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p);
            let got = p_norm_stat(&y, Exponent::Finite(p)).unwrap();
            assert!(((got - direct) / direct).abs() < 1e-12, "p = {p}");
        }
        let sup = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert_eq!(p_norm_stat(&y, Exponent::Sup).unwrap(), sup);
    }
}

#[test]
fn norms_are_scale_equivariant_at_extreme_magnitudes() {
    let y = [3.0, -4.0, 12.0];
    for p in [1.0, 2.0, 3.5, 60.0] {
        let base = p_norm_stat(&y, Exponent::Finite(p)).unwrap();
        for s in [1e-300, 1e300] {
            let scaled: Vec<f64> = y.iter().map(|v| v * s).collect();
            let got = p_norm_stat(&scaled, Exponent::Finite(p)).unwrap();
            assert!(((got / s - base) / base).abs() < 1e-12, "p = {p}, s = {s}");
        }
    }
    assert!((p_norm_stat(&y, Exponent::Finite(2.0)).unwrap() - 13.0).abs() < 1e-14);
}

#[test]
fn reduced_regression_has_identity_covariance() {
    let (n, d, reps) = (20, 3, 20_000);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let x: Vec<Vec<f64>> = (0..n).map(|_| (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()).collect();
    let mut sum = vec![0.0; d];
    let mut cross = vec![vec![0.0; d]; d];
    for _ in 0..reps {
        let z: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let out = regression_reduce(&x, &z).unwrap();
        for i in 0..d {
            sum[i] += out[i];
            for j in 0..d {
                cross[i][j] += out[i] * out[j];
            }
        }
    }
    let r = reps as f64;
    for i in 0..d {
        for j in 0..d {
            let cov = cross[i][j] / r - sum[i] * sum[j] / (r * r);
            let target = if i == j { 1.0 } else { 0.0 };
            assert!((cov - target).abs() < 5.0 / r.sqrt(), "cov[{i}][{j}] = {cov}");
        }
    }
}
