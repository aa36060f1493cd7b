//! Absolute moments of a standard normal variable.
//!
//! E|Z|^r = Γ((r+1)/2) 2^{r/2} / √π, evaluated through `lgamma` so that the
//! log-scale value stays finite far beyond the point (r ≈ 340) where the
//! linear value overflows.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};

/// ln E|Z|^r.
pub fn ln_abs_moment(r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain(format!("absolute moment order must be positive and finite, got {r}")));
    }
    Ok(ln_abs_moment_unchecked(r))
}

#[inline]
pub(crate) fn ln_abs_moment_unchecked(r: f64) -> f64 {
    libm::lgamma(0.5 * (r + 1.0)) + 0.5 * r * LN_2 - 0.5 * PI.ln()
}

/// E|Z|^r for Z ~ N(0, 1).
///
/// Overflow (r beyond roughly 340) is reported as a numeric error; use
/// [`ln_abs_moment`] there.
pub fn abs_moment(r: f64) -> Result<f64> {
    let v = ln_abs_moment(r)?.exp();
    if !v.is_finite() {
        return Err(Error::Numeric(format!("E|Z|^{r} overflows f64; use ln_abs_moment")));
    }
    Ok(v)
}

/// Mean and variance of |ε|^p for standard Gaussian ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussMoments {
    pub p: f64,
    /// E|ε|^p
    pub mu_p: f64,
    /// Var |ε|^p
    pub sigma2_p: f64,
    pub ln_mu_p: f64,
    pub ln_sigma2_p: f64,
}

impl GaussMoments {
    pub fn sigma_p(&self) -> f64 {
        self.sigma2_p.sqrt()
    }
}

/// Moments of |ε|^p.
///
/// The variance E|Z|^{2p} − (E|Z|^p)² is formed as
/// E|Z|^{2p}·(1 − exp(−Δ)) with Δ = ln E|Z|^{2p} − 2 ln E|Z|^p > 0, which
/// never goes negative. Δ itself carries an absolute rounding error of a few
/// ulps of the log-moments; when that error exceeds 1% of Δ (only for p very
/// close to 0, where σ_p² ≈ p²π²/8) the call fails instead of returning noise.
/// Linear fields saturate to +∞ once they overflow; the `ln_` fields do not.
pub fn gauss_moments(p: f64) -> Result<GaussMoments> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::domain(format!("moment exponent must be positive and finite, got {p}")));
    }
    let ln_m1 = ln_abs_moment_unchecked(p);
    let ln_m2 = ln_abs_moment_unchecked(2.0 * p);
    let gap = ln_m2 - 2.0 * ln_m1;
    let rounding = 8.0 * f64::EPSILON * (1.0 + ln_m2.abs() + 2.0 * ln_m1.abs());
    if !(gap > 0.0) || rounding > 1e-2 * gap {
        return Err(Error::Numeric(format!(
            "Var|Z|^{p} lost its significant digits (log gap {gap:e}, rounding {rounding:e})"
        )));
    }
    let ln_sigma2 = ln_m2 + (-(-gap).exp_m1()).ln();
    Ok(GaussMoments {
        p,
        mu_p: ln_m1.exp(),
        sigma2_p: ln_sigma2.exp(),
        ln_mu_p: ln_m1,
        ln_sigma2_p: ln_sigma2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        ((a - b) / b).abs() <= rel
    }

    #[test]
    fn low_order_moments() {
        assert!(close(abs_moment(2.0).unwrap(), 1.0, 1e-14));
        assert!(close(abs_moment(4.0).unwrap(), 3.0, 1e-14));
        assert!(close(abs_moment(1.0).unwrap(), (2.0 / PI).sqrt(), 1e-14));
        assert!(close(abs_moment(1.0).unwrap(), 0.797_884_560_8, 1e-10));
        assert!(close(abs_moment(8.0).unwrap(), 105.0, 1e-13));
    }

    #[test]
    fn stirling_bounds_at_e4_plus_1() {
        let r = E.powi(4) + 1.0;
        let m = abs_moment(r).unwrap();
        let base = r.powf(r / 2.0) * (-r / 2.0).exp();
        assert!((2.0 * E / PI).sqrt() * base <= m);
        assert!(m < 2f64.sqrt() * base);
    }

    #[test]
    fn gauss_moment_closed_forms() {
        let m2 = gauss_moments(2.0).unwrap();
        assert!(close(m2.mu_p, 1.0, 1e-13) && close(m2.sigma2_p, 2.0, 1e-13));
        let m1 = gauss_moments(1.0).unwrap();
        assert!(close(m1.mu_p, (2.0 / PI).sqrt(), 1e-13));
        assert!(close(m1.sigma2_p, 1.0 - 2.0 / PI, 1e-12));
        assert!(close(m1.sigma2_p, 0.363_380_2, 1e-6));
        let m4 = gauss_moments(4.0).unwrap();
        assert!(close(m4.mu_p, 3.0, 1e-13) && close(m4.sigma2_p, 96.0, 1e-12));
    }

    #[test]
    fn huge_exponents_stay_in_log_space() {
        let g = gauss_moments(400.0).unwrap();
        assert!(g.ln_mu_p.is_finite() && g.ln_sigma2_p.is_finite());
        assert!(g.sigma2_p.is_infinite());
        assert!(abs_moment(800.0).is_err());
        assert!(ln_abs_moment(800.0).unwrap().is_finite());
    }

    #[test]
    fn tiny_exponent_cancellation_is_an_error() {
        assert!(matches!(gauss_moments(1e-9), Err(Error::Numeric(_))));
        let g = gauss_moments(1e-4).unwrap();
        // σ_p² ≈ p²·π²/8 as p → 0.
        assert!(close(g.sigma2_p, 1e-8 * PI * PI / 8.0, 1e-2));
    }

    #[test]
    fn domain() {
        assert!(abs_moment(0.0).is_err());
        assert!(abs_moment(-1.0).is_err());
        assert!(gauss_moments(f64::NAN).is_err());
    }
}
