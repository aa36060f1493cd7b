//! Scalar functionals that characterise consistency of p-norm tests, plus the
//! centering and Gumbel constants used for the supremum norm.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// x² on [−M, M], |x|^p outside. With `m = 1` this is the kernel whose sum,
/// scaled by d^{-1/2}, decides consistency of the p-norm test.
#[inline]
pub fn g_p(p: f64, x: f64, m: f64) -> f64 {
    let ax = x.abs();
    if ax <= m {
        x * x
    } else {
        ax.powf(p)
    }
}

/// [`g_p`] with the default interval [−1, 1].
#[inline]
pub fn g_p_unit(p: f64, x: f64) -> f64 {
    g_p(p, x, 1.0)
}

type WeightFn = dyn Fn(f64) -> f64 + Send + Sync;

/// The supremum-norm kernel: w(x) below 1, e^{−x²/2}/x from 1 on.
///
/// `w` must be positive, continuous and blow up as x → −∞. The default
/// w(z) = e^{(z²−2z)/2} meets e^{−1/2} at x = 1 and makes the whole function
/// continuous and strictly decreasing.
#[derive(Clone)]
pub struct GInf {
    weight: Option<Arc<WeightFn>>,
}

impl fmt::Debug for GInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GInf")
            .field("weight", &if self.weight.is_some() { "custom" } else { "default" })
            .finish()
    }
}

impl Default for GInf {
    fn default() -> Self {
        GInf { weight: None }
    }
}

#[inline]
fn default_weight(z: f64) -> f64 {
    (0.5 * (z * z - 2.0 * z)).exp()
}

impl GInf {
    /// Install a custom left branch. The weight is probed on a grid: it has to
    /// be finite and positive on [−30, 1), change by less than a factor e² between
    /// neighbouring probes 0.01 apart, and grow past 1e6 somewhere left of −30.
    pub fn with_weight<F>(w: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let mut prev: Option<f64> = None;
        let steps = 3100;
        for k in 0..steps {
            let z = -30.0 + 31.0 * k as f64 / steps as f64;
            let v = w(z);
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!("weight must be finite and positive, w({z}) = {v}")));
            }
            if let Some(pv) = prev {
                if (v.ln() - pv.ln()).abs() > 2.0 {
                    return Err(Error::domain(format!("weight looks discontinuous near z = {z}")));
                }
            }
            prev = Some(v);
        }
        let grows = [-40.0, -80.0, -160.0, -320.0].iter().any(|&z| {
            let v = w(z);
            v.is_infinite() || v > 1e6
        });
        if !grows {
            return Err(Error::domain("weight must diverge as z -> -inf"));
        }
        Ok(GInf { weight: Some(Arc::new(w)) })
    }

    pub fn is_default(&self) -> bool {
        self.weight.is_none()
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        if x < 1.0 {
            match &self.weight {
                None => default_weight(x),
                Some(w) => w(x),
            }
        } else {
            (-0.5 * x * x).exp() / x
        }
    }
}

/// [`GInf`] with the default weight.
#[inline]
pub fn g_inf(x: f64) -> f64 {
    if x < 1.0 {
        default_weight(x)
    } else {
        (-0.5 * x * x).exp() / x
    }
}

/// Centering for the sup-norm criterion: √(2 log d) − log log d / (2√(2 log d)),
/// and 0 at d = 1. At d = 2 the second term is positive because log log 2 < 0;
/// it is kept as is.
pub fn centering_c(d: u64) -> Result<f64> {
    match d {
        0 => Err(Error::domain("dimension must be at least 1")),
        1 => Ok(0.0),
        _ => {
            let ld = (d as f64).ln();
            let s = (2.0 * ld).sqrt();
            Ok(s - ld.ln() / (2.0 * s))
        }
    }
}

/// exp(−2 e^{−x}), the limit law of √(2 log d)(max|ε_i| − b_d).
#[inline]
pub fn gumbel2_cdf(x: f64) -> f64 {
    (-2.0 * (-x).exp()).exp()
}

/// Inverse of [`gumbel2_cdf`]: −log(−log(q)/2).
pub fn gumbel2_quantile(q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(format!("gumbel quantile needs q in (0,1), got {q}")));
    }
    Ok(-(-q.ln() / 2.0).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_p_branches() {
        assert_eq!(g_p_unit(3.0, 0.5), 0.25);
        assert!((g_p_unit(3.0, 2.0) - 8.0).abs() < 1e-14);
        for &x in &[-3.0, -0.3, 0.0, 0.7, 1.0, 2.5] {
            assert!((g_p_unit(2.0, x) - x * x).abs() < 1e-14);
        }
        assert_eq!(g_p(1.0, 2.0, 3.0), 4.0);
        assert_eq!(g_p_unit(1.7, 0.0), 0.0);
        assert_eq!(g_p_unit(3.3, -2.0), g_p_unit(3.3, 2.0));
    }

    #[test]
    fn g_inf_default() {
        let at_one = (-0.5f64).exp();
        assert!((g_inf(1.0) - at_one).abs() < 1e-15);
        assert!((g_inf(1.0 - 1e-12) - at_one).abs() < 1e-11);
        assert_eq!(g_inf(0.0), 1.0);
        let mut prev = f64::INFINITY;
        for k in 0..4000 {
            let x = -20.0 + 0.01 * k as f64;
            let v = g_inf(x);
            assert!(v < prev, "not strictly decreasing at {x}");
            prev = v;
        }
    }

    #[test]
    fn custom_weight_validation() {
        let ok = GInf::with_weight(|z| (0.5 * (z * z - 2.0 * z)).exp()).unwrap();
        assert_eq!(ok.eval(0.3), g_inf(0.3));
        assert!(GInf::with_weight(|_| 1.0).is_err());
        assert!(GInf::with_weight(|z| if z < 0.0 { -z + 1.0 } else { -1.0 }).is_err());
        assert!(GInf::with_weight(|z| if z < -5.0 { z * z * 1e6 } else { 1.0 }).is_err());
        assert!(GInf::with_weight(|z| 1.0 + z * z * z.abs() * 1e3).is_ok());
    }

    #[test]
    fn centering_values() {
        assert_eq!(centering_c(1).unwrap(), 0.0);
        assert!(centering_c(0).is_err());
        assert!(centering_c(2).unwrap() > (2.0 * 2f64.ln()).sqrt());
        for &d in &[15u64, 1000, 50_000, 1_000_000] {
            let gap = centering_c(d).unwrap() - (2.0 * (d as f64).ln()).sqrt();
            assert!(gap < 0.0);
        }
        let l = 50_000f64.ln();
        let s = (2.0 * l).sqrt();
        assert!((centering_c(50_000).unwrap() - (s - l.ln() / (2.0 * s))).abs() < 1e-15);
    }

    #[test]
    fn gumbel2() {
        assert!((gumbel2_cdf(40.0) - (1.0 - 2.0 * (-40f64).exp())).abs() < 1e-15);
        assert!((gumbel2_cdf(0.0) - (-2f64).exp()).abs() < 1e-15);
        for &q in &[0.05, 0.5, 0.95] {
            let x = gumbel2_quantile(q).unwrap();
            assert!((gumbel2_cdf(x) - q).abs() < 1e-14);
            assert!((x + (-(q.ln()) / 2.0).ln()).abs() < 1e-15);
        }
    }
}
