//! Critical values: the asymptotic formulas for finite p and for the supremum
//! norm, and exact-size calibration by simulation under the null.

use std::fmt;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::math::{gauss_moments, normal};
use crate::mc::{self, MonteCarloPlan};
use crate::norm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleKind {
    AsymptoticFinite,
    AsymptoticSup,
    MonteCarloExact,
}

impl fmt::Display for ScheduleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScheduleKind::AsymptoticFinite => "asymptotic_finite",
            ScheduleKind::AsymptoticSup => "asymptotic_sup",
            ScheduleKind::MonteCarloExact => "monte_carlo_exact",
        })
    }
}

/// Where a critical value came from.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Formula,
    MonteCarlo {
        replications: usize,
        seed: u64,
        chunk_size: usize,
        /// 1-based order statistic that was taken.
        order_index: usize,
    },
}

/// A critical value κ for one exponent, level and dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalValueSchedule {
    pub kind: ScheduleKind,
    pub exponent: Exponent,
    pub alpha: f64,
    pub d: usize,
    pub value: f64,
    pub provenance: Provenance,
}

impl CriticalValueSchedule {
    /// κ at another dimension. Only formula schedules can be re-evaluated.
    pub fn value_at(&self, d: usize) -> Result<f64> {
        if d == self.d {
            return Ok(self.value);
        }
        match (self.kind, self.exponent) {
            (ScheduleKind::AsymptoticFinite, Exponent::Finite(p)) => asymptotic_kappa_finite(p, d, self.alpha),
            (ScheduleKind::AsymptoticSup, _) => asymptotic_kappa_sup(d, self.alpha),
            _ => Err(Error::Calibration(format!(
                "Monte-Carlo critical value was calibrated at d = {}, not {d}",
                self.d
            ))),
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("level must lie in (0,1), got {alpha}")))
    }
}

/// [Φ^{-1}(1−α)·√(dσ_p²) + dμ_p]^{1/p}.
///
/// Evaluated as exp{(ln d + ln μ_p + ln(1 + z σ_p/(√d μ_p)))/p} so large p
/// does not overflow.
pub fn asymptotic_kappa_finite(p: f64, d: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if d == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    let z = normal::upper_quantile(alpha);
    power_root_of_centered(p, d, z).map_err(|e| match e {
        Error::Calibration(_) => Error::Calibration(format!(
            "z·sqrt(d·σ²) + d·μ ≤ 0 for p = {p}, d = {d}, α = {alpha}; use Monte-Carlo calibration"
        )),
        other => other,
    })
}

/// [r·√(dσ_p²) + dμ_p]^{1/p} for any real r. Shared by the asymptotic and the
/// minimax critical values.
pub(crate) fn power_root_of_centered(p: f64, d: usize, r: f64) -> Result<f64> {
    let m = gauss_moments(p)?;
    let dd = d as f64;
    // ratio = σ_p / (√d μ_p), in log space.
    let ln_ratio = 0.5 * m.ln_sigma2_p - 0.5 * dd.ln() - m.ln_mu_p;
    let shift = r * ln_ratio.exp();
    if !(shift > -1.0) {
        return Err(Error::Calibration("centered bracket is not positive".into()));
    }
    let ln_bracket = dd.ln() + m.ln_mu_p + shift.ln_1p();
    let v = (ln_bracket / p).exp();
    if !v.is_finite() || v <= 0.0 {
        return Err(Error::Numeric(format!("critical value not representable for p = {p}, d = {d}")));
    }
    Ok(v)
}

/// √(2 log d) − [log log d + log 4π]/(2√(2 log d)) − log(−log(1−α)/2)/√(2 log d).
pub fn asymptotic_kappa_sup(d: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if d < 3 {
        return Err(Error::domain(format!("sup-norm norming needs d >= 3, got {d}")));
    }
    let ld = (d as f64).ln();
    let s = (2.0 * ld).sqrt();
    let four_pi = 4.0 * std::f64::consts::PI;
    let gumbel = (-(-alpha).ln_1p() / 2.0).ln();
    Ok(s - (ld.ln() + four_pi.ln()) / (2.0 * s) - gumbel / s)
}

/// Formula schedule for either kind of exponent.
pub fn asymptotic_schedule(exponent: Exponent, d: usize, alpha: f64) -> Result<CriticalValueSchedule> {
    let (kind, value) = match exponent.validate()? {
        Exponent::Finite(p) => (ScheduleKind::AsymptoticFinite, asymptotic_kappa_finite(p, d, alpha)?),
        Exponent::Sup => (ScheduleKind::AsymptoticSup, asymptotic_kappa_sup(d, alpha)?),
    };
    Ok(CriticalValueSchedule { kind, exponent, alpha, d, value, provenance: Provenance::Formula })
}

/// Minimum replications accepted for Monte-Carlo calibration.
pub const MIN_CALIBRATION_REPS: usize = 1000;

pub(crate) fn check_calibration_plan(plan: &MonteCarloPlan, alpha: f64) -> Result<()> {
    plan.validate()?;
    if plan.replications < MIN_CALIBRATION_REPS {
        return Err(Error::config(format!(
            "calibration needs at least {MIN_CALIBRATION_REPS} replications, got {}",
            plan.replications
        )));
    }
    if alpha * (plan.replications as f64) < 10.0 {
        return Err(Error::config(format!(
            "alpha·R = {} < 10: too few null exceedances to place the quantile",
            alpha * plan.replications as f64
        )));
    }
    Ok(())
}

/// Null statistics ∥ε_r∥_{p_j} for every replication r and exponent j,
/// laid out column-wise: `out[j][r]`.
pub fn simulate_null_norms(exponents: &[Exponent], d: usize, plan: &MonteCarloPlan) -> Result<Vec<Vec<f64>>> {
    if d == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    for e in exponents {
        e.validate()?;
    }
    let rows = mc::run_chunked(
        plan,
        d,
        norm::NormWorkspace::new,
        |ws: &mut norm::NormWorkspace, eps: &[f64], _| {
            let mut out = Vec::with_capacity(exponents.len());
            ws.norms_into(eps, exponents, &mut out);
            out
        },
    )?;
    let mut cols = vec![Vec::with_capacity(rows.len()); exponents.len()];
    for row in rows {
        for (col, v) in cols.iter_mut().zip(row) {
            col.push(v);
        }
    }
    Ok(cols)
}

/// Empirical (1−α)-quantile: the ⌈R(1−α)⌉-th order statistic, no interpolation.
pub fn empirical_critical_value(null_stats: &[f64], alpha: f64) -> (f64, usize) {
    let k = mc::upper_order_index(null_stats.len(), alpha);
    let mut scratch = null_stats.to_vec();
    (mc::order_statistic(&mut scratch, k), k)
}

/// κ such that the simulated null rejection rate of 1{∥y∥_p ≥ κ} is α at the
/// granularity 1/R.
pub fn mc_calibrate(exponent: Exponent, d: usize, alpha: f64, plan: &MonteCarloPlan) -> Result<CriticalValueSchedule> {
    check_alpha(alpha)?;
    check_calibration_plan(plan, alpha)?;
    let stats = simulate_null_norms(&[exponent], d, plan)?;
    Ok(schedule_from_null(exponent, d, alpha, plan, &stats[0]))
}

pub(crate) fn schedule_from_null(
    exponent: Exponent,
    d: usize,
    alpha: f64,
    plan: &MonteCarloPlan,
    null_stats: &[f64],
) -> CriticalValueSchedule {
    let (value, order_index) = empirical_critical_value(null_stats, alpha);
    CriticalValueSchedule {
        kind: ScheduleKind::MonteCarloExact,
        exponent,
        alpha,
        d,
        value,
        provenance: Provenance::MonteCarlo {
            replications: plan.replications,
            seed: plan.seed,
            chunk_size: plan.chunk_size,
            order_index,
        },
    }
}
