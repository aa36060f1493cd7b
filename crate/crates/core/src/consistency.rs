//! Alternative arrays and the finite-d consistency functionals.
//!
//! Divergence of Σ g_p(θ_i)/√d (finite p) or Σ Φ̄(𝔠_d−|θ_i|)/Φ(𝔠_d−|θ_i|)
//! (supremum norm) along d characterises consistency of the corresponding
//! test. Nothing here decides consistency: traces report values and a fitted
//! log-log slope over a d-grid and leave interpretation to the reader.
//!
//! Structured families are evaluated from a run-length form (value,
//! multiplicity), so grids up to d = 10⁶ and beyond cost O(1) per point.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::math::{centering_c, g_p, normal, GInf};

type RuleFn = dyn Fn(usize) -> Result<Vec<f64>> + Send + Sync;

/// Rules d ↦ θ_d.
#[derive(Clone)]
pub enum AlternativeFamily {
    /// a·(1, …, 1).
    Dense(f64),
    /// a/√(log d)·(1, …, 1).
    DenseLog(f64),
    /// a·(1, 0, …, 0).
    Sparse(f64),
    /// a·ϑ†_d: the first k_d = ⌈√d/log d⌉ entries equal τ_d = √(2 log d)/log log d.
    SemiSparseDagger(f64),
    /// (d^{1/(2p)}, 0, …, 0).
    PowerSparse(f64),
    /// θ_i = d^{−1/4} for i < d and θ_d = d^{1/(2p)}: bounded criterion at p < 2
    /// although both ∥θ∥₂²/√d and ∥θ∥_p^p/√d diverge.
    RewriteCounterexample(f64),
    Custom { label: String, rule: Arc<RuleFn> },
}

impl fmt::Debug for AlternativeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Parses `kind[:param]`, the inverse of [`AlternativeFamily::label`] for the
/// built-in kinds. The scale defaults to 1; `powersparse` and `rewrite`
/// require their exponent. `semisparse` is accepted for `dagger`.
impl FromStr for AlternativeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (kind, param) = match t.split_once(':') {
            Some((k, v)) => (k, Some(v)),
            None => (t, None),
        };
        let value = |required: bool| -> Result<f64> {
            match param {
                Some(v) => v.trim().parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| Error::config(format!("bad family parameter in '{s}'"))),
                None if required => Err(Error::config(format!("family '{kind}' needs a parameter, e.g. '{kind}:2'"))),
                None => Ok(1.0),
            }
        };
        let fam = match kind.to_ascii_lowercase().as_str() {
            "dense" => AlternativeFamily::Dense(value(false)?),
            "denselog" => AlternativeFamily::DenseLog(value(false)?),
            "sparse" => AlternativeFamily::Sparse(value(false)?),
            "dagger" | "semisparse" => AlternativeFamily::SemiSparseDagger(value(false)?),
            "powersparse" => AlternativeFamily::PowerSparse(value(true)?),
            "rewrite" => AlternativeFamily::RewriteCounterexample(value(true)?),
            other => return Err(Error::config(format!("unknown family '{other}'"))),
        };
        fam.check(fam.min_dim())?;
        Ok(fam)
    }
}

/// k_d = ⌈√d / log d⌉.
pub fn dagger_k(d: usize) -> usize {
    let df = d as f64;
    (df.sqrt() / df.ln()).ceil() as usize
}

/// τ_d = √(2 log d) / log log d.
pub fn dagger_tau(d: usize) -> f64 {
    let ld = (d as f64).ln();
    (2.0 * ld).sqrt() / ld.ln()
}

impl AlternativeFamily {
    pub fn custom<F>(label: impl Into<String>, rule: F) -> Self
    where
        F: Fn(usize) -> Result<Vec<f64>> + Send + Sync + 'static,
    {
        AlternativeFamily::Custom { label: label.into(), rule: Arc::new(rule) }
    }

    pub fn label(&self) -> String {
        match self {
            AlternativeFamily::Dense(a) => format!("dense:{a}"),
            AlternativeFamily::DenseLog(a) => format!("denselog:{a}"),
            AlternativeFamily::Sparse(a) => format!("sparse:{a}"),
            AlternativeFamily::SemiSparseDagger(a) => format!("dagger:{a}"),
            AlternativeFamily::PowerSparse(p) => format!("powersparse:{p}"),
            AlternativeFamily::RewriteCounterexample(p) => format!("rewrite:{p}"),
            AlternativeFamily::Custom { label, .. } => label.clone(),
        }
    }

    /// Family name without the parameter.
    pub fn kind(&self) -> &str {
        match self {
            AlternativeFamily::Dense(_) => "dense",
            AlternativeFamily::DenseLog(_) => "denselog",
            AlternativeFamily::Sparse(_) => "sparse",
            AlternativeFamily::SemiSparseDagger(_) => "dagger",
            AlternativeFamily::PowerSparse(_) => "powersparse",
            AlternativeFamily::RewriteCounterexample(_) => "rewrite",
            AlternativeFamily::Custom { label, .. } => label,
        }
    }

    /// The same family with scale parameter `a`. Families without a scale
    /// are returned unchanged.
    pub fn with_scale(&self, a: f64) -> Self {
        match self {
            AlternativeFamily::Dense(_) => AlternativeFamily::Dense(a),
            AlternativeFamily::DenseLog(_) => AlternativeFamily::DenseLog(a),
            AlternativeFamily::Sparse(_) => AlternativeFamily::Sparse(a),
            AlternativeFamily::SemiSparseDagger(_) => AlternativeFamily::SemiSparseDagger(a),
            other => other.clone(),
        }
    }

    pub fn min_dim(&self) -> usize {
        match self {
            AlternativeFamily::SemiSparseDagger(_) => 16,
            AlternativeFamily::DenseLog(_) => 2,
            _ => 1,
        }
    }

    fn check(&self, d: usize) -> Result<()> {
        if d < self.min_dim() {
            return Err(Error::domain(format!("family {} needs d >= {}, got {d}", self.label(), self.min_dim())));
        }
        match self {
            AlternativeFamily::PowerSparse(p) | AlternativeFamily::RewriteCounterexample(p) if !(*p > 0.0 && p.is_finite()) => {
                Err(Error::domain(format!("family exponent must be positive, got {p}")))
            }
            _ => Ok(()),
        }
    }

    /// θ_d as (value, multiplicity) runs in coordinate order, or `None` for
    /// custom rules.
    pub fn runs(&self, d: usize) -> Result<Option<Vec<(f64, usize)>>> {
        self.check(d)?;
        let df = d as f64;
        let runs = match *self {
            AlternativeFamily::Dense(a) => vec![(a, d)],
            AlternativeFamily::DenseLog(a) => vec![(a / df.ln().sqrt(), d)],
            AlternativeFamily::Sparse(a) => vec![(a, 1), (0.0, d - 1)],
            AlternativeFamily::SemiSparseDagger(a) => {
                let k = dagger_k(d).min(d);
                vec![(a * dagger_tau(d), k), (0.0, d - k)]
            }
            AlternativeFamily::PowerSparse(p) => vec![(df.powf(1.0 / (2.0 * p)), 1), (0.0, d - 1)],
            AlternativeFamily::RewriteCounterexample(p) => vec![(df.powf(-0.25), d - 1), (df.powf(1.0 / (2.0 * p)), 1)],
            AlternativeFamily::Custom { .. } => return Ok(None),
        };
        Ok(Some(runs.into_iter().filter(|(_, n)| *n > 0).collect()))
    }

    /// θ_d as a dense vector.
    pub fn theta(&self, d: usize) -> Result<Vec<f64>> {
        match self.runs(d)? {
            Some(runs) => Ok(runs.iter().flat_map(|(v, n)| std::iter::repeat_n(*v, *n)).collect()),
            None => {
                let AlternativeFamily::Custom { rule, label } = self else { unreachable!() };
                let v = rule(d)?;
                if v.len() != d {
                    return Err(Error::DimensionMismatch { expected: d, got: v.len() });
                }
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(Error::domain(format!("family {label} produced non-finite entries")));
                }
                Ok(v)
            }
        }
    }

    fn weighted(&self, d: usize) -> Result<Vec<(f64, usize)>> {
        match self.runs(d)? {
            Some(r) => Ok(r),
            None => Ok(self.theta(d)?.into_iter().map(|v| (v, 1)).collect()),
        }
    }
}

/// d^{−1/2} Σ g_p(θ_i; M).
pub fn criterion_finite(theta: &[f64], p: f64, m: f64) -> Result<f64> {
    check_p(p)?;
    if !(m > 0.0) {
        return Err(Error::domain(format!("M must be positive, got {m}")));
    }
    if theta.is_empty() {
        return Err(Error::domain("empty parameter vector"));
    }
    let s: f64 = theta.iter().map(|x| g_p(p, *x, m)).sum();
    Ok(s / (theta.len() as f64).sqrt())
}

fn criterion_finite_runs(runs: &[(f64, usize)], d: usize, p: f64, m: f64) -> f64 {
    let s: f64 = runs.iter().map(|(x, n)| *n as f64 * g_p(p, *x, m)).sum();
    s / (d as f64).sqrt()
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("exponent must be positive and finite, got {p}")))
    }
}

/// Both forms of the supremum-norm criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupCriterion {
    /// Σ Φ̄(𝔠_d−|θ_i|)/Φ(𝔠_d−|θ_i|), with capped terms where Φ underflows.
    pub ratio_form: f64,
    /// Σ g_∞(𝔠_d−|θ_i|).
    pub g_form: f64,
    /// Some term of the ratio form hit [`RATIO_CAP`].
    pub saturated: bool,
}

/// Φ(z) > 1e−300 exactly when z > this value.
pub fn ratio_cap_argument() -> f64 {
    normal::quantile(1e-300)
}

/// Φ̄/Φ at [`ratio_cap_argument`]; terms with smaller arguments are set to this.
pub const RATIO_CAP: f64 = 1e300;

#[inline]
fn capped_odds(z: f64) -> (f64, bool) {
    let phi = normal::cdf(z);
    if phi <= 1e-300 {
        (RATIO_CAP, true)
    } else {
        (normal::sf(z) / phi, false)
    }
}

fn criterion_sup_runs(runs: &[(f64, usize)], d: usize, g: &GInf) -> Result<SupCriterion> {
    let c = centering_c(d as u64)?;
    let mut out = SupCriterion { ratio_form: 0.0, g_form: 0.0, saturated: false };
    for (x, n) in runs {
        let z = c - x.abs();
        let (r, sat) = capped_odds(z);
        out.ratio_form += *n as f64 * r;
        out.g_form += *n as f64 * g.eval(z);
        out.saturated |= sat;
    }
    Ok(out)
}

/// Supremum-norm criterion with the default g_∞ weight.
pub fn criterion_sup(theta: &[f64]) -> Result<SupCriterion> {
    criterion_sup_with(theta, &GInf::default())
}

pub fn criterion_sup_with(theta: &[f64], g: &GInf) -> Result<SupCriterion> {
    if theta.is_empty() {
        return Err(Error::domain("empty parameter vector"));
    }
    let runs: Vec<(f64, usize)> = theta.iter().map(|v| (*v, 1)).collect();
    criterion_sup_runs(&runs, theta.len(), g)
}

/// Which supremum-norm form a trace reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SupForm {
    /// Weight-free Φ̄/Φ form.
    #[default]
    Ratio,
    /// Σ g_∞ with the default weight.
    G,
}

/// Criterion values of one family along a d-grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionTrace {
    pub family: String,
    pub exponent: Exponent,
    pub d_grid: Vec<usize>,
    pub values: Vec<f64>,
    /// Least-squares slope of log(value) on log(d); `None` if some value is
    /// zero or not finite.
    pub fitted_log_slope: Option<f64>,
    pub saturated: bool,
}

impl CriterionTrace {
    /// CSV with header `d,value`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("d,value\n");
        for (d, v) in self.d_grid.iter().zip(&self.values) {
            s.push_str(&format!("{d},{v}\n"));
        }
        s
    }
}

/// Least-squares slope of y on x.
pub fn ls_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len();
    if n < 2 || y.len() != n {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}

/// Evaluates the criterion matching `exponent` at each d of the grid.
pub fn trace(family: &AlternativeFamily, exponent: Exponent, d_grid: &[usize], form: SupForm) -> Result<CriterionTrace> {
    if d_grid.is_empty() {
        return Err(Error::domain("empty d-grid"));
    }
    if d_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("d-grid must be strictly increasing"));
    }
    if d_grid[0] < 3 {
        return Err(Error::domain("d-grid must start at 3 or above"));
    }
    exponent.validate()?;
    let g = GInf::default();
    let rows: Vec<(f64, bool)> = d_grid
        .par_iter()
        .map(|&d| {
            let runs = family.weighted(d)?;
            match exponent {
                Exponent::Finite(p) => Ok((criterion_finite_runs(&runs, d, p, 1.0), false)),
                Exponent::Sup => {
                    let c = criterion_sup_runs(&runs, d, &g)?;
                    Ok(match form {
                        SupForm::Ratio => (c.ratio_form, c.saturated),
                        SupForm::G => (c.g_form, false),
                    })
                }
            }
        })
        .collect::<Result<_>>()?;
    let values: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let fitted_log_slope = if values.iter().all(|v| *v > 0.0 && v.is_finite()) {
        let lx: Vec<f64> = d_grid.iter().map(|d| (*d as f64).ln()).collect();
        let ly: Vec<f64> = values.iter().map(|v| v.ln()).collect();
        ls_slope(&lx, &ly)
    } else {
        None
    };
    Ok(CriterionTrace {
        family: family.label(),
        exponent,
        d_grid: d_grid.to_vec(),
        values,
        fitted_log_slope,
        saturated: rows.iter().any(|r| r.1),
    })
}

/// {⌈10^{k/4}⌉ : lo ≤ 10^{k/4} ≤ hi}.
pub fn geometric_d_grid(lo: f64, hi: f64) -> Result<Vec<usize>> {
    if !(lo >= 1.0 && hi >= lo && hi.is_finite()) {
        return Err(Error::domain(format!("bad grid range [{lo}, {hi}]")));
    }
    let k0 = (4.0 * lo.log10() - 1e-9).ceil() as i64;
    let k1 = (4.0 * hi.log10() + 1e-9).floor() as i64;
    let mut v: Vec<usize> = (k0..=k1)
        .map(|k| {
            let x = 10f64.powf(k as f64 / 4.0);
            // Exact powers of ten must not be pushed up by rounding noise.
            (x - 1e-9 * x).ceil() as usize
        })
        .collect();
    v.dedup();
    if v.is_empty() {
        return Err(Error::domain(format!("no grid point in [{lo}, {hi}]")));
    }
    Ok(v)
}

/// Parses `geometric:LO:HI` or a comma-separated list of dimensions.
pub fn parse_d_grid(spec: &str) -> Result<Vec<usize>> {
    let s = spec.trim();
    if let Some(rest) = s.strip_prefix("geometric:") {
        let (a, b) = rest.split_once(':').ok_or_else(|| Error::config(format!("bad grid '{spec}'")))?;
        let lo: f64 = a.trim().parse().map_err(|_| Error::config(format!("bad grid bound '{a}'")))?;
        let hi: f64 = b.trim().parse().map_err(|_| Error::config(format!("bad grid bound '{b}'")))?;
        return geometric_d_grid(lo, hi).map_err(|e| Error::config(e.to_string()));
    }
    let list = s.strip_prefix("list:").unwrap_or(s);
    list.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| *v >= 1.0 && v.fract() == 0.0)
                .map(|v| v as usize)
                .ok_or_else(|| Error::config(format!("bad dimension '{t}'")))
        })
        .collect()
}

/// The two scaled norm parts of the rewritten criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RewriteCheck {
    /// ∥θ∥₂²/√d.
    pub two_norm_part: f64,
    /// ∥θ∥_p^p/√d.
    pub p_norm_part: f64,
    /// Σ g_p(θ_i)/√d.
    pub criterion: f64,
}

impl RewriteCheck {
    /// max of the parts for p ≥ 2, min for p < 2.
    pub fn combined_part(&self, p: f64) -> f64 {
        if p >= 2.0 {
            self.two_norm_part.max(self.p_norm_part)
        } else {
            self.two_norm_part.min(self.p_norm_part)
        }
    }
}

/// Compares the criterion with its two-part rewrite. For p ≥ 2 the criterion
/// lies between the larger part and the sum of both parts, and a violation is
/// reported as an internal error.
pub fn rewrite_check(theta: &[f64], p: f64) -> Result<RewriteCheck> {
    let criterion = criterion_finite(theta, p, 1.0)?;
    let sd = (theta.len() as f64).sqrt();
    let two: f64 = theta.iter().map(|x| x * x).sum::<f64>() / sd;
    let pp: f64 = theta.iter().map(|x| x.abs().powf(p)).sum::<f64>() / sd;
    let out = RewriteCheck { two_norm_part: two, p_norm_part: pp, criterion };
    if p >= 2.0 {
        let slack = 1e-12 * (two + pp).max(f64::MIN_POSITIVE);
        let lo = 0.5 * two.max(pp);
        if criterion < lo - slack || criterion > two + pp + slack {
            return Err(Error::Internal(format!("rewrite sandwich violated: {out:?}")));
        }
    }
    Ok(out)
}

/// Exceedance diagnostics for approximate sparsity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparsityDiagnostic {
    /// #{i : |θ_i| > δ} / √d.
    pub exceed_frac: f64,
    pub max_abs: f64,
    /// δ^p · exceed_frac.
    pub delta_p_product: f64,
}

pub fn sparsity_diagnostic(theta: &[f64], delta: f64, p: f64) -> Result<SparsityDiagnostic> {
    if !(delta > 0.0) {
        return Err(Error::domain(format!("delta must be positive, got {delta}")));
    }
    check_p(p)?;
    if theta.is_empty() {
        return Err(Error::domain("empty parameter vector"));
    }
    let n = theta.iter().filter(|x| x.abs() > delta).count();
    let exceed_frac = n as f64 / (theta.len() as f64).sqrt();
    Ok(SparsityDiagnostic {
        exceed_frac,
        max_abs: crate::norm::max_abs(theta),
        delta_p_product: delta.powf(p) * exceed_frac,
    })
}

/// Minimax separation rate: d^{(4−p)/(4p)} for p ≤ 2, d^{1/(2p)} for p > 2.
pub fn minimax_radius(p: f64, d: usize) -> Result<f64> {
    check_p(p)?;
    if d == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    let df = d as f64;
    Ok(if p <= 2.0 { df.powf((4.0 - p) / (4.0 * p)) } else { df.powf(1.0 / (2.0 * p)) })
}

/// Criterion of the two-dimensional problem on a square grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourGrid {
    pub exponent: Exponent,
    pub axis: Vec<f64>,
    /// values[i][j] at (x₁, x₂) = (axis[i], axis[j]).
    pub values: Vec<Vec<f64>>,
}

impl ContourGrid {
    /// Long-form CSV with header `x1,x2,value`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x1,x2,value\n");
        for (i, row) in self.values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                s.push_str(&format!("{},{},{}\n", self.axis[i], self.axis[j], v));
            }
        }
        s
    }
}

/// Criterion at d = 2 over [lo, hi]²: (g_p(x₁) + g_p(x₂))/√2, or the ratio form
/// with 𝔠_2 for the supremum norm.
pub fn contour_grid(exponent: Exponent, range: (f64, f64), resolution: usize) -> Result<ContourGrid> {
    if resolution < 2 {
        return Err(Error::domain("resolution must be at least 2"));
    }
    let (lo, hi) = range;
    if !(lo < hi && lo.is_finite() && hi.is_finite()) {
        return Err(Error::domain(format!("bad range [{lo}, {hi}]")));
    }
    exponent.validate()?;
    let step = (hi - lo) / (resolution - 1) as f64;
    let mut axis: Vec<f64> = (0..resolution).map(|i| if i + 1 == resolution { hi } else { lo + step * i as f64 }).collect();
    if lo == -hi {
        // Mirror so that symmetric ranges give exactly symmetric axes.
        for i in resolution / 2..resolution {
            axis[i] = -axis[resolution - 1 - i];
        }
        if resolution % 2 == 1 {
            axis[resolution / 2] = 0.0;
        }
    }
    let c2 = centering_c(2)?;
    let term = |x: f64| -> f64 {
        match exponent {
            Exponent::Finite(p) => g_p(p, x, 1.0) / std::f64::consts::SQRT_2,
            Exponent::Sup => capped_odds(c2 - x.abs()).0,
        }
    };
    let terms: Vec<f64> = axis.iter().map(|x| term(*x)).collect();
    let values = terms.par_iter().map(|a| terms.iter().map(|b| a + b).collect()).collect();
    Ok(ContourGrid { exponent, axis, values })
}

/// [1/C, C]-type bounds on (Φ̄/Φ)(x) / g_∞(x) over x ≥ z, default weight.
///
/// Evaluated on a grid of step 1e−3 up to x = 35, where the ratio has settled
/// at its limit 1/√(2π); the reported interval is widened by 1% on each side
/// to cover values between grid points.
pub fn sup_form_ratio_bounds(z: f64) -> Result<(f64, f64)> {
    if !(z.is_finite() && z > ratio_cap_argument()) {
        return Err(Error::domain(format!("bound table needs z above the cap argument, got {z}")));
    }
    let g = GInf::default();
    let top = 35.0f64.max(z + 1.0);
    let n = ((top - z) / 1e-3).ceil() as usize;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for k in 0..=n {
        let x = (z + k as f64 * 1e-3).min(top);
        let r = capped_odds(x).0 / g.eval(x);
        lo = lo.min(r);
        hi = hi.max(r);
    }
    let limit = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    lo = lo.min(limit);
    hi = hi.max(limit);
    Ok((lo / 1.01, hi * 1.01))
}

/// (z, lower, upper) rows of [`sup_form_ratio_bounds`].
pub fn sup_form_bound_table(zs: &[f64]) -> Result<Vec<(f64, f64, f64)>> {
    zs.iter().map(|&z| sup_form_ratio_bounds(z).map(|(l, h)| (z, l, h))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_labels_parse_back() {
        for f in [
            AlternativeFamily::Dense(0.5),
            AlternativeFamily::DenseLog(1.0),
            AlternativeFamily::Sparse(3.0),
            AlternativeFamily::SemiSparseDagger(1.5),
            AlternativeFamily::PowerSparse(2.0),
            AlternativeFamily::RewriteCounterexample(1.5),
        ] {
            assert_eq!(f.label().parse::<AlternativeFamily>().unwrap().label(), f.label());
        }
        assert_eq!("dagger".parse::<AlternativeFamily>().unwrap().label(), "dagger:1");
        assert!("powersparse".parse::<AlternativeFamily>().is_err());
        assert!("powersparse:-1".parse::<AlternativeFamily>().is_err());
        assert!("blob".parse::<AlternativeFamily>().is_err());
    }

    #[test]
    fn runs_match_dense_vectors() {
        let fams = [
            AlternativeFamily::Dense(0.7),
            AlternativeFamily::DenseLog(1.0),
            AlternativeFamily::Sparse(3.0),
            AlternativeFamily::SemiSparseDagger(1.2),
            AlternativeFamily::PowerSparse(3.0),
            AlternativeFamily::RewriteCounterexample(1.5),
        ];
        for f in &fams {
            for &d in &[16usize, 100, 1234] {
                let th = f.theta(d).unwrap();
                assert_eq!(th.len(), d);
                let runs = f.runs(d).unwrap().unwrap();
                for &p in &[1.0, 2.0, 3.5] {
                    let a = criterion_finite(&th, p, 1.0).unwrap();
                    let b = criterion_finite_runs(&runs, d, p, 1.0);
                    assert!((a - b).abs() <= 1e-12 * a.max(1.0), "{f:?} d={d} p={p}");
                }
                let a = criterion_sup(&th).unwrap();
                let b = criterion_sup_runs(&runs, d, &GInf::default()).unwrap();
                assert!((a.ratio_form - b.ratio_form).abs() <= 1e-12 * a.ratio_form);
            }
        }
    }

    #[test]
    fn dagger_shape() {
        let th = AlternativeFamily::SemiSparseDagger(1.0).theta(50_000).unwrap();
        let k = dagger_k(50_000);
        assert_eq!(k, (50_000f64.sqrt() / 50_000f64.ln()).ceil() as usize);
        assert_eq!(k, 21);
        assert!(th[..k].iter().all(|v| (*v - dagger_tau(50_000)).abs() < 1e-15));
        assert!(th[k..].iter().all(|v| *v == 0.0));
        assert!(AlternativeFamily::SemiSparseDagger(1.0).theta(15).is_err());
    }

    #[test]
    fn finite_criterion_examples() {
        assert_eq!(criterion_finite(&[0.0; 10], 3.0, 1.0).unwrap(), 0.0);
        for &d in &[4usize, 100, 10_000] {
            let c = criterion_finite(&vec![1.0; d], 2.0, 1.0).unwrap();
            assert!((c - (d as f64).sqrt()).abs() < 1e-9 * c);
        }
        let d = 10_000usize;
        let th = AlternativeFamily::PowerSparse(3.0).theta(d).unwrap();
        assert!((criterion_finite(&th, 3.0, 1.0).unwrap() - 1.0).abs() < 1e-12);
        let q = 4.0;
        let want = (d as f64).powf(q / 6.0 - 0.5);
        assert!((criterion_finite(&th, q, 1.0).unwrap() - want).abs() < 1e-9 * want);
    }

    #[test]
    fn dense_trace_slope_is_one_half() {
        let grid = geometric_d_grid(1e3, 1e6).unwrap();
        let t = trace(&AlternativeFamily::Dense(0.3), Exponent::Finite(2.0), &grid, SupForm::Ratio).unwrap();
        assert!((t.fitted_log_slope.unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn geometric_grid_points() {
        let g = geometric_d_grid(1e3, 1e6).unwrap();
        assert_eq!(g.len(), 13);
        assert_eq!(g[0], 1000);
        assert_eq!(g[1], 1779);
        assert_eq!(*g.last().unwrap(), 1_000_000);
        assert_eq!(parse_d_grid("geometric:1e3:1e6").unwrap(), g);
        assert_eq!(parse_d_grid("10,20, 40").unwrap(), vec![10, 20, 40]);
        assert!(parse_d_grid("geometric:1e3").is_err());
        assert!(trace(&AlternativeFamily::Dense(1.0), Exponent::Sup, &[10, 5], SupForm::Ratio).is_err());
    }

    #[test]
    fn rewrite_examples() {
        let th = vec![0.3, -1.7, 2.2, 0.0];
        let r = rewrite_check(&th, 2.0).unwrap();
        assert!((r.two_norm_part - r.p_norm_part).abs() < 1e-14);
        assert!((r.two_norm_part - r.criterion).abs() < 1e-14);
        let d = 400usize;
        let s = AlternativeFamily::Sparse(3.0).theta(d).unwrap();
        let r = rewrite_check(&s, 3.0).unwrap();
        assert!((r.p_norm_part - 27.0 / 20.0).abs() < 1e-14);
        assert!((r.two_norm_part - 9.0 / 20.0).abs() < 1e-14);
    }

    #[test]
    fn diagnostics_and_radius() {
        let d = 10_000usize;
        let s = sparsity_diagnostic(&vec![1.0; d], 0.5, 2.0).unwrap();
        assert!((s.exceed_frac - 100.0).abs() < 1e-12);
        let ps = AlternativeFamily::PowerSparse(2.0).theta(d).unwrap();
        let s = sparsity_diagnostic(&ps, 1.0, 2.0).unwrap();
        assert!((s.exceed_frac - 0.01).abs() < 1e-15);
        assert!((s.max_abs - 10.0).abs() < 1e-12);
        assert!((minimax_radius(2.0, d).unwrap() - 10.0).abs() < 1e-12);
        assert!((minimax_radius(4.0, d).unwrap() - 10f64.sqrt()).abs() < 1e-12);
        assert!((minimax_radius(1.0, d).unwrap() - 1000.0).abs() < 1e-9);
        let a = minimax_radius(2.0 - 1e-9, d).unwrap();
        let b = minimax_radius(2.0 + 1e-9, d).unwrap();
        assert!((a - b).abs() < 1e-6);
    }

    #[test]
    fn contour_symmetries() {
        let g = contour_grid(Exponent::Finite(2.0), (-3.0, 3.0), 61).unwrap();
        let n = g.axis.len();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(g.values[i][j], g.values[j][i]);
                assert_eq!(g.values[i][j], g.values[n - 1 - i][j]);
            }
        }
        // Points (3,0) and (0,3) and (−3,0) lie on one circle.
        let (a, b) = (g.values[60][30], g.values[30][60]);
        assert_eq!(a, b);
        let s = contour_grid(Exponent::Sup, (-4.0, 4.0), 41).unwrap();
        assert_eq!(s.values[3][17], s.values[17][3]);
        assert!(contour_grid(Exponent::Sup, (0.0, 1.0), 1).is_err());
    }

    #[test]
    fn saturation_flag() {
        let c = criterion_sup(&[100.0, 0.0, 0.0]).unwrap();
        assert!(c.saturated);
        assert_eq!(c.ratio_form.min(RATIO_CAP), RATIO_CAP);
        let c = criterion_sup(&[1.0, 0.0, 0.0]).unwrap();
        assert!(!c.saturated);
        assert!(c.ratio_form > 0.0 && c.g_form > 0.0);
    }

    #[test]
    fn bound_table_is_ordered() {
        let t = sup_form_bound_table(&[-5.0, -2.0, 0.0, 2.0]).unwrap();
        for w in t.windows(2) {
            assert!(w[1].1 >= w[0].1 && w[1].2 <= w[0].2);
        }
        assert!(t.iter().all(|(_, l, h)| *l > 0.0 && h.is_finite() && l < h));
    }
}
