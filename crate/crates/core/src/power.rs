//! Monte-Carlo size and power estimation, power curves over alternative
//! families, and the demonstrations built on them.
//!
//! Every driver draws the noise once per replication and evaluates all tests
//! and all parameter vectors on that draw (common random numbers). Estimates
//! within one call are therefore positively correlated, which sharpens
//! comparisons between tests.

use crate::budget::{budget_from_geometric, example_spec_config, AlphaBudget};
use crate::consistency::AlternativeFamily;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::math::normal;
use crate::mc::{self, MonteCarloPlan};
use crate::procedure::{
    build_enhanced, build_norm_test, calibrate_suite, enhancement_scale, union_test, Calibration, CombinedTest,
    EnhancedTest, SuiteConfig, TestBattery, TestSpec,
};

/// A rejection-rate estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEstimate {
    pub rate: f64,
    /// √(p̂(1−p̂)/R).
    pub stderr: f64,
    pub replications: usize,
}

impl RateEstimate {
    pub fn from_count(count: u64, replications: usize) -> Self {
        let r = replications as f64;
        let rate = count as f64 / r;
        RateEstimate { rate, stderr: (rate * (1.0 - rate) / r).sqrt(), replications }
    }
}

/// √(se₁² + se₂²).
pub fn pooled_stderr(a: &RateEstimate, b: &RateEstimate) -> f64 {
    (a.stderr * a.stderr + b.stderr * b.stderr).sqrt()
}

/// counts[k][t]: rejections of test t at θ_k, over one set of noise draws.
pub fn rejection_counts(battery: &TestBattery, thetas: &[Vec<f64>], plan: &MonteCarloPlan) -> Result<Vec<Vec<u64>>> {
    let d = battery.dim();
    if let Some(t) = thetas.iter().find(|t| t.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: t.len() });
    }
    if thetas.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::domain("parameter vector has non-finite entries"));
    }
    let nt = battery.len();
    let flat = mc::fold_chunked(
        plan,
        d,
        || (vec![0u64; thetas.len() * nt], battery.evaluator(), vec![0.0; d]),
        |(counts, eval, y), eps, _| {
            for (k, theta) in thetas.iter().enumerate() {
                for ((yi, e), t) in y.iter_mut().zip(eps).zip(theta) {
                    *yi = e + t;
                }
                for (t, rej) in eval.decide(y).iter().enumerate() {
                    counts[k * nt + t] += *rej as u64;
                }
            }
        },
        |mut a, b| {
            a.0.iter_mut().zip(&b.0).for_each(|(x, y)| *x += y);
            a
        },
    )?
    .0;
    Ok(flat.chunks(nt.max(1)).map(<[u64]>::to_vec).collect())
}

/// Fraction of draws y = θ + ε on which `test` rejects.
pub fn estimate_rejection(test: &TestSpec, theta: &[f64], plan: &MonteCarloPlan) -> Result<RateEstimate> {
    let battery = TestBattery::new(vec![test.clone()])?;
    let counts = rejection_counts(&battery, &[theta.to_vec()], plan)?;
    Ok(RateEstimate::from_count(counts[0][0], plan.replications))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerRow {
    pub test: String,
    pub family: String,
    pub a: f64,
    pub d: usize,
    pub estimate: RateEstimate,
}

/// Power estimates over tests × scale grid for one family.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerTable {
    pub family: String,
    pub d: usize,
    pub tests: Vec<String>,
    pub a_grid: Vec<f64>,
    /// Row-major: all tests at a_grid[0], then all tests at a_grid[1], …
    pub rows: Vec<PowerRow>,
}

impl PowerTable {
    pub fn get(&self, test: &str, a_index: usize) -> Option<&RateEstimate> {
        let t = self.tests.iter().position(|x| x == test)?;
        self.rows.get(a_index * self.tests.len() + t).map(|r| &r.estimate)
    }

    /// Power of one test along the grid.
    pub fn series(&self, test: &str) -> Option<Vec<RateEstimate>> {
        (0..self.a_grid.len()).map(|i| self.get(test, i).copied()).collect()
    }

    /// CSV with header `test,family,a,d,power,stderr,replications`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("test,family,a,d,power,stderr,replications\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.test, r.family, r.a, r.d, r.estimate.rate, r.estimate.stderr, r.estimate.replications
            ));
        }
        s
    }

    /// Decreases in a beyond 3 pooled standard errors: (test, a_lo, a_hi).
    pub fn monotonicity_violations(&self) -> Vec<(String, f64, f64)> {
        let mut out = Vec::new();
        for t in &self.tests {
            let s = self.series(t).unwrap_or_default();
            for i in 1..s.len() {
                if s[i - 1].rate - s[i].rate > 3.0 * (s[i - 1].stderr + s[i].stderr) {
                    out.push((t.clone(), self.a_grid[i - 1], self.a_grid[i]));
                }
            }
        }
        out
    }
}

/// Power of every test against family.with_scale(a) for a in `a_grid`.
pub fn power_curve(
    tests: &[TestSpec],
    family: &AlternativeFamily,
    a_grid: &[f64],
    d: usize,
    plan: &MonteCarloPlan,
) -> Result<PowerTable> {
    let battery = TestBattery::new(tests.to_vec())?;
    if battery.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: battery.dim() });
    }
    if a_grid.is_empty() {
        return Err(Error::config("empty scale grid"));
    }
    let thetas = a_grid.iter().map(|a| family.with_scale(*a).theta(d)).collect::<Result<Vec<_>>>()?;
    let counts = rejection_counts(&battery, &thetas, plan)?;
    let labels = battery.labels();
    let mut rows = Vec::with_capacity(a_grid.len() * labels.len());
    for (k, a) in a_grid.iter().enumerate() {
        for (t, label) in labels.iter().enumerate() {
            rows.push(PowerRow {
                test: label.clone(),
                family: family.kind().to_string(),
                a: *a,
                d,
                estimate: RateEstimate::from_count(counts[k][t], plan.replications),
            });
        }
    }
    Ok(PowerTable { family: family.kind().to_string(), d, tests: labels, a_grid: a_grid.to_vec(), rows })
}

/// Number of points in automatic scale grids.
pub const AUTO_GRID_POINTS: usize = 32;

/// Starting upper end of the scale range for a family at dimension d.
pub fn initial_scale_max(family: &AlternativeFamily, d: usize) -> f64 {
    let ld = (d as f64).ln();
    match family {
        AlternativeFamily::Dense(_) => 3.0 * (d as f64).powf(-0.25),
        AlternativeFamily::DenseLog(_) => 3.0 * (d as f64).powf(-0.25) * ld.sqrt(),
        AlternativeFamily::Sparse(_) => (2.0 * ld).sqrt() + 2.0,
        AlternativeFamily::SemiSparseDagger(_) => 2.0,
        _ => 1.0,
    }
}

/// Equally spaced grid 0 = a_1 < … < a_32 = a_max, where a_max starts at
/// [`initial_scale_max`] and doubles until the most powerful test reaches
/// 0.99 at a_max (at most 12 doublings).
pub fn auto_scale_grid(tests: &[TestSpec], family: &AlternativeFamily, d: usize, plan: &MonteCarloPlan) -> Result<Vec<f64>> {
    let battery = TestBattery::new(tests.to_vec())?;
    let mut a_max = initial_scale_max(family, d);
    for _ in 0..12 {
        let theta = family.with_scale(a_max).theta(d)?;
        let counts = rejection_counts(&battery, &[theta], plan)?;
        let best = counts[0].iter().copied().max().unwrap_or(0) as f64 / plan.replications as f64;
        if best >= 0.99 {
            break;
        }
        a_max *= 2.0;
    }
    let n = AUTO_GRID_POINTS;
    Ok((0..n).map(|i| a_max * i as f64 / (n - 1) as f64).collect())
}

/// Calibration and power plans for the experiment presets.
#[derive(Debug, Clone)]
pub struct ExperimentScale {
    pub d: usize,
    pub calibration: MonteCarloPlan,
    pub power: MonteCarloPlan,
}

impl ExperimentScale {
    /// d = 10⁴, 10⁵ calibration and 2000 power replications.
    pub fn desk(seed: u64) -> Self {
        ExperimentScale {
            d: 10_000,
            calibration: MonteCarloPlan::new(100_000, seed),
            power: MonteCarloPlan::new(2000, seed.wrapping_add(1)),
        }
    }

    /// d = 50 000 with 50 000 calibration and 1000 power replications.
    pub fn full(seed: u64) -> Self {
        ExperimentScale {
            d: 50_000,
            calibration: MonteCarloPlan::new(50_000, seed),
            power: MonteCarloPlan::new(1000, seed.wrapping_add(1)),
        }
    }

    /// The full plans at both d = 50 000 and d = 250 000.
    pub fn study(seed: u64) -> Vec<Self> {
        [50_000, 250_000].into_iter().map(|d| ExperimentScale { d, ..Self::full(seed) }).collect()
    }
}

/// Single tests p = 1, 2, 3, 4, ∞ and the combined test of the study preset,
/// all at level α and calibrated on one null sample. With `minimax_p_d` the
/// minimax-adaptive test is appended.
pub fn study_tests(d: usize, alpha: f64, minimax_p_d: Option<usize>, plan: &MonteCarloPlan) -> Result<Vec<TestSpec>> {
    let (m, ps) = example_spec_config(d)?;
    let budget = budget_from_geometric(m, alpha, 0.5, 0.5)?;
    let cfg = SuiteConfig {
        d,
        alpha,
        singles: [1.0, 2.0, 3.0, 4.0]
            .into_iter()
            .map(Exponent::Finite)
            .chain([Exponent::Sup])
            .map(|e| (e, alpha))
            .collect(),
        combined: Some((ps.into_iter().map(Exponent::Finite).collect(), budget)),
        minimax_p_d,
    };
    calibrate_suite(&cfg, plan)
}

/// One line of a demonstration report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportEntry {
    pub label: String,
    pub estimate: RateEstimate,
}

/// Power against ϑ† of the 2-norm and sup-norm tests, their max-combination,
/// the combined test and the p = 3, 4 tests.
#[derive(Debug, Clone, PartialEq)]
pub struct PeReport {
    pub d: usize,
    pub scale: f64,
    pub alpha2: f64,
    pub alpha_inf: f64,
    pub entries: Vec<ReportEntry>,
    /// Draws where the max-combination rejected although neither member did.
    /// Always zero; kept as an explicit per-sample check.
    pub union_violations: u64,
}

impl PeReport {
    pub fn get(&self, label: &str) -> Option<&RateEstimate> {
        self.entries.iter().find(|e| e.label == label).map(|e| &e.estimate)
    }
}

/// Runs the max-combination demonstration against a·ϑ†_d.
///
/// Tests (i) p = 2 at α₂ and (ii) sup at α_∞, (iii) their union, (iv) the
/// combined test of the study preset and (v) p = 3, 4, the last two at
/// α₂ + α_∞. All critical values come from one null sample.
pub fn pe_demo(d: usize, alpha2: f64, alpha_inf: f64, scale: f64, calibration: &MonteCarloPlan, power: &MonteCarloPlan) -> Result<PeReport> {
    if !(alpha2 > 0.0 && alpha_inf > 0.0 && alpha2 + alpha_inf < 1.0) {
        return Err(Error::domain(format!("need α₂, α_∞ > 0 with α₂ + α_∞ < 1, got {alpha2} and {alpha_inf}")));
    }
    if d < 16 {
        return Err(Error::domain("the semi-sparse alternative needs d >= 16"));
    }
    let alpha = alpha2 + alpha_inf;
    let (m, ps) = example_spec_config(d)?;
    let budget = budget_from_geometric(m, alpha, 0.5, 0.5)?;
    let suite = calibrate_suite(
        &SuiteConfig {
            d,
            alpha,
            singles: vec![
                (Exponent::Finite(2.0), alpha2),
                (Exponent::Sup, alpha_inf),
                (Exponent::Finite(3.0), alpha),
                (Exponent::Finite(4.0), alpha),
            ],
            combined: Some((ps.into_iter().map(Exponent::Finite).collect(), budget)),
            minimax_p_d: None,
        },
        calibration,
    )?;
    let [two, sup, p3, p4, psi]: [TestSpec; 5] = suite.try_into().map_err(|_| Error::Internal("suite size".into()))?;
    let union = union_test(vec![two.clone(), sup.clone()])?;
    let tests = vec![two, sup, union, psi, p3, p4];
    let labels = ["p=2", "sup", "max(p=2,sup)", "psi", "p=3", "p=4"];

    let theta = AlternativeFamily::SemiSparseDagger(scale).theta(d)?;
    let battery = TestBattery::new(tests)?;
    let (counts, violations) = mc::fold_chunked(
        power,
        d,
        || (vec![0u64; labels.len()], 0u64, battery.evaluator(), vec![0.0; d]),
        |(counts, viol, eval, y), eps, _| {
            for ((yi, e), t) in y.iter_mut().zip(eps).zip(&theta) {
                *yi = e + t;
            }
            let dec = eval.decide(y);
            if dec[2] && !(dec[0] || dec[1]) {
                *viol += 1;
            }
            for (c, r) in counts.iter_mut().zip(dec) {
                *c += *r as u64;
            }
        },
        |mut a, b| {
            a.0.iter_mut().zip(&b.0).for_each(|(x, y)| *x += y);
            a.1 += b.1;
            a
        },
    )
    .map(|a| (a.0, a.1))?;
    let entries = labels
        .iter()
        .zip(&counts)
        .map(|(l, c)| ReportEntry { label: l.to_string(), estimate: RateEstimate::from_count(*c, power.replications) })
        .collect();
    Ok(PeReport { d, scale, alpha2, alpha_inf, entries, union_violations: violations })
}

/// (Φ^{-1}(1−ᾱ_j) − Φ^{-1}(1−α))/√(2π), ᾱ_j the limiting level of member j.
pub fn opt_sum_bound(budget: &AlphaBudget, j: usize) -> Result<f64> {
    let a_bar = budget.limit_alpha(j)?;
    Ok((normal::upper_quantile(a_bar) - normal::upper_quantile(budget.alpha)) / (2.0 * std::f64::consts::PI).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapRow {
    pub label: String,
    pub standalone: RateEstimate,
    pub combined: RateEstimate,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapScan {
    pub member: usize,
    pub exponent: Exponent,
    pub bound: f64,
    pub rows: Vec<GapRow>,
}

impl GapScan {
    /// Row with the largest standalone − combined power difference.
    pub fn max_gap(&self) -> Option<&GapRow> {
        self.rows.iter().max_by(|a, b| a.gap.total_cmp(&b.gap))
    }

    /// CSV with header `label,standalone,standalone_se,combined,combined_se,gap`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("label,standalone,standalone_se,combined,combined_se,gap\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.label, r.standalone.rate, r.standalone.stderr, r.combined.rate, r.combined.stderr, r.gap
            ));
        }
        s
    }
}

/// Power of the p_j test alone at the full level against the combined test,
/// over a list of labelled parameter vectors. The standalone test is
/// calibrated with `calibration`; power uses common draws for both tests.
pub fn opt_sum_gap_scan(
    combined: &CombinedTest,
    j: usize,
    thetas: &[(String, Vec<f64>)],
    calibration: &MonteCarloPlan,
    power: &MonteCarloPlan,
) -> Result<GapScan> {
    if j >= combined.exponents.len() {
        return Err(Error::domain(format!("member index {j} out of range")));
    }
    let exponent = combined.exponents[j];
    let standalone = build_norm_test(exponent, combined.d, combined.target_alpha, &Calibration::MonteCarlo(calibration.clone()))?;
    let battery = TestBattery::new(vec![standalone, TestSpec::Combined(combined.clone())])?;
    let vectors: Vec<Vec<f64>> = thetas.iter().map(|(_, t)| t.clone()).collect();
    let counts = rejection_counts(&battery, &vectors, power)?;
    let rows = thetas
        .iter()
        .zip(&counts)
        .map(|((label, _), c)| {
            let s = RateEstimate::from_count(c[0], power.replications);
            let k = RateEstimate::from_count(c[1], power.replications);
            GapRow { label: label.clone(), standalone: s, combined: k, gap: s.rate - k.rate }
        })
        .collect();
    Ok(GapScan { member: j, exponent, bound: opt_sum_bound(&combined.budget, j)?, rows })
}

/// Sizes and powers of a base test and its enhancement.
#[derive(Debug, Clone)]
pub struct EnhancementReport {
    pub enhanced: EnhancedTest,
    pub size_base: RateEstimate,
    pub size_enhanced: RateEstimate,
    /// Against a_d·e_{i*}.
    pub power_base: RateEstimate,
    pub power_enhanced: RateEstimate,
    /// P(|N(a_d, 1)| ≥ √a_d), a lower bound for `power_enhanced`.
    pub exact_power_floor: f64,
    /// 2Φ̄(√a_d), an upper bound for the size inflation.
    pub size_inflation_bound: f64,
    /// Draws where the base rejected but the enhancement did not. Always zero.
    pub domination_violations: u64,
}

/// Builds the enhancement of `base` and measures it under the null and
/// against a_d·e_{i*}, all on common draws.
pub fn enhancement_demo(base: TestSpec, plan: &MonteCarloPlan) -> Result<EnhancementReport> {
    let d = base.dim();
    let enhanced = build_enhanced(base.clone(), plan)?;
    let a = enhancement_scale(d);
    let mut alt = vec![0.0; d];
    alt[enhanced.i_star] = a;
    let battery = TestBattery::new(vec![base, TestSpec::Enhanced(enhanced.clone())])?;
    let thetas = [vec![0.0; d], alt];
    let (counts, violations) = mc::fold_chunked(
        plan,
        d,
        || ([0u64; 4], 0u64, battery.evaluator(), vec![0.0; d]),
        |(counts, viol, eval, y), eps, _| {
            for (k, th) in thetas.iter().enumerate() {
                for ((yi, e), t) in y.iter_mut().zip(eps).zip(th) {
                    *yi = e + t;
                }
                let dec = eval.decide(y);
                if dec[0] && !dec[1] {
                    *viol += 1;
                }
                counts[2 * k] += dec[0] as u64;
                counts[2 * k + 1] += dec[1] as u64;
            }
        },
        |mut a, b| {
            (0..4).for_each(|i| a.0[i] += b.0[i]);
            a.1 += b.1;
            a
        },
    )
    .map(|a| (a.0, a.1))?;
    let r = plan.replications;
    let nu = enhanced.nu_threshold;
    Ok(EnhancementReport {
        size_base: RateEstimate::from_count(counts[0], r),
        size_enhanced: RateEstimate::from_count(counts[1], r),
        power_base: RateEstimate::from_count(counts[2], r),
        power_enhanced: RateEstimate::from_count(counts[3], r),
        exact_power_floor: normal::sf(nu - a) + normal::cdf(-nu - a),
        size_inflation_bound: 2.0 * normal::sf(nu),
        domination_violations: violations,
        enhanced,
    })
}
