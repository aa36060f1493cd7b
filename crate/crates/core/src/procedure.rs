//! Test procedures: single p-norm tests, the combined test with a level
//! budget and size multiplier c_d, the minimax-adaptive test, the one-coordinate
//! power enhancement, unions, and user-supplied tests.
//!
//! Every test is a deterministic function of y ∈ ℝ^d. [`TestBattery`]
//! evaluates several tests on one vector while computing each distinct norm
//! once, which is what the Monte-Carlo drivers use.

use std::fmt;
use std::sync::Arc;

use crate::budget::AlphaBudget;
use crate::critical::{
    self, asymptotic_schedule, check_calibration_plan, power_root_of_centered, schedule_from_null,
    simulate_null_norms, CriticalValueSchedule, Provenance,
};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::math::{gauss_moments, normal};
use crate::mc::{self, MonteCarloPlan};
use crate::norm::NormWorkspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Accept,
    Reject,
}

impl Decision {
    pub fn is_reject(self) -> bool {
        self == Decision::Reject
    }

    fn from_bool(reject: bool) -> Self {
        if reject {
            Decision::Reject
        } else {
            Decision::Accept
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Accept => "accept",
            Decision::Reject => "reject",
        })
    }
}

/// How a single-norm critical value is obtained.
#[derive(Debug, Clone)]
pub enum Calibration {
    Asymptotic,
    MonteCarlo(MonteCarloPlan),
}

/// 1{∥y∥_p ≥ κ}.
#[derive(Debug, Clone, PartialEq)]
pub struct NormTest {
    pub d: usize,
    pub schedule: CriticalValueSchedule,
}

impl NormTest {
    pub fn exponent(&self) -> Exponent {
        self.schedule.exponent
    }

    pub fn kappa(&self) -> f64 {
        self.schedule.value
    }
}

/// 1{max_j ∥y∥_{p_j}/κ_j ≥ c_d}.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedTest {
    pub d: usize,
    pub exponents: Vec<Exponent>,
    pub budget: AlphaBudget,
    pub kappas: Vec<f64>,
    pub c_d: f64,
    pub target_alpha: f64,
    pub provenance: Provenance,
}

impl CombinedTest {
    /// max_j ∥y∥_{p_j}/κ_j.
    pub fn statistic(&self, y: &[f64]) -> Result<f64> {
        check_vector(y, self.d)?;
        let mut ws = NormWorkspace::new();
        let mut norms = Vec::new();
        ws.norms_into(y, &self.exponents, &mut norms);
        Ok(max_ratio(&norms, &self.kappas))
    }
}

/// 1{max_{j=1..p_d} ∥y∥_j/κ_j ≥ 1} with κ_j = [r_d√(dσ_j²) + dμ_j]^{1/j}.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimaxTest {
    pub d: usize,
    pub r_d: f64,
    pub p_d: usize,
    pub kappas: Vec<f64>,
}

impl MinimaxTest {
    pub fn exponents(&self) -> Vec<Exponent> {
        (1..=self.p_d).map(|j| Exponent::Finite(j as f64)).collect()
    }
}

/// Base test OR 1{|y_{i*}| ≥ √a_d}, with a_d = √(log(d)/2).
#[derive(Debug, Clone)]
pub struct EnhancedTest {
    pub base: Box<TestSpec>,
    pub d: usize,
    /// 0-based coordinate index.
    pub i_star: usize,
    pub a_d: f64,
    pub nu_threshold: f64,
    pub search: IStarSearch,
}

/// How i* was chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum IStarSearch {
    /// The base is invariant under coordinate permutations; every index ties.
    Symmetric,
    /// Power scan; `power` is the refined estimate at the chosen index.
    Scanned { scan_replications: usize, refine_replications: usize, power: f64 },
}

/// Rejects when any member rejects.
#[derive(Debug, Clone)]
pub struct UnionTest {
    pub d: usize,
    pub members: Vec<TestSpec>,
}

type DecideFn = dyn Fn(&[f64]) -> bool + Send + Sync;

/// Arbitrary test supplied as a closure.
#[derive(Clone)]
pub struct CustomTest {
    pub d: usize,
    pub label: String,
    /// Declares the closure invariant under coordinate permutations.
    pub symmetric: bool,
    decide: Arc<DecideFn>,
}

impl CustomTest {
    pub fn new<F>(d: usize, label: impl Into<String>, symmetric: bool, decide: F) -> Self
    where
        F: Fn(&[f64]) -> bool + Send + Sync + 'static,
    {
        CustomTest { d, label: label.into(), symmetric, decide: Arc::new(decide) }
    }
}

impl fmt::Debug for CustomTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomTest")
            .field("d", &self.d)
            .field("label", &self.label)
            .field("symmetric", &self.symmetric)
            .finish()
    }
}

#[derive(Debug, Clone)]
pub enum TestSpec {
    Norm(NormTest),
    Combined(CombinedTest),
    Minimax(MinimaxTest),
    Enhanced(EnhancedTest),
    Union(UnionTest),
    Trivial { d: usize, reject: bool },
    Custom(CustomTest),
}

/// Values of the norms needed by a set of tests, keyed by exponent.
pub struct NormLookup<'a> {
    exponents: &'a [Exponent],
    values: &'a [f64],
}

impl NormLookup<'_> {
    #[inline]
    fn get(&self, e: Exponent) -> f64 {
        let i = self
            .exponents
            .iter()
            .position(|x| *x == e)
            .expect("exponent registered by collect_exponents");
        self.values[i]
    }
}

#[inline]
fn max_ratio(norms: &[f64], kappas: &[f64]) -> f64 {
    norms.iter().zip(kappas).fold(f64::NEG_INFINITY, |m, (v, k)| m.max(v / k))
}

fn check_vector(y: &[f64], d: usize) -> Result<()> {
    if y.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: y.len() });
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("observation has non-finite entries"));
    }
    Ok(())
}

fn push_unique(out: &mut Vec<Exponent>, e: Exponent) {
    if !out.contains(&e) {
        out.push(e);
    }
}

impl TestSpec {
    pub fn dim(&self) -> usize {
        match self {
            TestSpec::Norm(t) => t.d,
            TestSpec::Combined(t) => t.d,
            TestSpec::Minimax(t) => t.d,
            TestSpec::Enhanced(t) => t.d,
            TestSpec::Union(t) => t.d,
            TestSpec::Trivial { d, .. } => *d,
            TestSpec::Custom(t) => t.d,
        }
    }

    pub fn label(&self) -> String {
        match self {
            TestSpec::Norm(t) => t.exponent().label(),
            TestSpec::Combined(_) => "psi".to_string(),
            TestSpec::Minimax(_) => "psi_star".to_string(),
            TestSpec::Enhanced(t) => format!("{}+enh", t.base.label()),
            TestSpec::Union(t) => {
                let parts: Vec<String> = t.members.iter().map(|m| m.label()).collect();
                format!("max({})", parts.join(","))
            }
            TestSpec::Trivial { reject: false, .. } => "never".to_string(),
            TestSpec::Trivial { reject: true, .. } => "always".to_string(),
            TestSpec::Custom(t) => t.label.clone(),
        }
    }

    /// Nominal level where one is defined.
    pub fn alpha(&self) -> Option<f64> {
        match self {
            TestSpec::Norm(t) => Some(t.schedule.alpha),
            TestSpec::Combined(t) => Some(t.target_alpha),
            TestSpec::Trivial { reject, .. } => Some(if *reject { 1.0 } else { 0.0 }),
            _ => None,
        }
    }

    /// True when the decision is invariant under permutations of coordinates.
    pub fn is_permutation_symmetric(&self) -> bool {
        match self {
            TestSpec::Norm(_) | TestSpec::Combined(_) | TestSpec::Minimax(_) | TestSpec::Trivial { .. } => true,
            TestSpec::Enhanced(_) => false,
            TestSpec::Union(t) => t.members.iter().all(|m| m.is_permutation_symmetric()),
            TestSpec::Custom(t) => t.symmetric,
        }
    }

    /// Adds every exponent this test reads to `out`, without duplicates.
    pub fn collect_exponents(&self, out: &mut Vec<Exponent>) {
        match self {
            TestSpec::Norm(t) => push_unique(out, t.exponent()),
            TestSpec::Combined(t) => t.exponents.iter().for_each(|e| push_unique(out, *e)),
            TestSpec::Minimax(t) => t.exponents().into_iter().for_each(|e| push_unique(out, e)),
            TestSpec::Enhanced(t) => t.base.collect_exponents(out),
            TestSpec::Union(t) => t.members.iter().for_each(|m| m.collect_exponents(out)),
            TestSpec::Trivial { .. } | TestSpec::Custom(_) => {}
        }
    }

    fn decide(&self, y: &[f64], norms: &NormLookup<'_>) -> bool {
        match self {
            TestSpec::Norm(t) => norms.get(t.exponent()) >= t.kappa(),
            TestSpec::Combined(t) => {
                let m = t.exponents.iter().zip(&t.kappas).fold(f64::NEG_INFINITY, |m, (e, k)| m.max(norms.get(*e) / k));
                m >= t.c_d
            }
            TestSpec::Minimax(t) => {
                (1..=t.p_d).zip(&t.kappas).any(|(j, k)| norms.get(Exponent::Finite(j as f64)) >= *k)
            }
            TestSpec::Enhanced(t) => t.base.decide(y, norms) || y[t.i_star].abs() >= t.nu_threshold,
            TestSpec::Union(t) => t.members.iter().any(|m| m.decide(y, norms)),
            TestSpec::Trivial { reject, .. } => *reject,
            TestSpec::Custom(t) => (t.decide)(y),
        }
    }

    /// Decision on one observation vector.
    pub fn evaluate(&self, y: &[f64]) -> Result<Decision> {
        check_vector(y, self.dim())?;
        let battery = TestBattery::new(vec![self.clone()])?;
        let mut eval = battery.evaluator();
        Ok(Decision::from_bool(eval.decide(y)[0]))
    }

    /// Convenience wrapper returning only the rejection flag.
    pub fn rejects(&self, y: &[f64]) -> Result<bool> {
        self.evaluate(y).map(Decision::is_reject)
    }
}

/// Several tests of the same dimension evaluated on shared norms.
#[derive(Debug, Clone)]
pub struct TestBattery {
    tests: Vec<TestSpec>,
    exponents: Vec<Exponent>,
    d: usize,
}

impl TestBattery {
    pub fn new(tests: Vec<TestSpec>) -> Result<Self> {
        let d = tests.first().ok_or_else(|| Error::config("empty test list"))?.dim();
        for t in &tests {
            if t.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, got: t.dim() });
            }
        }
        let mut exponents = Vec::new();
        for t in &tests {
            t.collect_exponents(&mut exponents);
        }
        Ok(TestBattery { tests, exponents, d })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn tests(&self) -> &[TestSpec] {
        &self.tests
    }

    pub fn len(&self) -> usize {
        self.tests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tests.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.tests.iter().map(|t| t.label()).collect()
    }

    pub fn evaluator(&self) -> BatteryEvaluator<'_> {
        BatteryEvaluator {
            battery: self,
            ws: NormWorkspace::new(),
            norms: Vec::with_capacity(self.exponents.len()),
            out: Vec::with_capacity(self.tests.len()),
        }
    }
}

/// Per-thread scratch for [`TestBattery`] evaluation. Inputs are not checked.
pub struct BatteryEvaluator<'a> {
    battery: &'a TestBattery,
    ws: NormWorkspace,
    norms: Vec<f64>,
    out: Vec<bool>,
}

impl BatteryEvaluator<'_> {
    /// Rejection flag of every test, in battery order.
    pub fn decide(&mut self, y: &[f64]) -> &[bool] {
        let b = self.battery;
        self.ws.norms_into(y, &b.exponents, &mut self.norms);
        let lookup = NormLookup { exponents: &b.exponents, values: &self.norms };
        self.out.clear();
        self.out.extend(b.tests.iter().map(|t| t.decide(y, &lookup)));
        &self.out
    }
}

/// Single p-norm test at level α.
pub fn build_norm_test(exponent: Exponent, d: usize, alpha: f64, calibration: &Calibration) -> Result<TestSpec> {
    let schedule = match calibration {
        Calibration::Asymptotic => asymptotic_schedule(exponent, d, alpha)?,
        Calibration::MonteCarlo(plan) => critical::mc_calibrate(exponent, d, alpha, plan)?,
    };
    Ok(TestSpec::Norm(NormTest { d, schedule }))
}

fn exponent_key(e: Exponent) -> f64 {
    e.as_finite().unwrap_or(f64::INFINITY)
}

/// Combined test calibrated on one shared null sample.
///
/// κ_j is the empirical (1−α_j)-quantile of ∥ε∥_{p_j}; c_d is then located by
/// bisection over the sorted sample of max_j ∥ε∥_{p_j}/κ_j so that the
/// empirical size equals α at order-statistic granularity, and capped at 1.
pub fn build_combined(d: usize, exponents: &[Exponent], budget: &AlphaBudget, plan: &MonteCarloPlan) -> Result<CombinedTest> {
    validate_combined(exponents, budget)?;
    let min_alpha = budget.alphas.iter().copied().fold(f64::INFINITY, f64::min);
    check_calibration_plan(plan, min_alpha)?;
    let null = simulate_null_norms(exponents, d, plan)?;
    let cols: Vec<&[f64]> = null.iter().map(Vec::as_slice).collect();
    combined_from_null(d, exponents, budget, plan, &cols)
}

fn validate_combined(exponents: &[Exponent], budget: &AlphaBudget) -> Result<()> {
    if exponents.is_empty() {
        return Err(Error::domain("combined test needs at least one exponent"));
    }
    for e in exponents {
        e.validate()?;
    }
    if exponents.windows(2).any(|w| exponent_key(w[0]) >= exponent_key(w[1])) {
        return Err(Error::domain("exponents must be strictly increasing"));
    }
    if budget.m() != exponents.len() {
        return Err(Error::domain(format!(
            "budget has {} members but {} exponents were given",
            budget.m(),
            exponents.len()
        )));
    }
    Ok(())
}

/// Combined test from null columns ∥ε_r∥_{p_j}, one per exponent.
fn combined_from_null(
    d: usize,
    exponents: &[Exponent],
    budget: &AlphaBudget,
    plan: &MonteCarloPlan,
    null: &[&[f64]],
) -> Result<CombinedTest> {
    let alpha = budget.alpha;
    let kappas: Vec<f64> = exponents
        .iter()
        .zip(&budget.alphas)
        .zip(null)
        .map(|((e, a), col)| schedule_from_null(*e, d, *a, plan, col).value)
        .collect();
    if let Some(k) = kappas.iter().find(|k| !(**k > 0.0)) {
        return Err(Error::Numeric(format!("non-positive member critical value {k}")));
    }

    let r = null[0].len();
    let mut ratios: Vec<f64> = (0..r)
        .map(|i| null.iter().zip(&kappas).fold(f64::NEG_INFINITY, |m, (col, k)| m.max(col[i] / k)))
        .collect();
    ratios.sort_by(|a, b| a.total_cmp(b));
    let k = mc::upper_order_index(r, alpha);
    let c = line_search_c(&ratios, r - k + 1)?;
    let c_d = c.min(1.0);
    if !(c_d > 0.0) {
        return Err(Error::Internal(format!("size multiplier {c_d} outside (0,1]")));
    }
    Ok(CombinedTest {
        d,
        exponents: exponents.to_vec(),
        budget: budget.clone(),
        kappas,
        c_d,
        target_alpha: alpha,
        provenance: Provenance::MonteCarlo {
            replications: r,
            seed: plan.seed,
            chunk_size: plan.chunk_size,
            order_index: k,
        },
    })
}

/// Smallest sample value c with #{s ≥ c} ≤ `max_exceed`, by bisection on the
/// sorted sample. The bracket starts at (smallest value, largest value].
fn line_search_c(sorted: &[f64], max_exceed: usize) -> Result<f64> {
    let n = sorted.len();
    if n == 0 || max_exceed == 0 {
        return Err(Error::Internal("empty sample in size search".into()));
    }
    let exceed = |i: usize| -> usize {
        let c = sorted[i];
        n - sorted.partition_point(|v| *v < c)
    };
    // Invariant: exceed(hi) ≤ max_exceed; exceed(lo) > max_exceed unless lo == 0.
    let (mut lo, mut hi) = (0usize, n - 1);
    if exceed(lo) <= max_exceed {
        return Ok(sorted[0]);
    }
    if exceed(hi) > max_exceed {
        return Err(Error::Internal("size search failed to bracket".into()));
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if exceed(mid) <= max_exceed {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(sorted[hi])
}

/// κ = [r_d√(dσ_p²) + dμ_p]^{1/p}.
pub fn minimax_kappa(p: f64, d: usize, r_d: f64) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::domain(format!("exponent must be positive, got {p}")));
    }
    if !(r_d > 0.0 && r_d.is_finite()) {
        return Err(Error::domain(format!("radius must be positive, got {r_d}")));
    }
    if d == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    power_root_of_centered(p, d, r_d)
}

/// Minimax-adaptive test over j = 1..p_d with analytic critical values.
pub fn build_minimax_adaptive(d: usize, r_d: f64, p_d: usize) -> Result<MinimaxTest> {
    if p_d < 1 {
        return Err(Error::domain("p_d must be at least 1"));
    }
    let union_bound = p_d as f64 * normal::cdf(-r_d);
    if union_bound > 0.01 {
        log::warn!("p_d·Φ(−r_d) = {union_bound:.4} > 0.01: size control is loose at this r_d");
    }
    let moment_term = p_d as f64 / (d as f64).sqrt() * 1.5f64.powf(1.5 * p_d as f64);
    if moment_term > 0.01 {
        log::warn!("(p_d/√d)(3/2)^(3p_d/2) = {moment_term:.4} > 0.01: p_d grows too fast for this d");
    }
    let kappas = (1..=p_d).map(|j| minimax_kappa(j as f64, d, r_d)).collect::<Result<Vec<_>>>()?;
    Ok(MinimaxTest { d, r_d, p_d, kappas })
}

/// r_d such that the minimax-adaptive test has empirical null size α.
///
/// The test rejects iff max_j t_j ≥ r_d with t_j = (∥y∥_j^j − dμ_j)/√(dσ_j²),
/// so r_d is the ⌈R(1−α)⌉-th order statistic of the simulated maxima.
pub fn calibrate_minimax_radius(d: usize, p_d: usize, alpha: f64, plan: &MonteCarloPlan) -> Result<f64> {
    if p_d < 1 {
        return Err(Error::domain("p_d must be at least 1"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("level must lie in (0,1), got {alpha}")));
    }
    check_calibration_plan(plan, alpha)?;
    let exps: Vec<Exponent> = (1..=p_d).map(|j| Exponent::Finite(j as f64)).collect();
    let null = simulate_null_norms(&exps, d, plan)?;
    let cols: Vec<&[f64]> = null.iter().map(Vec::as_slice).collect();
    minimax_radius_from_null(d, alpha, &cols)
}

/// r_d from null columns ∥ε_r∥_j for j = 1..p_d.
fn minimax_radius_from_null(d: usize, alpha: f64, null: &[&[f64]]) -> Result<f64> {
    let p_d = null.len();
    let centers = (1..=p_d)
        .map(|j| {
            let m = gauss_moments(j as f64)?;
            Ok((d as f64 * m.mu_p, (d as f64 * m.sigma2_p).sqrt()))
        })
        .collect::<Result<Vec<_>>>()?;
    let r = null[0].len();
    let mut maxima: Vec<f64> = (0..r)
        .map(|i| {
            null.iter()
                .enumerate()
                .map(|(j, col)| {
                    let (c, s) = centers[j];
                    (col[i].powi(j as i32 + 1) - c) / s
                })
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let k = mc::upper_order_index(r, alpha);
    let r_d = mc::order_statistic(&mut maxima, k);
    if !(r_d > 0.0) {
        return Err(Error::Calibration(format!(
            "calibrated radius {r_d} is not positive; the level is too large for p_d = {p_d}"
        )));
    }
    Ok(r_d)
}

/// Tests to calibrate together by [`calibrate_suite`].
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub d: usize,
    pub alpha: f64,
    /// Single p-norm tests with their own levels.
    pub singles: Vec<(Exponent, f64)>,
    /// Combined test members and level budget.
    pub combined: Option<(Vec<Exponent>, AlphaBudget)>,
    /// Minimax-adaptive test over j = 1..p_d, radius calibrated to `alpha`.
    pub minimax_p_d: Option<usize>,
}

/// Calibrates every test of the suite on one shared null sample: singles in
/// the order given, then the combined test, then the minimax-adaptive test.
pub fn calibrate_suite(cfg: &SuiteConfig, plan: &MonteCarloPlan) -> Result<Vec<TestSpec>> {
    if !(cfg.alpha > 0.0 && cfg.alpha < 1.0) {
        return Err(Error::domain(format!("level must lie in (0,1), got {}", cfg.alpha)));
    }
    let mut min_alpha = cfg.alpha;
    let mut all = Vec::new();
    for (e, a) in &cfg.singles {
        if !(*a > 0.0 && *a < 1.0) {
            return Err(Error::domain(format!("level must lie in (0,1), got {a}")));
        }
        min_alpha = min_alpha.min(*a);
        push_unique(&mut all, e.validate()?);
    }
    if let Some((exps, budget)) = &cfg.combined {
        validate_combined(exps, budget)?;
        if (budget.alpha - cfg.alpha).abs() > 1e-12 {
            return Err(Error::config("combined budget level differs from the suite level"));
        }
        min_alpha = budget.alphas.iter().copied().fold(min_alpha, f64::min);
        exps.iter().for_each(|e| push_unique(&mut all, *e));
    }
    if let Some(p_d) = cfg.minimax_p_d {
        if p_d < 1 {
            return Err(Error::domain("p_d must be at least 1"));
        }
        (1..=p_d).for_each(|j| push_unique(&mut all, Exponent::Finite(j as f64)));
    }
    if all.is_empty() {
        return Err(Error::config("suite has no tests"));
    }
    check_calibration_plan(plan, min_alpha)?;
    let null = simulate_null_norms(&all, cfg.d, plan)?;
    let col = |e: Exponent| -> &[f64] { &null[all.iter().position(|x| *x == e).expect("registered")] };

    let mut out = Vec::new();
    for (e, a) in &cfg.singles {
        let schedule = schedule_from_null(*e, cfg.d, *a, plan, col(*e));
        out.push(TestSpec::Norm(NormTest { d: cfg.d, schedule }));
    }
    if let Some((exps, budget)) = &cfg.combined {
        let cols: Vec<&[f64]> = exps.iter().map(|e| col(*e)).collect();
        out.push(TestSpec::Combined(combined_from_null(cfg.d, exps, budget, plan, &cols)?));
    }
    if let Some(p_d) = cfg.minimax_p_d {
        let cols: Vec<&[f64]> = (1..=p_d).map(|j| col(Exponent::Finite(j as f64))).collect();
        let r_d = minimax_radius_from_null(cfg.d, cfg.alpha, &cols)?;
        out.push(TestSpec::Minimax(build_minimax_adaptive(cfg.d, r_d, p_d)?));
    }
    Ok(out)
}

/// a_d = √(log(d)/2).
pub fn enhancement_scale(d: usize) -> f64 {
    ((d as f64).ln() / 2.0).sqrt()
}

/// Power enhancement of `base` on the coordinate where base is weakest.
///
/// When the base is permutation symmetric every coordinate ties and i* = 0.
/// Otherwise the power of the base against a_d·e_i is estimated for all i at
/// R/10 replications, the ten weakest coordinates are re-estimated at R, and
/// the smallest estimate wins (ties to the lowest index).
pub fn build_enhanced(base: TestSpec, plan: &MonteCarloPlan) -> Result<EnhancedTest> {
    let d = base.dim();
    if d < 2 {
        return Err(Error::domain("enhancement needs d >= 2"));
    }
    plan.validate()?;
    let a_d = enhancement_scale(d);
    let nu_threshold = a_d.sqrt();
    let (i_star, search) = if base.is_permutation_symmetric() {
        (0, IStarSearch::Symmetric)
    } else {
        let battery = TestBattery::new(vec![base.clone()])?;
        let scan_plan = plan.with_replications((plan.replications / 10).max(1));
        let scan = coordinate_rejections(&battery, &scan_plan, a_d, &(0..d).collect::<Vec<_>>())?;
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by_key(|&i| (scan[i], i));
        let mut top: Vec<usize> = order.into_iter().take(10).collect();
        top.sort_unstable();
        let refined = coordinate_rejections(&battery, plan, a_d, &top)?;
        let (best, count) = top
            .iter()
            .zip(&refined)
            .min_by_key(|(i, c)| (**c, **i))
            .map(|(i, c)| (*i, *c))
            .expect("at least two coordinates");
        (
            best,
            IStarSearch::Scanned {
                scan_replications: scan_plan.replications,
                refine_replications: plan.replications,
                power: count as f64 / plan.replications as f64,
            },
        )
    };
    Ok(EnhancedTest { base: Box::new(base), d, i_star, a_d, nu_threshold, search })
}

/// Rejection counts of a one-test battery against a·e_i for each listed i,
/// all on common noise draws.
fn coordinate_rejections(battery: &TestBattery, plan: &MonteCarloPlan, a: f64, coords: &[usize]) -> Result<Vec<u64>> {
    let d = battery.dim();
    mc::fold_chunked(
        plan,
        d,
        || (vec![0u64; coords.len()], battery.evaluator(), vec![0.0; d]),
        |(counts, eval, y), eps, _| {
            y.copy_from_slice(eps);
            for (slot, &i) in coords.iter().enumerate() {
                y[i] += a;
                if eval.decide(y)[0] {
                    counts[slot] += 1;
                }
                y[i] = eps[i];
            }
        },
        |mut a, b| {
            a.0.iter_mut().zip(&b.0).for_each(|(x, y)| *x += y);
            a
        },
    )
    .map(|acc| acc.0)
}

impl From<NormTest> for TestSpec {
    fn from(t: NormTest) -> Self {
        TestSpec::Norm(t)
    }
}

impl From<CombinedTest> for TestSpec {
    fn from(t: CombinedTest) -> Self {
        TestSpec::Combined(t)
    }
}

impl From<MinimaxTest> for TestSpec {
    fn from(t: MinimaxTest) -> Self {
        TestSpec::Minimax(t)
    }
}

impl From<EnhancedTest> for TestSpec {
    fn from(t: EnhancedTest) -> Self {
        TestSpec::Enhanced(t)
    }
}

/// Rejects when any member rejects. Members must share one dimension.
pub fn union_test(members: Vec<TestSpec>) -> Result<TestSpec> {
    let d = TestBattery::new(members.clone())?.dim();
    Ok(TestSpec::Union(UnionTest { d, members }))
}
