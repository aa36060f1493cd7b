//! p-norm based tests of the global null in the Gaussian sequence model
//! y = θ + ε, ε ~ N(0, I_d).
//!
//! * [`math`]: normal tail functions, absolute Gaussian moments and the
//!   consistency functionals g_p and g_∞.
//! * [`critical`], [`procedure`]: asymptotic and Monte-Carlo critical values,
//!   single p-norm tests, the combined test, the minimax-adaptive test and
//!   power enhancement.
//! * [`consistency`]: alternative families and finite-d consistency traces.
//! * [`power`]: size and power estimation and the demonstrations built on it.
//!
//! Monte-Carlo results depend only on the [`MonteCarloPlan`], never on the
//! number of worker threads.

pub mod artifact;
pub mod budget;
pub mod consistency;
pub mod critical;
pub mod error;
pub mod exponent;
pub mod math;
pub mod mc;
pub mod norm;
pub mod power;
pub mod procedure;
pub mod regression;
pub mod report;

pub use artifact::{parse_artifact, write_artifact, KeyValues};
pub use budget::{budget_from_geometric, example_spec_config, AlphaBudget, BudgetGenerator, ExponentPreset};
pub use consistency::{
    contour_grid, criterion_finite, criterion_sup, geometric_d_grid, minimax_radius, parse_d_grid, rewrite_check,
    sparsity_diagnostic, trace, AlternativeFamily, ContourGrid, CriterionTrace, SupCriterion, SupForm,
};
pub use critical::{
    asymptotic_kappa_finite, asymptotic_kappa_sup, asymptotic_schedule, mc_calibrate, CriticalValueSchedule,
    Provenance, ScheduleKind,
};
pub use error::{Error, Result};
pub use exponent::Exponent;
pub use mc::{with_workers, ErrorSampler, MonteCarloPlan};
pub use norm::{p_norm_stat, NormWorkspace};
pub use power::{
    enhancement_demo, estimate_rejection, opt_sum_gap_scan, pe_demo, power_curve, ExperimentScale, PowerTable,
    RateEstimate,
};
pub use procedure::{
    build_combined, build_enhanced, build_minimax_adaptive, build_norm_test, calibrate_minimax_radius,
    calibrate_suite, union_test, Calibration, CombinedTest, Decision, EnhancedTest, MinimaxTest, NormTest,
    SuiteConfig, TestBattery, TestSpec,
};
pub use regression::{parse_regression_data, regression_reduce};
