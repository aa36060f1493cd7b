//! Level allocation across the members of a combined test, and the exponent
//! presets used to build one.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BudgetGenerator {
    /// Head mass γα spread by δ_j = δ₀(1−δ₀)^{j−1}, tail (1−γ)α on the last member.
    Geometric { delta0: f64, gamma: f64 },
    Custom,
}

/// Levels α_{1,d}, …, α_{m_d,d} summing to the overall level.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaBudget {
    pub alpha: f64,
    pub alphas: Vec<f64>,
    pub generator: BudgetGenerator,
}

impl AlphaBudget {
    pub fn m(&self) -> usize {
        self.alphas.len()
    }

    /// A hand-written allocation. Must sum to `alpha` within 1e-12. The
    /// asymptotic requirements on the array (positive limits of the last and
    /// of infinitely many members) cannot be checked at a single d, so a
    /// warning is logged instead.
    pub fn custom(alphas: Vec<f64>, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::domain(format!("level must lie in (0,1), got {alpha}")));
        }
        if alphas.is_empty() {
            return Err(Error::domain("budget needs at least one member"));
        }
        if let Some(bad) = alphas.iter().find(|a| !(**a > 0.0 && **a < 1.0)) {
            return Err(Error::domain(format!("member level {bad} outside (0,1)")));
        }
        let total: f64 = alphas.iter().sum();
        if (total - alpha).abs() > 1e-12 {
            return Err(Error::domain(format!("member levels sum to {total}, expected {alpha}")));
        }
        log::warn!("custom alpha budget: asymptotic conditions on the array are not verified");
        Ok(AlphaBudget { alpha, alphas, generator: BudgetGenerator::Custom })
    }

    /// Limit of α_{j,d} as m_d grows, for the geometric generator: γαδ_j for
    /// head members and (1−γ)α for the last one. Custom budgets return their
    /// finite-d value. `j` is 0-based.
    pub fn limit_alpha(&self, j: usize) -> Result<f64> {
        let m = self.m();
        if j >= m {
            return Err(Error::domain(format!("member index {j} out of range for {m} members")));
        }
        Ok(match self.generator {
            BudgetGenerator::Geometric { delta0, gamma } => {
                if j + 1 == m {
                    (1.0 - gamma) * self.alpha
                } else {
                    gamma * self.alpha * delta0 * (1.0 - delta0).powi(j as i32)
                }
            }
            BudgetGenerator::Custom => self.alphas[j],
        })
    }
}

/// Allocation with geometric weights δ_j = δ₀(1−δ₀)^{j−1}:
/// α_j = γα δ_j / Σ_{i<m} δ_i for j < m, α_m = (1−γ)α.
pub fn budget_from_geometric(m_d: usize, alpha: f64, delta0: f64, gamma: f64) -> Result<AlphaBudget> {
    if m_d < 2 {
        return Err(Error::domain(format!("geometric budget needs at least 2 members, got {m_d}")));
    }
    for (name, v) in [("alpha", alpha), ("delta0", delta0), ("gamma", gamma)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::domain(format!("{name} must lie in (0,1), got {v}")));
        }
    }
    let weights: Vec<f64> = (0..m_d - 1).map(|j| delta0 * (1.0 - delta0).powi(j as i32)).collect();
    let norm: f64 = weights.iter().sum();
    let mut alphas: Vec<f64> = weights.iter().map(|w| gamma * alpha * w / norm).collect();
    alphas.push((1.0 - gamma) * alpha);
    Ok(AlphaBudget { alpha, alphas, generator: BudgetGenerator::Geometric { delta0, gamma } })
}

/// Rules for the number of members m_d and the exponents p_1 < … < p_{m_d}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentPreset {
    /// m_d = ⌈log log d⁶⌉, p_j = e^{j−1} + 1. Five members for 10⁴ ≤ d ≤ 2.5·10⁵.
    Study,
    /// m_d = ⌈3 log d⌉ + 1, p_j = j + 1.
    Linear,
}

impl ExponentPreset {
    pub fn config(self, d: usize) -> Result<(usize, Vec<f64>)> {
        if d < 3 {
            return Err(Error::domain(format!("exponent presets need d >= 3, got {d}")));
        }
        let ld = (d as f64).ln();
        Ok(match self {
            ExponentPreset::Study => {
                let m = (6.0 * ld).ln().ceil() as usize;
                (m, (0..m).map(|j| (j as f64).exp() + 1.0).collect())
            }
            ExponentPreset::Linear => {
                let m = (3.0 * ld).ceil() as usize + 1;
                (m, (0..m).map(|j| j as f64 + 2.0).collect())
            }
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ExponentPreset::Study => "study",
            ExponentPreset::Linear => "linear",
        }
    }
}

impl fmt::Display for ExponentPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExponentPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            // `sec6` is kept as an alias for the study preset.
            "study" | "sec6" => Ok(ExponentPreset::Study),
            "linear" | "example1" => Ok(ExponentPreset::Linear),
            other => Err(Error::config(format!("unknown exponent preset '{other}'"))),
        }
    }
}

/// m_d and exponents of the study preset.
pub fn example_spec_config(d: usize) -> Result<(usize, Vec<f64>)> {
    ExponentPreset::Study.config(d)
}
