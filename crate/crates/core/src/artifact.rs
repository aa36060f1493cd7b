//! Plain-text calibration artifacts.
//!
//! One `key = value` pair per line; `#` starts a comment. Lists are
//! comma-separated. Floats are written in Rust's shortest round-trip form so a
//! parsed artifact reproduces the critical values bit for bit.
//!
//! ```text
//! # pnorm calibration artifact
//! format = 1
//! kind = combined            # norm | combined | minimax
//! d = 10000
//! exponents = 2,3.718281828459045,inf
//! alpha = 0.05
//! alphas = 0.025,0.0125,0.0125      # combined only
//! budget = geometric:0.5:0.5        # combined only; or custom
//! kappas = 146.2,38.1,4.4
//! c_d = 0.9981                      # combined only
//! r_d = 2.71                        # minimax only
//! p_d = 8                           # minimax only
//! schedule = monte_carlo_exact      # norm only
//! seed = 7                          # Monte-Carlo calibrations only
//! replications = 100000
//! chunk_size = 512
//! order_index = 95000
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::budget::{AlphaBudget, BudgetGenerator};
use crate::critical::{CriticalValueSchedule, Provenance, ScheduleKind};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::procedure::{CombinedTest, MinimaxTest, NormTest, TestSpec};

pub const FORMAT_VERSION: u32 = 1;

/// Ordered `key = value` pairs. Duplicate keys are rejected.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KeyValues {
    map: BTreeMap<String, (usize, String)>,
}

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse { line: n + 1, msg: format!("expected 'key = value', got '{line}'") })?;
            let key = k.trim().to_string();
            if key.is_empty() {
                return Err(Error::Parse { line: n + 1, msg: "empty key".into() });
            }
            if map.insert(key.clone(), (n + 1, v.trim().to_string())).is_some() {
                return Err(Error::Parse { line: n + 1, msg: format!("duplicate key '{key}'") });
            }
        }
        Ok(KeyValues { map })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(|(_, v)| v.as_str())
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    fn line_of(&self, key: &str) -> usize {
        self.map.get(key).map(|(n, _)| *n).unwrap_or(0)
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::Parse { line: 0, msg: format!("missing key '{key}'") })
    }

    pub fn parse_value<T: std::str::FromStr>(&self, key: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        let raw = self.require(key)?;
        raw.parse::<T>()
            .map_err(|e| Error::Parse { line: self.line_of(key), msg: format!("bad value '{raw}' for '{key}': {e}") })
    }

    pub fn parse_list<T: std::str::FromStr>(&self, key: &str) -> Result<Vec<T>>
    where
        T::Err: std::fmt::Display,
    {
        let raw = self.require(key)?;
        raw.split(',')
            .map(|s| {
                s.trim().parse::<T>().map_err(|e| Error::Parse {
                    line: self.line_of(key),
                    msg: format!("bad list entry '{s}' for '{key}': {e}"),
                })
            })
            .collect()
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn write_provenance(out: &mut String, p: &Provenance) {
    if let Provenance::MonteCarlo { replications, seed, chunk_size, order_index } = p {
        let _ = writeln!(out, "seed = {seed}");
        let _ = writeln!(out, "replications = {replications}");
        let _ = writeln!(out, "chunk_size = {chunk_size}");
        let _ = writeln!(out, "order_index = {order_index}");
    }
}

fn read_provenance(kv: &KeyValues) -> Result<Provenance> {
    if kv.get("seed").is_none() {
        return Ok(Provenance::Formula);
    }
    Ok(Provenance::MonteCarlo {
        replications: kv.parse_value("replications")?,
        seed: kv.parse_value("seed")?,
        chunk_size: kv.parse_value("chunk_size")?,
        order_index: kv.parse_value("order_index")?,
    })
}

/// Serializes a norm, combined or minimax test.
pub fn write_artifact(test: &TestSpec) -> Result<String> {
    let mut s = String::from("# pnorm calibration artifact\n");
    let _ = writeln!(s, "format = {FORMAT_VERSION}");
    match test {
        TestSpec::Norm(t) => {
            let sc = &t.schedule;
            let _ = writeln!(s, "kind = norm");
            let _ = writeln!(s, "d = {}", t.d);
            let _ = writeln!(s, "exponents = {}", sc.exponent);
            let _ = writeln!(s, "alpha = {}", sc.alpha);
            let _ = writeln!(s, "kappas = {}", sc.value);
            let _ = writeln!(s, "schedule = {}", sc.kind);
            write_provenance(&mut s, &sc.provenance);
        }
        TestSpec::Combined(t) => {
            let _ = writeln!(s, "kind = combined");
            let _ = writeln!(s, "d = {}", t.d);
            let _ = writeln!(s, "exponents = {}", join(&t.exponents));
            let _ = writeln!(s, "alpha = {}", t.target_alpha);
            let _ = writeln!(s, "alphas = {}", join(&t.budget.alphas));
            let budget = match t.budget.generator {
                BudgetGenerator::Geometric { delta0, gamma } => format!("geometric:{delta0}:{gamma}"),
                BudgetGenerator::Custom => "custom".to_string(),
            };
            let _ = writeln!(s, "budget = {budget}");
            let _ = writeln!(s, "kappas = {}", join(&t.kappas));
            let _ = writeln!(s, "c_d = {}", t.c_d);
            write_provenance(&mut s, &t.provenance);
        }
        TestSpec::Minimax(t) => {
            let _ = writeln!(s, "kind = minimax");
            let _ = writeln!(s, "d = {}", t.d);
            let _ = writeln!(s, "exponents = {}", join(&t.exponents()));
            let _ = writeln!(s, "r_d = {}", t.r_d);
            let _ = writeln!(s, "p_d = {}", t.p_d);
            let _ = writeln!(s, "kappas = {}", join(&t.kappas));
        }
        other => {
            return Err(Error::config(format!("tests of kind '{}' have no artifact form", other.label())));
        }
    }
    Ok(s)
}

fn parse_schedule_kind(s: &str) -> Result<ScheduleKind> {
    match s {
        "asymptotic_finite" => Ok(ScheduleKind::AsymptoticFinite),
        "asymptotic_sup" => Ok(ScheduleKind::AsymptoticSup),
        "monte_carlo_exact" => Ok(ScheduleKind::MonteCarloExact),
        other => Err(Error::Parse { line: 0, msg: format!("unknown schedule '{other}'") }),
    }
}

fn parse_budget(kv: &KeyValues, alpha: f64) -> Result<AlphaBudget> {
    let alphas: Vec<f64> = kv.parse_list("alphas")?;
    let generator = match kv.require("budget")? {
        "custom" => BudgetGenerator::Custom,
        g => {
            let parts: Vec<&str> = g.split(':').collect();
            match parts.as_slice() {
                ["geometric", d0, gm] => BudgetGenerator::Geometric {
                    delta0: d0.parse().map_err(|_| Error::Parse { line: 0, msg: format!("bad budget '{g}'") })?,
                    gamma: gm.parse().map_err(|_| Error::Parse { line: 0, msg: format!("bad budget '{g}'") })?,
                },
                _ => return Err(Error::Parse { line: 0, msg: format!("bad budget '{g}'") }),
            }
        }
    };
    let total: f64 = alphas.iter().sum();
    if (total - alpha).abs() > 1e-12 {
        return Err(Error::Parse { line: 0, msg: format!("alphas sum to {total}, not {alpha}") });
    }
    Ok(AlphaBudget { alpha, alphas, generator })
}

/// Inverse of [`write_artifact`].
pub fn parse_artifact(text: &str) -> Result<TestSpec> {
    let kv = KeyValues::parse(text)?;
    let version: u32 = kv.parse_value("format")?;
    if version != FORMAT_VERSION {
        return Err(Error::Parse { line: kv.line_of("format"), msg: format!("unsupported format {version}") });
    }
    let d: usize = kv.parse_value("d")?;
    let exponents: Vec<Exponent> = kv.parse_list("exponents")?;
    let kappas: Vec<f64> = kv.parse_list("kappas")?;
    if kappas.len() != exponents.len() {
        return Err(Error::Parse { line: kv.line_of("kappas"), msg: "kappas and exponents differ in length".into() });
    }
    if kappas.iter().any(|k| !(*k > 0.0 && k.is_finite())) {
        return Err(Error::Parse { line: kv.line_of("kappas"), msg: "critical values must be positive".into() });
    }
    match kv.require("kind")? {
        "norm" => {
            if exponents.len() != 1 {
                return Err(Error::Parse { line: kv.line_of("exponents"), msg: "norm test takes one exponent".into() });
            }
            let schedule = CriticalValueSchedule {
                kind: parse_schedule_kind(kv.require("schedule")?)?,
                exponent: exponents[0],
                alpha: kv.parse_value("alpha")?,
                d,
                value: kappas[0],
                provenance: read_provenance(&kv)?,
            };
            Ok(TestSpec::Norm(NormTest { d, schedule }))
        }
        "combined" => {
            let alpha: f64 = kv.parse_value("alpha")?;
            let budget = parse_budget(&kv, alpha)?;
            if budget.m() != exponents.len() {
                return Err(Error::Parse { line: kv.line_of("alphas"), msg: "alphas and exponents differ in length".into() });
            }
            let c_d: f64 = kv.parse_value("c_d")?;
            if !(c_d > 0.0 && c_d <= 1.0) {
                return Err(Error::Parse { line: kv.line_of("c_d"), msg: format!("c_d = {c_d} outside (0,1]") });
            }
            Ok(TestSpec::Combined(CombinedTest {
                d,
                exponents,
                budget,
                kappas,
                c_d,
                target_alpha: alpha,
                provenance: read_provenance(&kv)?,
            }))
        }
        "minimax" => {
            let p_d: usize = kv.parse_value("p_d")?;
            if p_d != exponents.len() {
                return Err(Error::Parse { line: kv.line_of("p_d"), msg: "p_d does not match exponents".into() });
            }
            Ok(TestSpec::Minimax(MinimaxTest { d, r_d: kv.parse_value("r_d")?, p_d, kappas }))
        }
        other => Err(Error::Parse { line: kv.line_of("kind"), msg: format!("unknown kind '{other}'") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::budget_from_geometric;
    use crate::mc::MonteCarloPlan;
    use crate::procedure::{build_combined, build_minimax_adaptive, build_norm_test, Calibration};

    #[test]
    fn round_trips() {
        let plan = MonteCarloPlan::new(2000, 11);
        let b = budget_from_geometric(3, 0.05, 0.5, 0.5).unwrap();
        let tests = vec![
            build_norm_test(Exponent::Finite(1f64.exp() + 1.0), 40, 0.05, &Calibration::MonteCarlo(plan.clone())).unwrap(),
            build_norm_test(Exponent::Sup, 40, 0.05, &Calibration::Asymptotic).unwrap(),
            TestSpec::Combined(build_combined(40, &[Exponent::Finite(2.0), Exponent::Finite(4.0), Exponent::Sup], &b, &plan).unwrap()),
            TestSpec::Minimax(build_minimax_adaptive(40, 2.5, 3).unwrap()),
        ];
        for t in tests {
            let text = write_artifact(&t).unwrap();
            let back = parse_artifact(&text).unwrap();
            assert_eq!(write_artifact(&back).unwrap(), text);
            match (&t, &back) {
                (TestSpec::Norm(a), TestSpec::Norm(b)) => assert_eq!(a, b),
                (TestSpec::Combined(a), TestSpec::Combined(b)) => assert_eq!(a, b),
                (TestSpec::Minimax(a), TestSpec::Minimax(b)) => assert_eq!(a, b),
                _ => panic!("kind changed"),
            }
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(KeyValues::parse("a = 1\na = 2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(KeyValues::parse("novalue"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_artifact("format = 1\nkind = norm\nd = 3\nexponents = 2\nkappas = -1\n").is_err());
        assert!(parse_artifact("format = 9\n").is_err());
        let kv = KeyValues::parse("# c\n x = 1, 2 ,3 # tail\n").unwrap();
        assert_eq!(kv.parse_list::<u32>("x").unwrap(), vec![1, 2, 3]);
    }
}
