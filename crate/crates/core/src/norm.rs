//! Overflow-safe p-norm evaluation.
//!
//! ∥y∥_p is computed as m·(Σ(|y_i|/m)^p)^{1/p} with m = max|y_i|, so every
//! summand lies in [0, 1] and the sum lies in [1, d]. This keeps p = e⁴+1 at
//! d = 250 000 well inside f64 range.
//!
//! Integer exponents up to 64 use `powi`; other exponents use
//! exp(p·ln(|y_i|/m)) with the logarithms computed once per vector and shared
//! by all non-integer exponents. Each exponent's value depends only on y and
//! p, never on which other exponents are evaluated alongside it, so a batch
//! evaluation is bit-identical to single calls.

use crate::error::{Error, Result};
use crate::exponent::Exponent;

const MAX_POWI: f64 = 64.0;

#[inline]
pub fn max_abs(y: &[f64]) -> f64 {
    y.iter().fold(0.0_f64, |m, &v| m.max(v.abs()))
}

#[inline]
fn is_small_integer(p: f64) -> bool {
    p.fract() == 0.0 && p <= MAX_POWI
}

/// Reusable scratch space for batch norm evaluation.
#[derive(Debug, Default, Clone)]
pub struct NormWorkspace {
    scaled: Vec<f64>,
    logs: Vec<f64>,
}

impl NormWorkspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Writes ∥y∥_e for every exponent e into `out`, in order.
    pub fn norms_into(&mut self, y: &[f64], exponents: &[Exponent], out: &mut Vec<f64>) {
        out.clear();
        let m = max_abs(y);
        if m == 0.0 {
            out.resize(exponents.len(), 0.0);
            return;
        }
        let inv = 1.0 / m;
        let needs_scaled = exponents.iter().any(|e| matches!(e, Exponent::Finite(p) if *p != 1.0));
        let needs_logs = exponents.iter().any(|e| matches!(e, Exponent::Finite(p) if !is_small_integer(*p)));
        if needs_scaled {
            self.scaled.clear();
            self.scaled.extend(y.iter().map(|v| v.abs() * inv));
        }
        if needs_logs {
            self.logs.clear();
            self.logs.extend(self.scaled.iter().map(|a| a.ln()));
        }
        for e in exponents {
            let v = match *e {
                Exponent::Sup => m,
                Exponent::Finite(p) if p == 1.0 => y.iter().map(|v| v.abs()).sum(),
                Exponent::Finite(p) if p == 2.0 => {
                    let s: f64 = self.scaled.iter().map(|a| a * a).sum();
                    m * s.sqrt()
                }
                Exponent::Finite(p) if is_small_integer(p) => {
                    let k = p as i32;
                    let s: f64 = self.scaled.iter().map(|a| a.powi(k)).sum();
                    m * s.powf(1.0 / p)
                }
                Exponent::Finite(p) => {
                    let s: f64 = self.logs.iter().map(|l| (p * l).exp()).sum();
                    m * s.powf(1.0 / p)
                }
            };
            out.push(v);
        }
    }

    pub fn norm(&mut self, y: &[f64], p: Exponent) -> f64 {
        let mut out = Vec::with_capacity(1);
        self.norms_into(y, std::slice::from_ref(&p), &mut out);
        out[0]
    }
}

/// Unchecked norm: empty input yields 0.
pub(crate) fn norm(y: &[f64], p: Exponent) -> f64 {
    NormWorkspace::new().norm(y, p)
}

/// ∥y∥_p for finite p, max|y_i| for the supremum norm.
pub fn p_norm_stat(y: &[f64], p: Exponent) -> Result<f64> {
    if y.is_empty() {
        return Err(Error::domain("norm of an empty vector"));
    }
    p.validate()?;
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("norm of a vector with non-finite entries"));
    }
    Ok(norm(y, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!((p_norm_stat(&[3.0, 4.0], Exponent::Finite(2.0)).unwrap() - 5.0).abs() < 1e-15);
        assert_eq!(p_norm_stat(&[-2.0, 1.0], Exponent::Sup).unwrap(), 2.0);
        assert_eq!(p_norm_stat(&[0.0; 7], Exponent::Finite(3.5)).unwrap(), 0.0);
        for &p in &[0.5, 1.0, 2.0, 3.0, 7.389] {
            for &d in &[1usize, 10, 1000] {
                let v = p_norm_stat(&vec![1.0; d], Exponent::Finite(p)).unwrap();
                let want = (d as f64).powf(1.0 / p);
                assert!(((v - want) / want).abs() < 1e-13, "p={p} d={d}");
            }
        }
    }

    #[test]
    fn errors() {
        assert!(p_norm_stat(&[], Exponent::Sup).is_err());
        assert!(p_norm_stat(&[1.0], Exponent::Finite(-1.0)).is_err());
        assert!(p_norm_stat(&[f64::NAN], Exponent::Finite(2.0)).is_err());
    }

    #[test]
    fn batch_matches_single_calls() {
        let y: Vec<f64> = (0..101).map(|i| ((i * 37 % 23) as f64 - 11.0) / 3.0).collect();
        let ex = [
            Exponent::Finite(1.0),
            Exponent::Finite(2.0),
            Exponent::Finite(1f64.exp() + 1.0),
            Exponent::Finite(5.0),
            Exponent::Sup,
            Exponent::Finite(4f64.exp() + 1.0),
        ];
        let mut ws = NormWorkspace::new();
        let mut out = Vec::new();
        ws.norms_into(&y, &ex, &mut out);
        for (e, v) in ex.iter().zip(&out) {
            assert_eq!(p_norm_stat(&y, *e).unwrap().to_bits(), v.to_bits());
        }
    }
}
