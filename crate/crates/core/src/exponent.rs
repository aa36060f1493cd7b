use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exponent of a p-norm: a positive real, or the supremum norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Sup,
}

impl Exponent {
    pub fn finite(p: f64) -> Result<Self> {
        if p > 0.0 && p.is_finite() {
            Ok(Exponent::Finite(p))
        } else {
            Err(Error::domain(format!("exponent must be positive and finite, got {p}")))
        }
    }

    pub fn validate(self) -> Result<Self> {
        match self {
            Exponent::Finite(p) => Exponent::finite(p),
            Exponent::Sup => Ok(self),
        }
    }

    pub fn as_finite(self) -> Option<f64> {
        match self {
            Exponent::Finite(p) => Some(p),
            Exponent::Sup => None,
        }
    }

    pub fn is_sup(self) -> bool {
        matches!(self, Exponent::Sup)
    }

    /// Short label used in tables: `p=2`, `p=3.718`, `sup`.
    pub fn label(self) -> String {
        match self {
            Exponent::Sup => "sup".to_string(),
            Exponent::Finite(p) if p.fract() == 0.0 => format!("p={p}"),
            Exponent::Finite(p) => format!("p={p:.3}"),
        }
    }
}

impl fmt::Display for Exponent {
    /// Round-trips through [`FromStr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Sup => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts a number, `inf`/`sup`/`∞`, or `e^k+1` shorthand.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "sup" | "infinity" | "∞" => return Ok(Exponent::Sup),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("e^") {
            let (k, tail) = rest.split_once('+').unwrap_or((rest, "0"));
            let k: f64 = k.parse().map_err(|_| Error::config(format!("bad exponent '{s}'")))?;
            let c: f64 = tail.parse().map_err(|_| Error::config(format!("bad exponent '{s}'")))?;
            return Exponent::finite(k.exp() + c);
        }
        let p: f64 = t.parse().map_err(|_| Error::config(format!("bad exponent '{s}'")))?;
        if p.is_infinite() && p > 0.0 {
            return Ok(Exponent::Sup);
        }
        Exponent::finite(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("2".parse::<Exponent>().unwrap(), Exponent::Finite(2.0));
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Sup);
        assert_eq!("sup".parse::<Exponent>().unwrap(), Exponent::Sup);
        let e4 = "e^4+1".parse::<Exponent>().unwrap();
        assert_eq!(e4, Exponent::Finite(4f64.exp() + 1.0));
        for e in [Exponent::Finite(2.5), Exponent::Sup, e4] {
            assert_eq!(e.to_string().parse::<Exponent>().unwrap(), e);
        }
        assert!("0".parse::<Exponent>().is_err());
        assert!("-1".parse::<Exponent>().is_err());
        assert!("abc".parse::<Exponent>().is_err());
    }
}
