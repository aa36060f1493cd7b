//! Flag/config-file merging. Config keys are the long flag names without the
//! leading dashes (`d`, `alpha`, `calib-reps`, …); a flag given on the command
//! line always wins. Every resolved value is recorded in the run manifest, so
//! a manifest can be passed back as `--config` to repeat a run.

use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use pnorm_core::report::Manifest;
use pnorm_core::{Error, KeyValues, Result};

/// Keys a manifest carries that are not inputs.
const RECORD_ONLY: &[&str] = &["command", "version"];

pub struct Settings {
    kv: Option<KeyValues>,
    pub manifest: Manifest,
}

impl Settings {
    pub fn load(path: Option<&Path>, command: &str) -> Result<Self> {
        let kv = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Error::Config(format!("cannot read config {}: {e}", p.display())))?;
                let kv = KeyValues::parse(&text)?;
                if let Some(c) = kv.get("command") {
                    if c != command {
                        log::warn!("config was recorded for '{c}', running '{command}'");
                    }
                }
                Some(kv)
            }
            None => None,
        };
        Ok(Settings { kv, manifest: Manifest::new(command) })
    }

    fn from_file<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        match self.kv.as_ref().and_then(|kv| kv.get(key)) {
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|e| Error::Config(format!("config key '{key}' = '{raw}': {e}"))),
            None => Ok(None),
        }
    }

    /// Flag, else config file, else `None`. Records the resolved value.
    pub fn optional<T>(&mut self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T: FromStr + Display,
        T::Err: Display,
    {
        let v = match flag {
            Some(v) => Some(v),
            None => self.from_file(key)?,
        };
        if let Some(v) = &v {
            self.manifest.set(key, v);
        }
        Ok(v)
    }

    pub fn required<T>(&mut self, flag: Option<T>, key: &str) -> Result<T>
    where
        T: FromStr + Display,
        T::Err: Display,
    {
        self.optional(flag, key)?
            .ok_or_else(|| Error::Config(format!("missing required setting --{key} (flag or config key '{key}')")))
    }

    pub fn or<T>(&mut self, flag: Option<T>, key: &str, default: T) -> Result<T>
    where
        T: FromStr + Display,
        T::Err: Display,
    {
        let v = self.optional(flag, key)?.unwrap_or(default);
        self.manifest.set(key, &v);
        Ok(v)
    }

    /// A switch: set by the flag or by `key = true` in the config.
    pub fn switch(&mut self, flag: bool, key: &str) -> Result<bool> {
        let v = flag || self.from_file::<bool>(key)?.unwrap_or(false);
        self.manifest.set(key, v);
        Ok(v)
    }

    /// Warns about config keys that no setting consumed.
    pub fn warn_unused(&self) {
        let Some(kv) = &self.kv else { return };
        let used: Vec<&str> = self.manifest.inputs().iter().map(|(k, _)| k.as_str()).collect();
        for k in kv.keys() {
            if !used.contains(&k) && !RECORD_ONLY.contains(&k) && !k.starts_with("file.") && !k.starts_with("input.") {
                log::warn!("config key '{k}' is not used by this command");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_config(text: &str) -> Settings {
        Settings { kv: Some(KeyValues::parse(text).unwrap()), manifest: Manifest::new("t") }
    }

    #[test]
    fn flags_win_over_file() {
        let mut s = with_config("d = 100\nalpha = 0.1\n");
        assert_eq!(s.required(Some(50usize), "d").unwrap(), 50);
        assert_eq!(s.or(None, "alpha", 0.05).unwrap(), 0.1);
        assert_eq!(s.or::<u64>(None, "seed", 7).unwrap(), 7);
        let m = s.manifest.render();
        assert!(m.contains("d = 50") && m.contains("alpha = 0.1") && m.contains("seed = 7"));
    }

    #[test]
    fn missing_and_malformed_values_are_config_errors() {
        let mut s = with_config("d = many\n");
        assert!(s.required::<usize>(None, "d").unwrap_err().is_config_error());
        assert!(s.required::<f64>(None, "alpha").unwrap_err().is_config_error());
    }

    #[test]
    fn switches_read_booleans() {
        let mut s = with_config("asymptotic = true\n");
        assert!(s.switch(false, "asymptotic").unwrap());
        assert!(!s.switch(false, "figure3").unwrap());
    }
}
