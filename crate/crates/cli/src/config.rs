use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use superharmonic::geometry::{DerivativeMode, TorusGrid};
use superharmonic::grassmann::MAX_GENERATORS;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("invalid value `{value}` for `{key}`: {reason}")]
    InvalidValue {
        key: String,
        value: String,
        reason: String,
    },
    #[error("tolerance override for unknown check `{0}`")]
    UnknownCheck(String),
    #[error("cannot read config file {path}: {reason}")]
    Io { path: String, reason: String },
}

/// Grid size as `N1xN2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSize(pub [usize; 2]);

impl FromStr for GridSize {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once('x')
            .ok_or_else(|| "expected NxM".to_string())?;
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| e.to_string());
        Ok(Self([parse(a)?, parse(b)?]))
    }
}

impl std::fmt::Display for GridSize {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.0[0], self.0[1])
    }
}

/// Settings shared by every suite.
///
/// Defaults: 32x32 unit torus, spectral derivatives, 8 generators, seed 1,
/// no output file, no timings.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub grid: GridSize,
    pub mode: DerivativeMode,
    pub generators: usize,
    pub seed: u64,
    /// Per-check tolerance overrides, keyed by check id.
    pub tolerances: BTreeMap<String, f64>,
    pub out: Option<PathBuf>,
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            grid: GridSize([32, 32]),
            mode: DerivativeMode::Spectral,
            generators: 8,
            seed: 1,
            tolerances: BTreeMap::new(),
            out: None,
            timings: false,
        }
    }
}

fn invalid(key: &str, value: &str, reason: impl ToString) -> ConfigError {
    ConfigError::InvalidValue {
        key: key.to_string(),
        value: value.to_string(),
        reason: reason.to_string(),
    }
}

impl SuiteConfig {
    /// Apply one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "grid" => self.grid = value.parse().map_err(|e| invalid(key, value, e))?,
            "mode" => self.mode = value.parse().map_err(|e| invalid(key, value, e))?,
            "gens" => self.generators = value.parse().map_err(|e| invalid(key, value, e))?,
            "seed" => self.seed = value.parse().map_err(|e| invalid(key, value, e))?,
            "out" => self.out = Some(PathBuf::from(value)),
            "timings" => self.timings = value.parse().map_err(|e| invalid(key, value, e))?,
            _ => match key.strip_prefix("tolerance.") {
                Some(id) => {
                    let tol: f64 = value.parse().map_err(|e| invalid(key, value, e))?;
                    if !(tol.is_finite() && tol >= 0.0) {
                        return Err(invalid(
                            key,
                            value,
                            "tolerance must be finite and non-negative",
                        ));
                    }
                    self.tolerances.insert(id.to_string(), tol);
                }
                None => {
                    return Err(ConfigError::UnknownKey {
                        line: 0,
                        key: key.to_string(),
                    })
                }
            },
        }
        Ok(())
    }

    /// Apply a `key = value` file; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(ConfigError::Syntax { line: n + 1 })?;
            self.set(key.trim(), value.trim()).map_err(|e| match e {
                ConfigError::UnknownKey { key, .. } => ConfigError::UnknownKey { line: n + 1, key },
                other => other,
            })?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self, ConfigError> {
        let mut c = Self::default();
        c.apply_text(text)?;
        Ok(c)
    }

    /// Check ranges that the suites rely on.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let g = self.grid.to_string();
        TorusGrid::new(self.grid.0, [1.0, 1.0], self.mode).map_err(|e| invalid("grid", &g, e))?;
        if self.grid.0.iter().any(|&n| n < 16 || n % 2 != 0) {
            return Err(invalid("grid", &g, "sizes must be even and at least 16"));
        }
        if !(6..=MAX_GENERATORS).contains(&self.generators) {
            return Err(invalid(
                "gens",
                &self.generators.to_string(),
                format!("need between 6 and {MAX_GENERATORS} generators"),
            ));
        }
        Ok(())
    }

    pub fn tolerance(&self, id: &str, default: f64) -> f64 {
        self.tolerances.get(id).copied().unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let c = SuiteConfig::from_text(
            "# desk\ngrid = 16x24\nmode = fd2 # cheap\ngens=6\ntolerance.dirac.symmetry = 1e-9\n",
        )
        .unwrap();
        assert_eq!(c.grid, GridSize([16, 24]));
        assert_eq!(c.mode, DerivativeMode::Fd2);
        assert_eq!(c.generators, 6);
        assert_eq!(c.tolerance("dirac.symmetry", 1.0), 1e-9);
        assert_eq!(c.tolerance("other", 1.0), 1.0);
    }

    #[test]
    fn rejects_unknown_keys_with_line_numbers() {
        assert_eq!(
            SuiteConfig::from_text("grid = 32x32\n\ncolour = red\n"),
            Err(ConfigError::UnknownKey {
                line: 3,
                key: "colour".into()
            })
        );
        assert_eq!(
            SuiteConfig::from_text("grid 32x32"),
            Err(ConfigError::Syntax { line: 1 })
        );
    }

    #[test]
    fn rejects_bad_values() {
        assert!(matches!(
            SuiteConfig::from_text("grid = 32"),
            Err(ConfigError::InvalidValue { .. })
        ));
        assert!(matches!(
            SuiteConfig::from_text("mode = fd3"),
            Err(ConfigError::InvalidValue { .. })
        ));
        assert!(matches!(
            SuiteConfig::from_text("tolerance.x = -1"),
            Err(ConfigError::InvalidValue { .. })
        ));
        let c = SuiteConfig {
            generators: 3,
            ..Default::default()
        };
        assert!(c.validate().is_err());
        let c = SuiteConfig {
            grid: GridSize([15, 16]),
            ..Default::default()
        };
        assert!(c.validate().is_err());
        assert!(SuiteConfig::default().validate().is_ok());
    }
}
