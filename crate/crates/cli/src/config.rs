//! Run configuration: a flat `key = value` file overridden by flags.
//!
//! ```text
//! # comment
//! omega1 = 1.0
//! phi = sin(t)
//! grid = 0:5:101
//! ```
//!
//! Keys are the long flag names without the leading dashes. Unknown keys are
//! an error; a key given twice keeps the last value.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use delayosc_core::fundamental::MAX_INTERVALS;
use delayosc_core::ForcingKernel;

use crate::CliError;

pub const KEYS: &[&str] = &[
    "omega1",
    "omega2",
    "omega",
    "tau",
    "horizon",
    "phi",
    "f",
    "grid",
    "out",
    "format",
    "kernel",
    "quad-nodes",
    "rk-h",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl Grid {
    pub fn parse(text: &str) -> Result<Grid, CliError> {
        let parts: Vec<&str> = text.split(':').map(str::trim).collect();
        let bad = || CliError::Config(format!("grid must be START:END:N, got `{text}`"));
        let [start, end, n] = parts.as_slice() else {
            return Err(bad());
        };
        let grid = Grid {
            start: start.parse().map_err(|_| bad())?,
            end: end.parse().map_err(|_| bad())?,
            points: n.parse().map_err(|_| bad())?,
        };
        let finite = grid.start.is_finite() && grid.end.is_finite();
        if grid.points < 2 || !finite || grid.start >= grid.end {
            return Err(CliError::Config(format!(
                "grid needs start < end and at least 2 points, got `{text}`"
            )));
        }
        Ok(grid)
    }

    /// Evenly spaced points, both ends included.
    pub fn points(&self) -> Vec<f64> {
        let n = self.points - 1;
        (0..=n)
            .map(|i| {
                if i == n {
                    self.end
                } else {
                    self.start + (self.end - self.start) * i as f64 / n as f64
                }
            })
            .collect()
    }
}

/// Raw key/value pairs before typing.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    values: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<RawConfig, CliError> {
        let mut values = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(CliError::Config(format!(
                    "line {}: unknown key `{key}`",
                    lineno + 1
                )));
            }
            values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(RawConfig { values })
    }

    pub fn load(path: &Path) -> Result<RawConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        RawConfig::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        debug_assert!(KEYS.contains(&key));
        self.values.insert(key.to_string(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn number<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| CliError::Config(format!("{key}: cannot parse `{v}`"))),
        }
    }

    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let tau: f64 = self.number("tau", 1.0)?;
        if !(tau.is_finite() && tau > 0.0) {
            return Err(CliError::Config(format!("tau must be positive, got {tau}")));
        }
        let horizon: usize = self.number("horizon", 5)?;
        if !(1..=MAX_INTERVALS).contains(&horizon) {
            return Err(CliError::Config(format!(
                "horizon must be in [1, {MAX_INTERVALS}], got {horizon}"
            )));
        }
        let frequency = |key: &str, default: f64| -> Result<f64, CliError> {
            let w: f64 = self.number(key, default)?;
            if w.is_finite() && w >= 0.0 {
                Ok(w)
            } else {
                Err(CliError::Config(format!(
                    "{key} must be non-negative, got {w}"
                )))
            }
        };
        let end = horizon as f64 * tau;
        let grid = match self.get("grid") {
            Some(g) => Grid::parse(g)?,
            None => Grid {
                start: -tau,
                end,
                points: 20 * horizon + 21,
            },
        };
        if grid.start < -tau || grid.end > end {
            return Err(CliError::Config(format!(
                "out of horizon: grid [{}, {}] must lie within [-tau, K*tau] = [{}, {end}]",
                grid.start, grid.end, -tau
            )));
        }
        let format = match self.get("format").unwrap_or("csv") {
            "csv" => Format::Csv,
            "json" => Format::Json,
            other => {
                return Err(CliError::Config(format!(
                    "format must be csv or json, got `{other}`"
                )))
            }
        };
        let kernel = match self.get("kernel").unwrap_or("impulse") {
            "impulse" => ForcingKernel::Impulse,
            "x2" => ForcingKernel::X2,
            "x1" => ForcingKernel::X1,
            other => {
                return Err(CliError::Config(format!(
                    "kernel must be impulse, x2 or x1, got `{other}`"
                )))
            }
        };
        let rk_h: f64 = self.number("rk-h", 1e-3)?;
        if !(rk_h > 0.0 && rk_h <= tau / 10.0) {
            return Err(CliError::Config(format!(
                "rk-h must be in (0, tau/10], got {rk_h}"
            )));
        }
        Ok(RunConfig {
            omega1: frequency("omega1", 1.0)?,
            omega2: frequency("omega2", 1.0)?,
            omega: frequency("omega", 1.0)?,
            tau,
            horizon,
            phi: self.get("phi").unwrap_or("1").to_string(),
            f: self.get("f").unwrap_or("0").to_string(),
            grid,
            out: self.get("out").map(PathBuf::from),
            format,
            kernel,
            quad_nodes: self.number("quad-nodes", 16)?,
            rk_h,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub omega1: f64,
    pub omega2: f64,
    /// Frequency for `delay-trig`.
    pub omega: f64,
    pub tau: f64,
    /// Interval count K.
    pub horizon: usize,
    pub phi: String,
    pub f: String,
    pub grid: Grid,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub kernel: ForcingKernel,
    pub quad_nodes: usize,
    pub rk_h: f64,
}

impl RunConfig {
    /// Intervals to build so that a grid ending exactly at `Kτ` is covered.
    pub fn build_intervals(&self) -> usize {
        if self.grid.end < self.horizon as f64 * self.tau {
            self.horizon
        } else {
            (self.horizon + 1).min(MAX_INTERVALS)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file_with_comments() {
        let raw = RawConfig::parse("# demo\nomega1 = 2\n\nphi = sin(t) + 1\ngrid=0:1:3\n").unwrap();
        let cfg = raw.resolve().unwrap();
        assert_eq!(cfg.omega1, 2.0);
        assert_eq!(cfg.phi, "sin(t) + 1");
        assert_eq!(cfg.grid.points(), vec![0.0, 0.5, 1.0]);
        assert_eq!(cfg.kernel, ForcingKernel::Impulse);
    }

    #[test]
    fn flags_override_file() {
        let mut raw = RawConfig::parse("tau = 2\n").unwrap();
        raw.set("tau", "0.5");
        assert_eq!(raw.resolve().unwrap().tau, 0.5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RawConfig::parse("bogus = 1").is_err());
        assert!(RawConfig::parse("no equals sign").is_err());
        for text in [
            "tau = 0",
            "horizon = 0",
            "horizon = 65",
            "omega1 = -1",
            "grid = 0:1",
            "grid = 1:0:5",
            "grid = 0:1:1",
            "grid = 0:6:10",
            "grid = -2:1:10",
            "format = xml",
            "kernel = x3",
            "rk-h = 0.5",
        ] {
            let r = RawConfig::parse(text).unwrap().resolve();
            assert!(matches!(r, Err(CliError::Config(_))), "{text}: {r:?}");
        }
    }

    #[test]
    fn grid_may_end_on_the_horizon() {
        let cfg = RawConfig::parse("horizon = 5\ngrid = 0:5:11")
            .unwrap()
            .resolve()
            .unwrap();
        assert_eq!(cfg.build_intervals(), 6);
        let cfg = RawConfig::parse("horizon = 5\ngrid = 0:4.5:11")
            .unwrap()
            .resolve()
            .unwrap();
        assert_eq!(cfg.build_intervals(), 5);
    }
}
