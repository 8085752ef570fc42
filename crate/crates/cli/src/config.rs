//! Run configuration: a JSON file and command-line flags merged field by field, flags winning.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use driftflight::FlightParams;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = driftflight::validation::DEFAULT_SEED;
pub const DEFAULT_COUNT: usize = 1000;
pub const DEFAULT_POINTS: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum DensityFormula {
    Projected,
    Nu1,
    Nu1Closed,
    RadialProjected,
    RadialNu1,
}

impl DensityFormula {
    pub fn full_space(self) -> bool {
        matches!(self, DensityFormula::Nu1 | DensityFormula::Nu1Closed | DensityFormula::RadialNu1)
    }

    pub fn radial(self) -> bool {
        matches!(self, DensityFormula::RadialProjected | DensityFormula::RadialNu1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CfFormula {
    Projected,
    Nu1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Only {
    All,
    Identities,
    Gof,
    GofRadial,
    GofCf,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialParams {
    pub d: Option<usize>,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub nu: Option<f64>,
    pub c: Option<f64>,
    pub t: Option<f64>,
}

/// Everything a config file or the flags may set. All fields optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub params: PartialParams,
    pub seed: Option<u64>,
    pub count: Option<usize>,
    pub out: Option<PathBuf>,
    pub trajectories: Option<PathBuf>,
    /// Formula selector for `density` and `cf`.
    pub formula: Option<String>,
    pub min: Option<Vec<f64>>,
    pub max: Option<Vec<f64>>,
    pub step: Option<Vec<f64>>,
    pub points: Option<usize>,
    pub orders: Option<Vec<u32>>,
    pub lambda: Option<f64>,
    pub n_max: Option<usize>,
    pub only: Option<Only>,
}

macro_rules! prefer {
    ($a:expr, $b:expr, $($f:ident),*) => { $( $a.$f = $a.$f.take().or($b.$f.take()); )* };
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }

    /// Fields set in `self` win over those in `base`.
    pub fn over(mut self, mut base: RunConfig) -> RunConfig {
        prefer!(self.params, base.params, d, m, n, nu, c, t);
        prefer!(
            self, base, seed, count, out, trajectories, formula, min, max, step, points, orders,
            lambda, n_max, only
        );
        self
    }

    /// Flight parameters with defaults `d = 2, n = 1, c = t = 1`. For the full-space `ν = 1`
    /// laws (`full_space`), `m` defaults to `d` and `ν` to 1; otherwise to `d - 1` and 0.
    pub fn flight_params(&self, full_space: bool) -> Result<FlightParams, CliError> {
        let p = &self.params;
        let d = p.d.unwrap_or(2);
        let default_m = if full_space { d } else { d.saturating_sub(1).max(1) };
        let fp = FlightParams {
            d,
            m: p.m.unwrap_or(default_m),
            n: p.n.unwrap_or(1),
            nu: p.nu.unwrap_or(if full_space { 1.0 } else { 0.0 }),
            c: p.c.unwrap_or(1.0),
            t: p.t.unwrap_or(1.0),
        };
        fp.validate().map_err(CliError::from)?;
        Ok(fp)
    }

    /// Parse the formula selector, falling back to `default`.
    pub fn formula<F: ValueEnum>(&self, default: F) -> Result<F, CliError> {
        match &self.formula {
            None => Ok(default),
            Some(s) => F::from_str(s, false).map_err(|_| {
                let names: Vec<String> =
                    F::value_variants().iter().filter_map(|v| v.to_possible_value()).map(|p| p.get_name().to_string()).collect();
                CliError::Usage(format!("unknown formula '{s}', expected one of {}", names.join(", ")))
            }),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn count(&self) -> Result<usize, CliError> {
        match self.count {
            Some(0) => Err(CliError::Usage("--count must be at least 1".into())),
            Some(c) => Ok(c),
            None => Ok(DEFAULT_COUNT),
        }
    }
}

/// A rectangular grid, `min + i·step` per axis, in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    pub step: Vec<f64>,
}

impl Grid {
    /// Resolve the grid for `axes` axes; single values broadcast to every axis. Without a
    /// step, `points` (default 101) points per axis span `[min, max]`.
    pub fn resolve(cfg: &RunConfig, axes: usize, lo: f64, hi: f64) -> Result<Grid, CliError> {
        let expand = |v: &Option<Vec<f64>>, default: f64, name: &str| -> Result<Vec<f64>, CliError> {
            match v {
                None => Ok(vec![default; axes]),
                Some(v) if v.len() == 1 => Ok(vec![v[0]; axes]),
                Some(v) if v.len() == axes => Ok(v.clone()),
                Some(v) => Err(CliError::Usage(format!("--{name} has {} values, expected 1 or {axes}", v.len()))),
            }
        };
        let min = expand(&cfg.min, lo, "min")?;
        let max = expand(&cfg.max, hi, "max")?;
        let step = match &cfg.step {
            Some(_) => expand(&cfg.step, 0.0, "step")?,
            None => {
                let points = cfg.points.unwrap_or(DEFAULT_POINTS);
                if points < 2 {
                    return Err(CliError::Usage("--points must be at least 2".into()));
                }
                min.iter().zip(&max).map(|(a, b)| (b - a) / (points - 1) as f64).collect()
            }
        };
        for i in 0..axes {
            if !(min[i].is_finite() && max[i].is_finite() && min[i] <= max[i]) {
                return Err(CliError::Usage(format!("grid axis {i}: need finite min <= max")));
            }
            if !(step[i] > 0.0) && max[i] > min[i] {
                return Err(CliError::Usage(format!("grid axis {i}: step must be positive")));
            }
        }
        Ok(Grid { min, max, step })
    }

    fn axis(&self, i: usize) -> Vec<f64> {
        if self.max[i] == self.min[i] {
            return vec![self.min[i]];
        }
        let k = ((self.max[i] - self.min[i]) / self.step[i] + 1e-9).floor() as usize;
        (0..=k).map(|j| self.min[i] + j as f64 * self.step[i]).collect()
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut out = vec![Vec::new()];
        for i in 0..self.min.len() {
            let axis = self.axis(i);
            out = out
                .into_iter()
                .flat_map(|p| {
                    axis.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = RunConfig {
            params: PartialParams { d: Some(4), nu: Some(1.0), ..Default::default() },
            seed: Some(1),
            ..Default::default()
        };
        let flags = RunConfig { params: PartialParams { d: Some(3), ..Default::default() }, ..Default::default() };
        let merged = flags.over(file);
        assert_eq!(merged.params.d, Some(3));
        assert_eq!(merged.params.nu, Some(1.0));
        assert_eq!(merged.seed, Some(1));
    }

    #[test]
    fn grid_shapes() {
        let cfg = RunConfig { min: Some(vec![0.0]), max: Some(vec![1.0]), step: Some(vec![0.25]), ..Default::default() };
        let g = Grid::resolve(&cfg, 2, -1.0, 1.0).unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 25);
        assert_eq!(pts[1], vec![0.0, 0.25]);
        let cfg = RunConfig { points: Some(3), ..Default::default() };
        assert_eq!(Grid::resolve(&cfg, 1, 0.0, 1.0).unwrap().points(), vec![vec![0.0], vec![0.5], vec![1.0]]);
    }

    #[test]
    fn zero_count_is_rejected() {
        assert!(RunConfig { count: Some(0), ..Default::default() }.count().is_err());
    }
}
