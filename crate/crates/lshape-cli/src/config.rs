//! Run configuration: the base triple as exact rationals, the sweep grid,
//! tolerances and output selection. Loadable from TOML, overridable from
//! flags, and hashed into every emitted table header.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use lshape::paths::{self, BaseConfig};
use lshape::quad::QuadratureConfig;
use lshape::sc::SolverConfig;
use lshape::surface::RationalParams;

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub base: BaseTriple,
    pub grid: GridSpec,
    pub tolerances: Tolerances,
    pub output: OutputSpec,
    /// Worker threads for sweeps; 0 means one per core.
    pub jobs: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BaseTriple {
    pub a: String,
    pub b: String,
    pub q: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub count: usize,
    pub log_spaced: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub quad_abs: f64,
    pub quad_rel: f64,
    pub solver: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSpec {
    pub dir: String,
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            base: BaseTriple::default(),
            grid: GridSpec::default(),
            tolerances: Tolerances::default(),
            output: OutputSpec::default(),
            jobs: 1,
        }
    }
}

impl Default for BaseTriple {
    fn default() -> Self {
        Self {
            a: "1".into(),
            b: "1".into(),
            q: "1/2".into(),
        }
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            t_min: 1e-4,
            t_max: 1e-1,
            count: 24,
            log_spaced: true,
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        let q = QuadratureConfig::default();
        Self {
            quad_abs: q.abs_tol,
            quad_rel: q.rel_tol,
            solver: 1e-10,
        }
    }
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            dir: "out".into(),
            format: Format::Csv,
        }
    }
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Format::Csv => write!(f, "csv"),
            Format::Json => write!(f, "json"),
        }
    }
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::invalid_config(format!("cannot read {path:?}: {e}")))?;
        toml::from_str(&text)
            .map_err(|e| CliError::invalid_config(format!("cannot parse {path:?}: {e}")))
    }

    /// Exact base triple; rejects malformed rationals.
    pub fn rational_base(&self) -> Result<RationalParams, CliError> {
        RationalParams::from_strs(&self.base.a, &self.base.b, &self.base.q)
            .map_err(|e| CliError::invalid_config(format!("base triple: {e}")))
    }

    /// Base triple as a sweep configuration (requires b > 0).
    pub fn sweep_base(&self) -> Result<BaseConfig, CliError> {
        BaseConfig::new(self.rational_base()?)
            .map_err(|e| CliError::invalid_config(format!("base triple: {e}")))
    }

    pub fn quadrature(&self) -> Result<QuadratureConfig, CliError> {
        let cfg = QuadratureConfig {
            abs_tol: self.tolerances.quad_abs,
            rel_tol: self.tolerances.quad_rel,
            ..QuadratureConfig::default()
        };
        cfg.validate()
            .map_err(|e| CliError::invalid_config(format!("tolerances: {e}")))?;
        Ok(cfg)
    }

    pub fn solver(&self) -> Result<SolverConfig, CliError> {
        if !(self.tolerances.solver > 0.0 && self.tolerances.solver < 1.0) {
            return Err(CliError::invalid_config(format!(
                "solver tolerance must lie in (0, 1), got {}",
                self.tolerances.solver
            )));
        }
        Ok(SolverConfig {
            quad: self.quadrature()?,
            residual_tol: self.tolerances.solver,
            ..SolverConfig::default()
        })
    }

    /// The t-grid in ascending order, validated against the base triple.
    pub fn t_grid(&self) -> Result<Vec<f64>, CliError> {
        let base = self.sweep_base()?;
        let g = &self.grid;
        if !(g.t_min > 0.0 && g.t_max < base.q0()) {
            return Err(CliError::invalid_config(format!(
                "t-grid [{}, {}] must lie inside (0, q0 = {})",
                g.t_min,
                g.t_max,
                base.q0()
            )));
        }
        let mut grid = if g.count == 1 {
            vec![g.t_min]
        } else if g.log_spaced {
            paths::log_grid(g.t_min, g.t_max, g.count)
                .map_err(|e| CliError::invalid_config(e.to_string()))?
        } else {
            (0..g.count)
                .map(|i| {
                    g.t_min + (g.t_max - g.t_min) * i as f64 / (g.count - 1) as f64
                })
                .collect()
        };
        grid.sort_by(f64::total_cmp);
        Ok(grid)
    }

    /// Hash of the canonical TOML serialization, pinned into table headers.
    pub fn config_hash(&self) -> String {
        let canonical = toml::to_string(self).expect("config serializes");
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        let digest = hasher.finalize();
        let mut out = String::with_capacity(16);
        for byte in digest.iter().take(8) {
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let cfg = RunConfig::default();
        assert!(cfg.rational_base().is_ok());
        assert_eq!(cfg.t_grid().unwrap().len(), 24);
        assert!(cfg.quadrature().is_ok());
    }

    #[test]
    fn hash_tracks_content() {
        let a = RunConfig::default();
        let mut b = RunConfig::default();
        assert_eq!(a.config_hash(), b.config_hash());
        b.grid.count = 7;
        assert_ne!(a.config_hash(), b.config_hash());
    }

    #[test]
    fn bad_rational_is_invalid_config() {
        let mut cfg = RunConfig::default();
        cfg.base.q = "1/0".into();
        assert!(cfg.rational_base().is_err());
    }

    #[test]
    fn grid_must_fit_below_q0() {
        let mut cfg = RunConfig::default();
        cfg.grid.t_max = 0.6;
        assert!(cfg.t_grid().is_err());
    }

    #[test]
    fn toml_round_trip() {
        let cfg = RunConfig::default();
        let text = toml::to_string(&cfg).unwrap();
        let back: RunConfig = toml::from_str(&text).unwrap();
        assert_eq!(cfg.config_hash(), back.config_hash());
    }
}
