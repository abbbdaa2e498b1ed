//! JSON configuration schema for the CLI commands, with per-field validation
//! messages.

use serde::{Deserialize, Serialize};

use crate::effective::Backend;
use crate::error::{Error, Result};
use crate::ladder::{ChainBond, LadderSpec};

/// A closed inclusive grid start..=stop in steps of `step`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        // rounding in start + n·step must not push the last point past stop
        (0..=n)
            .map(|i| (self.start + i as f64 * self.step).min(self.stop))
            .collect()
    }

    pub fn validate(&self, name: &str) -> Result<()> {
        if !self.step.is_finite() || self.step <= 0.0 {
            return Err(Error::config(format!(
                "{name}.step must be > 0, got {}",
                self.step
            )));
        }
        if self.stop < self.start {
            return Err(Error::config(format!(
                "{name}: stop {} is below start {}",
                self.stop, self.start
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BondOverrideConfig {
    pub chain: u8,
    /// Bond between rungs `rung` and `rung+1`.
    pub rung: usize,
    pub delta: f64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LadderConfig {
    pub l: Option<usize>,
    pub j: Option<f64>,
    pub delta: Option<f64>,
    #[serde(default)]
    pub bond_overrides: Vec<BondOverrideConfig>,
}

fn default_jobs() -> usize {
    0 // 0 = rayon default
}

/// Full sweep configuration; commands read the sections they need and fill
/// documented defaults for the rest.
#[derive(Debug, Clone, Serialize, Deserialize, Default, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub ladder: LadderConfig,
    /// Node pair (m, n).
    pub nodes: Option<[usize; 2]>,
    pub j_a: Option<f64>,
    pub j_b: Option<f64>,
    /// Δ grid for anisotropy sweeps.
    pub delta_grid: Option<GridSpec>,
    /// L range [min, max] for length sweeps.
    pub l_range: Option<[usize; 2]>,
    /// (δ_m, δ_n) grid for fluctuation sweeps.
    pub fluct_grid: Option<GridSpec>,
    /// Single fluctuation point (δ_m, δ_n) for gate-error.
    pub fluctuations: Option<[f64; 2]>,
    pub backend: Option<String>,
    #[serde(default = "default_jobs")]
    pub jobs: usize,
    /// Output path (the --out flag overrides it).
    pub out: Option<String>,
    /// Energy scale in meV for picosecond reporting.
    pub energy_scale_mev: Option<f64>,
    /// Tolerance overrides for the validate command.
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
}

#[derive(Debug, Clone, Serialize, Deserialize, Default, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    /// Effective-vs-exact splitting bound (default 0.05).
    pub splitting_rel: Option<f64>,
    /// Gate equivalence distance bound (default 1e-8).
    pub gate_distance: Option<f64>,
    /// Backend agreement bound (default 1e-8).
    pub backend_agreement: Option<f64>,
}

impl SweepConfig {
    /// Parse with config-error wrapping (line/column from serde_json).
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::config(e.to_string()))
    }

    pub fn backend(&self) -> Result<Backend> {
        match self.backend.as_deref() {
            None | Some("sum") => Ok(Backend::SpectrumSum),
            Some("resolvent") => Ok(Backend::Resolvent),
            Some(other) => Err(Error::config(format!(
                "backend must be \"sum\" or \"resolvent\", got \"{other}\""
            ))),
        }
    }

    /// Assemble the ladder spec with command-specific defaults.
    pub fn ladder_spec(
        &self,
        default_l: usize,
        default_j: f64,
        default_delta: f64,
    ) -> Result<LadderSpec> {
        let l = self.ladder.l.unwrap_or(default_l);
        let j = self.ladder.j.unwrap_or(default_j);
        let delta = self.ladder.delta.unwrap_or(default_delta);
        let mut spec = LadderSpec::new(l, j, delta).map_err(config_from_domain)?;
        for ov in &self.ladder.bond_overrides {
            spec = spec
                .with_override(ChainBond::new(ov.chain, ov.rung), ov.delta)
                .map_err(config_from_domain)?;
        }
        Ok(spec)
    }

    pub fn node_pair(&self, default: [usize; 2]) -> [usize; 2] {
        self.nodes.unwrap_or(default)
    }

    pub fn couplings(&self, default: f64) -> (f64, f64) {
        (self.j_a.unwrap_or(default), self.j_b.unwrap_or(default))
    }
}

fn config_from_domain(e: Error) -> Error {
    match e {
        Error::Domain(msg) => Error::Config(format!("ladder: {msg}")),
        other => other,
    }
}
