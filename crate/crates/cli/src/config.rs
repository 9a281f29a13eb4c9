use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use popsales::estimation::MemoryGrid;
use popsales::simulator::{ModelKind, SeasonalProfile};
use popsales::{MemoryParams, ModelParams, NoiseMode};
use serde::Deserialize;

use crate::UsageError;

/// Printed by `config-template`; parses to [`RunConfig::default`].
pub const TEMPLATE: &str = r#"# popsales run configuration. Every key is optional; missing keys take the
# values shown here. Command-line flags override the matching keys.

# Seed of every random stream (--seed).
seed = 2024
# Output directory (--out).
outputs = "popsales-out"

[model]
# Mean-reverting diffusion dX = (a - b X) dt + s X dW, weekly steps.
# Stability needs 0 < b < 1.
a = 1.16
b = 0.2
s = 0.25014
# Weekly release probability from Base (mean Base sojourn 97.9 weeks).
q12 = 0.010214504596527068
# Weekly exit probability from Promotion (mean promotion 33.1 weeks).
q22_exit = 0.030211480362537763
# Weekly single probability while promoted, and its success probability.
p = 0.1
p_prime = 0.1007
# Release peak: jump_scale / 1000 * exp(N(jump_mu, jump_sigma)), in k-units.
jump_mu = 1.2
jump_sigma = 1.7
jump_scale = 1000.0
# Single spikes are uniform on (0, spike_max) k-units.
spike_max = 100.0
# "multiplicative" (s X dW) or "additive" (s dW).
noise = "multiplicative"

[seasonal]
# "uniform", "autumn" (weeks 36..=48 at three times the rest), "elevated"
# (first_week..=last_week at `factor` times the rest) or "custom" (`c`, 52 values).
kind = "autumn"
first_week = 36
last_week = 48
factor = 3.0
# c = [1.0, 1.0, ...]

[memory]
# Later album peaks: max(previous episode total / s_c + s_s Z, 0).
s_c = 10.0
s_s = 50.0

[cohort]
n_artists = 30
horizon_weeks = 520
# Cohorts simulated by `compare`.
n_ensembles = 100
# Seasonal hazard and peak memory (--nonstationary / --stationary).
nonstationary = true
# Unrecorded weeks simulated before week 0 of a non-stationary run.
warmup_weeks = 520

[analysis]
# Largest ACF lag (--max-lag).
max_lag = 200
# Shared uncensored weeks needed for a correlation.
min_overlap = 52
# Width of the release-interval histogram bins, in weeks.
interval_bin_weeks = 13
# Censored weeks that separate two charting runs when labelling data.
label_min_gap = 4
# Memory-fit grid "SC_LO:SC_HI:N,SS_LO:SS_HI:N" (--grid).
grid = "1:50:50,0:100:41"
"#;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub outputs: PathBuf,
    pub model: ModelSection,
    pub seasonal: SeasonalSection,
    pub memory: MemorySection,
    pub cohort: CohortSection,
    pub analysis: AnalysisSection,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    pub a: f64,
    pub b: f64,
    pub s: f64,
    pub q12: f64,
    pub q22_exit: f64,
    pub p: f64,
    pub p_prime: f64,
    pub jump_mu: f64,
    pub jump_sigma: f64,
    pub jump_scale: f64,
    pub spike_max: f64,
    pub noise: String,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SeasonalSection {
    pub kind: String,
    pub first_week: u32,
    pub last_week: u32,
    pub factor: f64,
    pub c: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MemorySection {
    pub s_c: f64,
    pub s_s: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CohortSection {
    pub n_artists: usize,
    pub horizon_weeks: usize,
    pub n_ensembles: usize,
    pub nonstationary: bool,
    pub warmup_weeks: usize,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisSection {
    pub max_lag: usize,
    pub min_overlap: usize,
    pub interval_bin_weeks: u64,
    pub label_min_gap: usize,
    pub grid: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 2024,
            outputs: PathBuf::from("popsales-out"),
            model: ModelSection::default(),
            seasonal: SeasonalSection::default(),
            memory: MemorySection::default(),
            cohort: CohortSection::default(),
            analysis: AnalysisSection::default(),
        }
    }
}

impl Default for ModelSection {
    fn default() -> Self {
        let p = ModelParams::default();
        ModelSection {
            a: p.a,
            b: p.b,
            s: p.s,
            q12: p.q12,
            q22_exit: p.q22_exit,
            p: p.p,
            p_prime: p.p_prime,
            jump_mu: p.jump_mu,
            jump_sigma: p.jump_sigma,
            jump_scale: p.jump_scale,
            spike_max: p.spike_max,
            noise: p.noise_mode.to_string(),
        }
    }
}

impl Default for SeasonalSection {
    fn default() -> Self {
        SeasonalSection {
            kind: "autumn".into(),
            first_week: 36,
            last_week: 48,
            factor: 3.0,
            c: None,
        }
    }
}

impl Default for MemorySection {
    fn default() -> Self {
        let m = MemoryParams::default();
        MemorySection { s_c: m.s_c, s_s: m.s_s }
    }
}

impl Default for CohortSection {
    fn default() -> Self {
        CohortSection {
            n_artists: 30,
            horizon_weeks: 520,
            n_ensembles: 100,
            nonstationary: true,
            warmup_weeks: 520,
        }
    }
}

impl Default for AnalysisSection {
    fn default() -> Self {
        AnalysisSection {
            max_lag: 200,
            min_overlap: 52,
            interval_bin_weeks: 13,
            label_min_gap: 4,
            grid: "1:50:50,0:100:41".into(),
        }
    }
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(RunConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| UsageError(format!("config {}: {e}", path.display())).into())
    }

    pub fn model_params(&self) -> Result<ModelParams> {
        let m = &self.model;
        let noise_mode: NoiseMode = m
            .noise
            .parse()
            .map_err(|e| UsageError(format!("config [model] noise: {e}")))?;
        let params = ModelParams {
            a: m.a,
            b: m.b,
            s: m.s,
            q12: m.q12,
            q22_exit: m.q22_exit,
            p: m.p,
            p_prime: m.p_prime,
            jump_mu: m.jump_mu,
            jump_sigma: m.jump_sigma,
            jump_scale: m.jump_scale,
            spike_max: m.spike_max,
            noise_mode,
        };
        params.validate().context("config [model]")?;
        Ok(params)
    }

    pub fn memory_params(&self) -> Result<MemoryParams> {
        let m = MemoryParams {
            s_c: self.memory.s_c,
            s_s: self.memory.s_s,
        };
        m.validate().context("config [memory]")?;
        Ok(m)
    }

    pub fn seasonal_profile(&self) -> Result<SeasonalProfile> {
        let s = &self.seasonal;
        let profile = match s.kind.as_str() {
            "uniform" => SeasonalProfile::uniform(),
            "autumn" => SeasonalProfile::autumn(),
            "elevated" => SeasonalProfile::elevated(s.first_week, s.last_week, s.factor)?,
            "custom" => {
                let c = s
                    .c
                    .clone()
                    .ok_or_else(|| UsageError("config [seasonal]: kind = \"custom\" needs `c`".into()))?;
                SeasonalProfile::new(c)?
            }
            other => {
                return Err(UsageError(format!(
                    "config [seasonal] kind: unknown profile `{other}` (uniform, autumn, elevated, custom)"
                ))
                .into())
            }
        };
        Ok(profile)
    }

    pub fn model_kind(&self) -> Result<ModelKind> {
        if !self.cohort.nonstationary {
            return Ok(ModelKind::Stationary);
        }
        Ok(ModelKind::NonStationary {
            profile: self.seasonal_profile().context("config [seasonal]")?,
            memory: self.memory_params()?,
            warmup_weeks: self.cohort.warmup_weeks,
        })
    }

    pub fn grid(&self) -> Result<MemoryGrid> {
        MemoryGrid::parse(&self.analysis.grid).context("memory-fit grid")
    }

    /// Checks every section, so a bad key fails before any work starts.
    pub fn validate(&self) -> Result<()> {
        self.model_params()?;
        self.memory_params()?;
        self.seasonal_profile().context("config [seasonal]")?;
        self.grid()?;
        if self.cohort.n_artists == 0 {
            return Err(UsageError("config [cohort] n_artists must be at least 1".into()).into());
        }
        if self.cohort.n_ensembles == 0 {
            return Err(UsageError("config [cohort] n_ensembles must be at least 1".into()).into());
        }
        if self.analysis.interval_bin_weeks == 0 {
            return Err(UsageError("config [analysis] interval_bin_weeks must be at least 1".into()).into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_matches_defaults() {
        let parsed: RunConfig = toml::from_str(TEMPLATE).unwrap();
        assert_eq!(parsed, RunConfig::default());
        parsed.validate().unwrap();
        assert_eq!(parsed.model_params().unwrap(), ModelParams::default());
    }

    #[test]
    fn partial_config_keeps_defaults() {
        let c: RunConfig = toml::from_str("seed = 9\n[cohort]\nn_artists = 3\n").unwrap();
        assert_eq!(c.seed, 9);
        assert_eq!(c.cohort.n_artists, 3);
        assert_eq!(c.cohort.horizon_weeks, 520);
    }

    #[test]
    fn unknown_keys_and_unstable_b_are_rejected() {
        assert!(toml::from_str::<RunConfig>("[model]\nbeta = 1.0\n").is_err());
        let c: RunConfig = toml::from_str("[model]\nb = 267.512\n").unwrap();
        let err = format!("{:#}", c.model_params().unwrap_err());
        assert!(err.contains("[model]") && err.contains("0 < b < 1") && err.contains("267.512"), "{err}");
    }
}
