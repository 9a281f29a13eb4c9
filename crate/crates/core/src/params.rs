use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// How the diffusion term scales with the current level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseMode {
    /// `s * X * Z` (geometric).
    #[default]
    Multiplicative,
    /// `s * Z`.
    Additive,
}

impl fmt::Display for NoiseMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoiseMode::Multiplicative => "multiplicative",
            NoiseMode::Additive => "additive",
        })
    }
}

impl FromStr for NoiseMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "multiplicative" | "geometric" => Ok(NoiseMode::Multiplicative),
            "additive" => Ok(NoiseMode::Additive),
            other => Err(format!("unknown noise mode `{other}`")),
        }
    }
}

/// Constants of the stationary regime-switching sales model.
///
/// Levels are in k-units per week. `jump_scale` is in raw copies and is
/// divided by 1000 when a release peak is drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Drift constant; the base level is `a / b`.
    pub a: f64,
    /// Mean-reversion rate per week.
    pub b: f64,
    /// Volatility.
    pub s: f64,
    /// Weekly probability of leaving Base (album release).
    pub q12: f64,
    /// Weekly probability of leaving Promotion.
    pub q22_exit: f64,
    /// Weekly probability of a single while promoted.
    pub p: f64,
    /// Probability that a single lifts the album into Popularity.
    pub p_prime: f64,
    pub jump_mu: f64,
    pub jump_sigma: f64,
    pub jump_scale: f64,
    /// Single spikes are uniform on `(0, spike_max)` k-units.
    pub spike_max: f64,
    pub noise_mode: NoiseMode,
}

/// Mean promotion length in weeks (`p * E(N_singles)` with a 10-week single interval).
pub const MEAN_PROMOTION_WEEKS: f64 = 33.1;
/// Mean Base sojourn in weeks.
pub const MEAN_BASE_WEEKS: f64 = 97.9;
/// Published maximum-likelihood mean-reversion rate (unstable at dt = 1 week).
pub const PUBLISHED_B: f64 = 267.512;

impl Default for ModelParams {
    /// Calibrated defaults with the mean-reversion rate stabilised to 0.2.
    fn default() -> Self {
        ModelParams {
            a: 1.16,
            b: 0.2,
            s: 0.25014,
            q12: 1.0 / MEAN_BASE_WEEKS,
            q22_exit: 1.0 / MEAN_PROMOTION_WEEKS,
            p: 0.1,
            p_prime: 0.1007,
            jump_mu: 1.2,
            jump_sigma: 1.7,
            jump_scale: 1000.0,
            spike_max: 100.0,
            noise_mode: NoiseMode::Multiplicative,
        }
    }
}

impl ModelParams {
    /// The triple `a = 1.16, b = 267.512, s = 0.25014` exactly as estimated.
    ///
    /// This preset fails [`ModelParams::validate`]: with weekly steps the map
    /// `x -> (1 - b) x` is explosive once `b >= 1`.
    pub fn as_published() -> Self {
        ModelParams {
            b: PUBLISHED_B,
            ..ModelParams::default()
        }
    }

    /// Long-run base level `a / b`.
    pub fn base_level(&self) -> f64 {
        self.a / self.b
    }

    pub fn validate(&self) -> Result<()> {
        for (field, v) in [
            ("q12", self.q12),
            ("q22_exit", self.q22_exit),
            ("p", self.p),
            ("p_prime", self.p_prime),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::param(field, format!("probability {v} outside [0, 1]")));
            }
        }
        if !self.a.is_finite() {
            return Err(Error::param("a", "must be finite"));
        }
        if !(self.s >= 0.0) || !self.s.is_finite() {
            return Err(Error::param("s", format!("volatility {} must be >= 0", self.s)));
        }
        if !(self.jump_sigma > 0.0) || !self.jump_sigma.is_finite() {
            return Err(Error::param("jump_sigma", format!("{} must be > 0", self.jump_sigma)));
        }
        if !self.jump_mu.is_finite() {
            return Err(Error::param("jump_mu", "must be finite"));
        }
        if !(self.jump_scale >= 0.0) || !self.jump_scale.is_finite() {
            return Err(Error::param("jump_scale", format!("{} must be >= 0", self.jump_scale)));
        }
        if !(self.spike_max > 0.0) || !self.spike_max.is_finite() {
            return Err(Error::param("spike_max", format!("{} must be > 0", self.spike_max)));
        }
        if !(self.b > 0.0 && self.b < 1.0) {
            return Err(Error::param(
                "b",
                format!(
                    "mean-reversion rate {} violates 0 < b < 1 required for a stable weekly (dt = 1) \
                     Euler step; the published estimate b = {PUBLISHED_B} gives |1 - b| > 1 and diverges",
                    self.b
                ),
            ));
        }
        Ok(())
    }
}

/// Parameters of the peak-memory law for album releases after the first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemoryParams {
    /// Divides the previous episode's total sale.
    pub s_c: f64,
    /// Noise level in k-units.
    pub s_s: f64,
}

impl Default for MemoryParams {
    /// Placeholder values; meant to be replaced by a fit to observed peaks.
    fn default() -> Self {
        MemoryParams { s_c: 10.0, s_s: 50.0 }
    }
}

impl MemoryParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.s_c > 0.0) || !self.s_c.is_finite() {
            return Err(Error::param("s_c", format!("{} must be > 0", self.s_c)));
        }
        if !(self.s_s >= 0.0) || !self.s_s.is_finite() {
            return Err(Error::param("s_s", format!("{} must be >= 0", self.s_s)));
        }
        Ok(())
    }
}
