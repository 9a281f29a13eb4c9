//! Maximum likelihood for the weekly mean-reverting step
//! `X' | X ~ Normal(X + a - b X, v(X))` with `v = (s X)^2` (multiplicative)
//! or `v = s^2` (additive).
//!
//! Both likelihoods reduce to ordinary least squares: the multiplicative one
//! after dividing the step by `X`, so `(a, b)` come in closed form and `s^2`
//! is the mean squared standardized residual.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::params::NoiseMode;
use crate::regime::RegimeKind;
use crate::series::WeeklySeries;

const MIN_PAIRS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct MrEstimate {
    pub a: f64,
    pub b: f64,
    pub s: f64,
    pub log_likelihood: f64,
    /// Transitions that entered the likelihood.
    pub n_used: usize,
    pub excluded_censored: usize,
    pub excluded_regime: usize,
    /// Multiplicative mode only: transitions starting from a zero level.
    pub excluded_zero: usize,
}

/// Transitions `(x_t, x_{t+1})` admitted to the likelihood, with exclusion tallies.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct UsablePairs {
    pub pairs: Vec<(f64, f64)>,
    pub excluded_censored: usize,
    pub excluded_regime: usize,
    pub excluded_zero: usize,
}

/// Keeps transitions whose two weeks are uncensored and both labelled `target`.
pub fn usable_pairs(
    series: &WeeklySeries,
    regimes: &[RegimeKind],
    target: RegimeKind,
    mode: NoiseMode,
) -> Result<UsablePairs> {
    if regimes.len() != series.len() {
        return Err(Error::param(
            "regime_mask",
            format!("{} labels for a series of length {}", regimes.len(), series.len()),
        ));
    }
    let mut out = UsablePairs::default();
    for t in 0..series.len().saturating_sub(1) {
        if series.censored[t] || series.censored[t + 1] {
            out.excluded_censored += 1;
        } else if regimes[t] != target || regimes[t + 1] != target {
            out.excluded_regime += 1;
        } else if mode == NoiseMode::Multiplicative && series.values[t] <= 0.0 {
            out.excluded_zero += 1;
        } else {
            out.pairs.push((series.values[t], series.values[t + 1]));
        }
    }
    Ok(out)
}

/// Conditional Gaussian log-likelihood of the pairs at `(a, b, s)`.
pub fn mr_log_likelihood(pairs: &[(f64, f64)], a: f64, b: f64, s: f64, mode: NoiseMode) -> f64 {
    pairs
        .iter()
        .map(|&(x, y)| {
            let sd = match mode {
                NoiseMode::Multiplicative => s * x,
                NoiseMode::Additive => s,
            };
            let r = y - x - a + b * x;
            if sd == 0.0 {
                return if r == 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
            }
            -0.5 * (2.0 * PI).ln() - sd.ln() - 0.5 * (r / sd).powi(2)
        })
        .sum()
}

/// Estimates `(a, b, s)` from the transitions inside one regime.
pub fn estimate_mr_params(
    series: &WeeklySeries,
    regimes: &[RegimeKind],
    target: RegimeKind,
    mode: NoiseMode,
) -> Result<MrEstimate> {
    if !series.is_empty() && series.censored.iter().all(|&c| c) {
        return Err(Error::AllCensored(format!("series `{}`", series.artist_id)));
    }
    let data = usable_pairs(series, regimes, target, mode)?;
    let n = data.pairs.len();
    if n < MIN_PAIRS {
        return Err(Error::InsufficientData(format!(
            "series `{}` has {n} usable {target} transitions, need at least {MIN_PAIRS}",
            series.artist_id
        )));
    }

    // Regress response on one regressor with intercept.
    let (regressor, response): (Vec<f64>, Vec<f64>) = data
        .pairs
        .iter()
        .map(|&(x, y)| match mode {
            NoiseMode::Multiplicative => (1.0 / x, (y - x) / x),
            NoiseMode::Additive => (x, y - x),
        })
        .unzip();
    let nf = n as f64;
    let mx = regressor.iter().sum::<f64>() / nf;
    let my = response.iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (u, v) in regressor.iter().zip(&response) {
        sxx += (u - mx) * (u - mx);
        sxy += (u - mx) * (v - my);
    }
    if !(sxx > 1e-20 * nf * (mx * mx).max(f64::MIN_POSITIVE)) {
        return Err(Error::ZeroVariance(format!(
            "series `{}`: level does not vary over the {target} transitions, so (a, b) are not identifiable",
            series.artist_id
        )));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let (a, b) = match mode {
        NoiseMode::Multiplicative => (slope, -intercept),
        NoiseMode::Additive => (intercept, -slope),
    };
    let rss: f64 = regressor
        .iter()
        .zip(&response)
        .map(|(u, v)| (v - intercept - slope * u).powi(2))
        .sum();
    let s = (rss / nf).sqrt();
    let log_likelihood = mr_log_likelihood(&data.pairs, a, b, s, mode);
    Ok(MrEstimate {
        a,
        b,
        s,
        log_likelihood,
        n_used: n,
        excluded_censored: data.excluded_censored,
        excluded_regime: data.excluded_regime,
        excluded_zero: data.excluded_zero,
    })
}
