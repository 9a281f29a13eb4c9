//! Grid fit of the peak-memory law `peak_i = max(total_{i-1} / s_c + s_s Z, 0)`.
//!
//! For each grid cell the law predicts, per album pair, the mean `m_i` and
//! variance `v_i` of a zero-clamped normal. The score is
//!
//! ```text
//! J = mean (peak_i - m_i)^2 + (sqrt(mean (peak_i - m_i)^2) - sqrt(mean v_i))^2
//! ```
//!
//! The first term is the squared prediction error of the peaks; the second
//! asks the predicted spread to match the observed one, which is what pins
//! down `s_s`. Both terms are in squared sale units.

use std::f64::consts::{PI, SQRT_2};

use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::params::MemoryParams;

/// One album: its release peak and the total sale of its promotion episode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlbumRecord {
    pub peak: f64,
    pub total: f64,
}

/// Candidate values for `s_c` and `s_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct MemoryGrid {
    pub s_c: Vec<f64>,
    pub s_s: Vec<f64>,
}

impl Default for MemoryGrid {
    fn default() -> Self {
        MemoryGrid::linear((1.0, 50.0, 50), (0.0, 100.0, 41)).expect("static grid is valid")
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

impl MemoryGrid {
    /// Evenly spaced axes `(lo, hi, points)`.
    pub fn linear(s_c: (f64, f64, usize), s_s: (f64, f64, usize)) -> Result<Self> {
        let grid = MemoryGrid {
            s_c: linspace(s_c.0, s_c.1, s_c.2),
            s_s: linspace(s_s.0, s_s.1, s_s.2),
        };
        grid.validate()?;
        Ok(grid)
    }

    /// Parses `"SC_LO:SC_HI:N,SS_LO:SS_HI:N"`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::param("grid", format!("expected SC_LO:SC_HI:N,SS_LO:SS_HI:N, got `{text}`"));
        let axis = |part: &str| -> Result<(f64, f64, usize)> {
            let f: Vec<&str> = part.trim().split(':').collect();
            if f.len() != 3 {
                return Err(bad());
            }
            Ok((
                f[0].parse().map_err(|_| bad())?,
                f[1].parse().map_err(|_| bad())?,
                f[2].parse().map_err(|_| bad())?,
            ))
        };
        let (sc, ss) = text.split_once(',').ok_or_else(bad)?;
        Self::linear(axis(sc)?, axis(ss)?)
    }

    fn validate(&self) -> Result<()> {
        if self.s_c.is_empty() || self.s_s.is_empty() {
            return Err(Error::param("grid", "grid axes must be non-empty"));
        }
        MemoryParams {
            s_c: self.s_c.iter().copied().fold(f64::INFINITY, f64::min),
            s_s: self.s_s.iter().copied().fold(f64::INFINITY, f64::min),
        }
        .validate()
    }

    pub fn cells(&self) -> usize {
        self.s_c.len() * self.s_s.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MemoryFit {
    pub params: MemoryParams,
    /// Score `J` at the selected cell.
    pub mse: f64,
    pub pairs: usize,
}

fn std_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Mean and variance of `max(mu + sigma Z, 0)`.
fn clamped_normal_moments(mu: f64, sigma: f64) -> (f64, f64) {
    if sigma == 0.0 {
        return (mu.max(0.0), 0.0);
    }
    let alpha = mu / sigma;
    let cdf = std_normal_cdf(alpha);
    let pdf = std_normal_pdf(alpha);
    let m1 = mu * cdf + sigma * pdf;
    let m2 = (mu * mu + sigma * sigma) * cdf + mu * sigma * pdf;
    (m1, (m2 - m1 * m1).max(0.0))
}

fn score(pairs: &[(f64, f64)], s_c: f64, s_s: f64) -> f64 {
    let n = pairs.len() as f64;
    let (mut sq, mut var) = (0.0, 0.0);
    for &(prev_total, peak) in pairs {
        let (m, v) = clamped_normal_moments(prev_total / s_c, s_s);
        sq += (peak - m).powi(2);
        var += v;
    }
    let (sq, var) = (sq / n, var / n);
    sq + (sq.sqrt() - var.sqrt()).powi(2)
}

/// Grid search over `(s_c, s_s)`. Ties go to the smaller `s_s`, then the
/// smaller `s_c`.
pub fn fit_memory_params(artists: &[Vec<AlbumRecord>], grid: &MemoryGrid) -> Result<MemoryFit> {
    grid.validate()?;
    let pairs: Vec<(f64, f64)> = artists
        .iter()
        .flat_map(|albums| albums.windows(2).map(|w| (w[0].total, w[1].peak)))
        .collect();
    if pairs.is_empty() {
        return Err(Error::InsufficientData(
            "peak-memory fit needs at least one artist with two or more albums".into(),
        ));
    }

    let mut s_s_axis = grid.s_s.clone();
    let mut s_c_axis = grid.s_c.clone();
    s_s_axis.sort_by(f64::total_cmp);
    s_c_axis.sort_by(f64::total_cmp);

    let mut best: Option<(MemoryParams, f64)> = None;
    for &s_s in &s_s_axis {
        for &s_c in &s_c_axis {
            let j = score(&pairs, s_c, s_s);
            if best.is_none_or(|(_, b)| j < b) {
                best = Some((MemoryParams { s_c, s_s }, j));
            }
        }
    }
    let (params, mse) = best.expect("grid is non-empty");
    Ok(MemoryFit {
        params,
        mse,
        pairs: pairs.len(),
    })
}
