use crate::error::{Error, Result};

/// Pooled histogram of gaps between consecutive releases of the same artist.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalHistogram {
    pub gaps: Vec<u64>,
    pub bin_width: u64,
    /// `counts[k]` covers gaps in `[k * bin_width, (k + 1) * bin_width)`.
    pub counts: Vec<u64>,
    pub warnings: Vec<String>,
}

impl IntervalHistogram {
    pub fn bin_start(&self, k: usize) -> u64 {
        k as u64 * self.bin_width
    }

    /// Index of the most populated bin (first one on ties).
    pub fn modal_bin(&self) -> Option<usize> {
        let max = *self.counts.iter().max()?;
        if max == 0 {
            return None;
        }
        self.counts.iter().position(|&c| c == max)
    }

    pub fn mean_gap(&self) -> Option<f64> {
        if self.gaps.is_empty() {
            None
        } else {
            Some(self.gaps.iter().sum::<u64>() as f64 / self.gaps.len() as f64)
        }
    }
}

/// Histogram of inter-release gaps; `releases[i]` holds one artist's release weeks.
///
/// An input with no artist having two releases yields an empty histogram and a
/// warning; an empty input is an error.
pub fn release_intervals(releases: &[Vec<i64>], bin_width: u64) -> Result<IntervalHistogram> {
    if bin_width == 0 {
        return Err(Error::param("bin_width", "must be >= 1"));
    }
    if releases.is_empty() {
        return Err(Error::InsufficientData("no artists with releases".into()));
    }
    let mut gaps = Vec::new();
    for weeks in releases {
        let mut sorted = weeks.clone();
        sorted.sort_unstable();
        gaps.extend(sorted.windows(2).map(|w| (w[1] - w[0]) as u64));
    }
    let mut warnings = Vec::new();
    if gaps.is_empty() {
        warnings.push("no artist has two or more releases; interval histogram is empty".to_string());
    }
    let n_bins = gaps.iter().max().map_or(0, |&g| (g / bin_width) as usize + 1);
    let mut counts = vec![0u64; n_bins];
    for &g in &gaps {
        counts[(g / bin_width) as usize] += 1;
    }
    Ok(IntervalHistogram {
        gaps,
        bin_width,
        counts,
        warnings,
    })
}
