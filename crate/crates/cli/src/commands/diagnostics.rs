use popsales::analytics::{
    peak_to_base_ratio, periodogram, release_intervals, IntervalHistogram, PeakWindows, Spectrum,
    WeekOfYearAggregate,
};
use popsales::Result;

/// Diagnostics shared by `analyze` and `compare`.
pub struct Diagnostics {
    pub aggregate: WeekOfYearAggregate,
    pub spectrum: Result<Spectrum>,
    pub peak_to_base: Result<f64>,
    pub intervals: Result<IntervalHistogram>,
}

impl Diagnostics {
    pub fn new(total: &[f64], aggregate: WeekOfYearAggregate, releases: &[Vec<i64>], bin_width: u64) -> Self {
        Diagnostics {
            spectrum: periodogram(total),
            peak_to_base: peak_to_base_ratio(&aggregate, PeakWindows::default()),
            intervals: release_intervals(releases, bin_width),
            aggregate,
        }
    }

    pub fn dominant_period(&self) -> Option<f64> {
        self.spectrum.as_ref().ok()?.dominant_frequency().map(|f| 1.0 / f)
    }

    pub fn mean_gap(&self) -> Option<f64> {
        self.intervals.as_ref().ok()?.mean_gap()
    }

    /// Smoothed aggregate as a percentage of the base-window median.
    pub fn percent_of_base(&self) -> Option<Vec<f64>> {
        let PeakWindows { base: (lo, hi), .. } = PeakWindows::default();
        let mut base: Vec<f64> = self.aggregate.smoothed[lo as usize - 1..hi as usize].to_vec();
        base.sort_by(f64::total_cmp);
        let median = base[base.len() / 2];
        (median > 0.0).then(|| self.aggregate.smoothed.iter().map(|v| 100.0 * v / median).collect())
    }
}
