use crate::calendar::WEEKS_PER_YEAR;
use crate::error::{Error, Result};
use crate::series::Panel;

/// Centred moving average with truncated (non-circular) edges.
///
/// Near the ends the window shrinks and the mean is taken over the values
/// actually covered.
pub fn moving_average(values: &[f64], frame: usize) -> Result<Vec<f64>> {
    if frame == 0 || frame.is_multiple_of(2) {
        return Err(Error::param("frame", format!("moving-average frame must be odd and >= 1, got {frame}")));
    }
    if frame > values.len() {
        return Err(Error::param(
            "frame",
            format!("frame {frame} exceeds series length {}", values.len()),
        ));
    }
    let half = frame / 2;
    let n = values.len();
    Ok((0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(n);
            values[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect())
}

/// Sales summed per week-of-year over all artists and years.
#[derive(Debug, Clone, PartialEq)]
pub struct WeekOfYearAggregate {
    /// Index 0 is week 1.
    pub raw: Vec<f64>,
    /// Frame-3 moving average of `raw`, not wrapped across the year boundary.
    pub smoothed: Vec<f64>,
    pub censored_weeks: usize,
}

pub fn aggregate_week_of_year(panel: &Panel) -> WeekOfYearAggregate {
    let mut raw = vec![0.0; WEEKS_PER_YEAR];
    for s in &panel.series {
        for (i, v) in s.values.iter().enumerate() {
            let w = panel.calendar_origin.week_of_year(s.start_week + i as i64);
            raw[w as usize - 1] += v;
        }
    }
    let smoothed = moving_average(&raw, 3).expect("52 bins fit a frame of 3");
    WeekOfYearAggregate {
        raw,
        smoothed,
        censored_weeks: panel.censored_count(),
    }
}

/// Week-of-year windows (inclusive, 1-based) for [`peak_to_base_ratio`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeakWindows {
    pub peak: (u32, u32),
    pub base: (u32, u32),
}

impl Default for PeakWindows {
    /// Christmas weeks 45..=52 against the spring-summer level of weeks 10..=40.
    fn default() -> Self {
        PeakWindows {
            peak: (45, 52),
            base: (10, 40),
        }
    }
}

/// `100 * max(smoothed over the peak window) / median(smoothed over the base window)`.
pub fn peak_to_base_ratio(agg: &WeekOfYearAggregate, windows: PeakWindows) -> Result<f64> {
    let slice = |(lo, hi): (u32, u32)| -> Result<&[f64]> {
        if lo < 1 || hi > 52 || lo > hi {
            return Err(Error::param("windows", format!("bad week window {lo}..={hi}")));
        }
        Ok(&agg.smoothed[lo as usize - 1..hi as usize])
    };
    let peak = slice(windows.peak)?.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut base: Vec<f64> = slice(windows.base)?.to_vec();
    base.sort_by(f64::total_cmp);
    let mid = base.len() / 2;
    let median = if base.len() % 2 == 1 {
        base[mid]
    } else {
        (base[mid - 1] + base[mid]) / 2.0
    };
    if !(median > 0.0) {
        return Err(Error::ZeroVariance("base-window median of the aggregate is zero".into()));
    }
    Ok(100.0 * peak / median)
}
