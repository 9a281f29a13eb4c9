//! Time-series diagnostics: autocorrelation, periodogram, release intervals
//! and week-of-year aggregation.
//!
//! Censored weeks enter every diagnostic as zeros; reports built from a
//! panel carry the number of censored weeks they absorbed.

mod acf;
mod intervals;
mod seasonal;
mod spectrum;

pub use acf::{acf, bartlett_band};
pub use intervals::{release_intervals, IntervalHistogram};
pub use seasonal::{
    aggregate_week_of_year, moving_average, peak_to_base_ratio, PeakWindows, WeekOfYearAggregate,
};
pub use spectrum::{periodogram, Spectrum};

pub(crate) fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}
