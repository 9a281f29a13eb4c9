use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::mean;
use crate::error::{Error, Result};

/// One-sided power spectrum on frequencies `k / n`, `k = 0..=n/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Cycles per week in `[0, 0.5]`, strictly increasing.
    pub frequencies: Vec<f64>,
    pub power: Vec<f64>,
}

impl Spectrum {
    /// Frequency of the largest power among nonzero frequencies.
    pub fn dominant_frequency(&self) -> Option<f64> {
        self.frequencies
            .iter()
            .zip(&self.power)
            .skip(1)
            .fold(None, |best: Option<(f64, f64)>, (&f, &p)| match best {
                Some((_, bp)) if bp >= p => best,
                _ => Some((f, p)),
            })
            .map(|(f, _)| f)
    }

    pub fn total_power(&self) -> f64 {
        self.power.iter().sum()
    }
}

/// Periodogram of the mean-removed series.
///
/// Interior bins are doubled to fold in their negative-frequency twins, so
/// the total power equals `n` times the biased sample variance.
pub fn periodogram(series: &[f64]) -> Result<Spectrum> {
    let n = series.len();
    if n < 8 {
        return Err(Error::InsufficientData(format!(
            "periodogram needs at least 8 observations, got {n}"
        )));
    }
    let m = mean(series);
    let mut buf: Vec<Complex<f64>> = series.iter().map(|&x| Complex::new(x - m, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let half = n / 2;
    let mut frequencies = Vec::with_capacity(half + 1);
    let mut power = Vec::with_capacity(half + 1);
    for (k, c) in buf.iter().take(half + 1).enumerate() {
        let mirrored = k != 0 && !(n.is_multiple_of(2) && k == half);
        let p = c.norm_sqr() / n as f64;
        frequencies.push(k as f64 / n as f64);
        power.push(if k == 0 { 0.0 } else if mirrored { 2.0 * p } else { p });
    }
    Ok(Spectrum { frequencies, power })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annual_sinusoid_peaks_at_one_over_52() {
        let xs: Vec<f64> = (0..520)
            .map(|t| (2.0 * std::f64::consts::PI * t as f64 / 52.0).sin())
            .collect();
        let s = periodogram(&xs).unwrap();
        assert_eq!(s.dominant_frequency(), Some(10.0 / 520.0));
    }

    #[test]
    fn constant_series_has_no_power() {
        let s = periodogram(&[3.0; 16]).unwrap();
        assert!(s.power.iter().all(|&p| p == 0.0));
    }

    #[test]
    fn odd_length_parseval() {
        let xs: Vec<f64> = (0..101).map(|t| ((t * 37) % 11) as f64).collect();
        let s = periodogram(&xs).unwrap();
        let m = mean(&xs);
        let target = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>();
        assert!((s.total_power() / target - 1.0).abs() < 1e-9);
        assert!(s.frequencies.windows(2).all(|w| w[0] < w[1]));
        assert!(*s.frequencies.last().unwrap() <= 0.5);
    }

    #[test]
    fn too_short() {
        assert!(periodogram(&[1.0; 7]).is_err());
    }
}
