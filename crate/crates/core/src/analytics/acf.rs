use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::mean;
use crate::error::{Error, Result};

/// Sample autocorrelation `r(0..=max_lag)` with the biased normalisation
/// `r(k) = sum_t (x_t - m)(x_{t+k} - m) / sum_t (x_t - m)^2`.
///
/// Computed through a zero-padded FFT, so long lag ranges stay cheap.
pub fn acf(series: &[f64], max_lag: usize) -> Result<Vec<f64>> {
    let n = series.len();
    if max_lag >= n {
        return Err(Error::InsufficientData(format!(
            "acf needs more than max_lag = {max_lag} observations, got {n}"
        )));
    }
    let m = mean(series);
    let centered: Vec<f64> = series.iter().map(|x| x - m).collect();
    let denom: f64 = centered.iter().map(|d| d * d).sum();
    if !(denom > 0.0) {
        return Err(Error::ZeroVariance("acf of a constant series".into()));
    }

    let size = (2 * n).next_power_of_two();
    let mut buf: Vec<Complex<f64>> = centered
        .iter()
        .map(|&d| Complex::new(d, 0.0))
        .chain(std::iter::repeat(Complex::new(0.0, 0.0)))
        .take(size)
        .collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(size).process(&mut buf);
    for c in buf.iter_mut() {
        *c = Complex::new(c.norm_sqr(), 0.0);
    }
    planner.plan_fft_inverse(size).process(&mut buf);

    let scale = size as f64 * denom;
    Ok(buf[..=max_lag]
        .iter()
        .enumerate()
        .map(|(k, c)| if k == 0 { 1.0 } else { (c.re / scale).clamp(-1.0, 1.0) })
        .collect())
}

/// Half-width `2 / sqrt(n)` of the white-noise band.
pub fn bartlett_band(n: usize) -> f64 {
    2.0 / (n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    #[test]
    fn alternating_series() {
        let r = acf(&[1.0, -1.0, 1.0, -1.0], 3).unwrap();
        assert_eq!(r[0], 1.0);
        assert!((r[1] + 0.75).abs() < 1e-15);
        assert!((r[2] - 0.5).abs() < 1e-15);
        assert!((r[3] + 0.25).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(acf(&[2.0; 10], 3), Err(Error::ZeroVariance(_))));
        assert!(acf(&[1.0, 2.0], 2).is_err());
    }

    #[test]
    fn white_noise_inside_band() {
        // The band holds ~95.4% of lags per series; pool 100 series so the
        // share is pinned to a few tenths of a percent.
        let n = 10_000;
        let band = bartlett_band(n);
        let mut inside = 0;
        for stream in 0..100 {
            let mut rng = RngStream::new(10, stream);
            let xs: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
            let r = acf(&xs, 100).unwrap();
            inside += r[1..].iter().filter(|v| v.abs() <= band).count();
        }
        assert!(inside as f64 / 10_000.0 >= 0.95, "{inside} of 10000 lags inside band");
    }
}
