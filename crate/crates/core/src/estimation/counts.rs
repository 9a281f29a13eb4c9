use statrs::function::factorial::{ln_binomial, ln_factorial};

use crate::error::{Error, Result};

/// Largest binomial size searched by [`fit_singles_count`].
pub const DEFAULT_BINOMIAL_CAP: u64 = 30;

/// Poisson and binomial fits to the number of singles per album.
#[derive(Debug, Clone, PartialEq)]
pub struct CountFit {
    pub poisson_lambda: f64,
    pub poisson_log_likelihood: f64,
    pub binomial_n: u64,
    pub binomial_theta: f64,
    pub binomial_log_likelihood: f64,
    pub albums: usize,
}

impl CountFit {
    pub fn binomial_preferred(&self) -> bool {
        self.binomial_log_likelihood > self.poisson_log_likelihood
    }
}

fn xlogy(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

/// Poisson MLE (`lambda` = sample mean) and binomial profile likelihood over
/// `n` in `max(count)..=n_cap` with `theta = mean / n`. Ties in `n` keep the
/// smaller size.
pub fn fit_singles_count(counts: &[u64], n_cap: u64) -> Result<CountFit> {
    if counts.is_empty() {
        return Err(Error::InsufficientData("no albums to fit".into()));
    }
    let albums = counts.len();
    let mean = counts.iter().sum::<u64>() as f64 / albums as f64;
    if !(mean > 0.0) {
        return Err(Error::ZeroVariance("every album has zero singles; Poisson rate is not positive".into()));
    }
    let poisson_log_likelihood: f64 = counts
        .iter()
        .map(|&k| xlogy(k as f64, mean) - mean - ln_factorial(k))
        .sum();

    let max = *counts.iter().max().expect("non-empty");
    let mut best: Option<(u64, f64, f64)> = None;
    for n in max..=n_cap.max(max) {
        let theta = mean / n as f64;
        let ll: f64 = counts
            .iter()
            .map(|&k| ln_binomial(n, k) + xlogy(k as f64, theta) + xlogy((n - k) as f64, 1.0 - theta))
            .sum();
        if best.is_none_or(|(_, _, b)| ll > b) {
            best = Some((n, theta, ll));
        }
    }
    let (binomial_n, binomial_theta, binomial_log_likelihood) = best.expect("range is non-empty");
    Ok(CountFit {
        poisson_lambda: mean,
        poisson_log_likelihood,
        binomial_n,
        binomial_theta,
        binomial_log_likelihood,
        albums,
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_distr::{Binomial, Distribution, Poisson};

    use super::*;

    #[test]
    fn constant_counts() {
        let f = fit_singles_count(&[3; 12], DEFAULT_BINOMIAL_CAP).unwrap();
        assert_eq!(f.poisson_lambda, 3.0);
        // A point mass is the binomial limit with theta = 1.
        assert_eq!(f.binomial_n, 3);
        assert_eq!(f.binomial_theta, 1.0);
    }

    #[test]
    fn poisson_sample() {
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let dist = Poisson::new(3.311).unwrap();
        let counts: Vec<u64> = (0..10_000).map(|_| dist.sample(&mut r) as u64).collect();
        let f = fit_singles_count(&counts, DEFAULT_BINOMIAL_CAP).unwrap();
        let mean = counts.iter().sum::<u64>() as f64 / counts.len() as f64;
        assert_eq!(f.poisson_lambda, mean);
        assert!((f.poisson_lambda / 3.311 - 1.0).abs() < 0.02);
    }

    #[test]
    fn binomial_sample_prefers_binomial() {
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let dist = Binomial::new(10, 0.33).unwrap();
        let counts: Vec<u64> = (0..10_000).map(|_| dist.sample(&mut r)).collect();
        let f = fit_singles_count(&counts, DEFAULT_BINOMIAL_CAP).unwrap();
        assert!(f.binomial_preferred(), "{f:?}");
        assert!((9..=12).contains(&f.binomial_n), "{f:?}");
    }

    #[test]
    fn errors() {
        assert!(fit_singles_count(&[], DEFAULT_BINOMIAL_CAP).is_err());
        assert!(fit_singles_count(&[0, 0], DEFAULT_BINOMIAL_CAP).is_err());
    }

    #[test]
    fn cap_below_max_still_fits() {
        let f = fit_singles_count(&[40, 38], 30).unwrap();
        assert_eq!(f.binomial_n, 40);
    }
}
