//! Reproducible random streams.
//!
//! Every trajectory owns one [`RngStream`] keyed by `(seed, stream_id)`. The
//! generator is ChaCha8 with the stream id mapped onto ChaCha's stream
//! counter, so streams are independent and the draws of one trajectory never
//! depend on how many other trajectories exist or in what order they run.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RngStream {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform draw on `[0, 1)`, used for Bernoulli trials.
    pub fn unit(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// `true` with probability `p` (p clamped to [0, 1]).
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    /// Uniform draw on the open interval `(0, 1)`.
    pub fn open01(&mut self) -> f64 {
        self.rng.sample(Open01)
    }

    /// Standard normal draw.
    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform draw on the open interval `(lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> Result<f64> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidDistribution(format!(
                "uniform requires finite lo < hi, got ({lo}, {hi})"
            )));
        }
        Ok(lo + (hi - lo) * self.open01())
    }

    /// `exp(mu + sigma * Z)` with `Z` standard normal.
    pub fn lognormal(&mut self, mu: f64, sigma: f64) -> Result<f64> {
        if !(sigma > 0.0) || !sigma.is_finite() || !mu.is_finite() {
            return Err(Error::InvalidDistribution(format!(
                "lognormal requires finite mu and sigma > 0, got ({mu}, {sigma})"
            )));
        }
        Ok((mu + sigma * self.normal()).exp())
    }
}
