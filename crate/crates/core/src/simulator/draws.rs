//! Single-step kernels of the sales process.
//!
//! Each random kernel has a pure counterpart taking the standard normal draw
//! explicitly, so tests can force extreme draws.

use crate::error::{Error, Result};
use crate::params::{MemoryParams, ModelParams, NoiseMode};
use crate::rng::RngStream;

/// Euler step `max(0, x + drift - b x + noise)` for a given normal draw `z`.
pub fn euler_step(x: f64, drift: f64, params: &ModelParams, z: f64) -> f64 {
    let noise = match params.noise_mode {
        NoiseMode::Multiplicative => params.s * x * z,
        NoiseMode::Additive => params.s * z,
    };
    (x + drift - params.b * x + noise).max(0.0)
}

/// One week of the base mean-reverting walk with drift `a`.
pub fn step_base(x: f64, params: &ModelParams, rng: &mut RngStream) -> f64 {
    euler_step(x, params.a, params, rng.normal())
}

/// Log-normal release peak `Q` in k-units.
pub fn draw_release_peak(params: &ModelParams, rng: &mut RngStream) -> f64 {
    let z = rng.normal();
    params.jump_scale / 1000.0 * (params.jump_mu + params.jump_sigma * z).exp()
}

/// Album release jump `Q + q`: log-normal peak plus the first single's spike.
pub fn draw_release_jump(params: &ModelParams, rng: &mut RngStream) -> f64 {
    let peak = draw_release_peak(params, rng);
    peak + draw_single_spike(params, rng)
}

/// Single spike, uniform on `(0, spike_max)`.
pub fn draw_single_spike(params: &ModelParams, rng: &mut RngStream) -> f64 {
    params.spike_max * rng.open01()
}

/// `max(prev_total / s_c + s_s z, 0)`.
pub fn peak_from_memory(prev_total: f64, mem: &MemoryParams, z: f64) -> f64 {
    (prev_total / mem.s_c + mem.s_s * z).max(0.0)
}

/// Release peak of album `album_index` (1-based).
///
/// The first album draws the log-normal peak; later albums scale the total
/// sale of the previous album's promotion episode.
pub fn draw_peak_memory(
    album_index: u32,
    prev_total: f64,
    mem: &MemoryParams,
    params: &ModelParams,
    rng: &mut RngStream,
) -> Result<f64> {
    match album_index {
        0 => Err(Error::param("album_index", "album indices start at 1")),
        1 => Ok(draw_release_peak(params, rng)),
        _ => {
            if !(prev_total >= 0.0) {
                return Err(Error::param(
                    "prev_total",
                    format!("previous episode total {prev_total} must be >= 0"),
                ));
            }
            Ok(peak_from_memory(prev_total, mem, rng.normal()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(a: f64, b: f64) -> ModelParams {
        ModelParams {
            a,
            b,
            s: 0.0,
            ..ModelParams::default()
        }
    }

    #[test]
    fn multiplicative_noise_vanishes_at_zero() {
        let p = ModelParams {
            a: 1.16,
            b: 0.2,
            s: 0.25,
            ..ModelParams::default()
        };
        let mut rng = RngStream::new(5, 0);
        for _ in 0..100 {
            assert_eq!(step_base(0.0, &p, &mut rng), 1.16);
        }
    }

    #[test]
    fn fixed_point_and_deterministic_step() {
        let p = det(1.16, 0.2);
        let mut rng = RngStream::new(5, 0);
        let fixed = p.a / p.b;
        assert!((step_base(fixed, &p, &mut rng) - fixed).abs() < 1e-12);
        assert_eq!(step_base(4.0, &det(1.0, 0.5), &mut rng), 3.0);
    }

    #[test]
    fn floor_at_zero() {
        let p = ModelParams {
            s: 1.0,
            noise_mode: NoiseMode::Additive,
            ..ModelParams::default()
        };
        assert_eq!(euler_step(1.0, p.a, &p, -1e6), 0.0);
    }

    #[test]
    fn degenerate_release_jump() {
        let p = ModelParams {
            jump_mu: 1.2,
            jump_sigma: 1e-300,
            jump_scale: 1000.0,
            spike_max: 0.0,
            ..ModelParams::default()
        };
        let mut rng = RngStream::new(9, 0);
        assert_eq!(draw_release_jump(&p, &mut rng), 1.2f64.exp());
        let zero = ModelParams { jump_scale: 0.0, ..p };
        assert_eq!(draw_release_jump(&zero, &mut rng), 0.0);
    }

    #[test]
    fn release_jump_mean_matches_lognormal_moment() {
        let p = ModelParams::default();
        let mut rng = RngStream::new(21, 0);
        let n = 1_000_000;
        let (mut q_sum, mut total_sum) = (0.0, 0.0);
        for _ in 0..n {
            let q = draw_release_peak(&p, &mut rng);
            q_sum += q;
            total_sum += q + draw_single_spike(&p, &mut rng);
        }
        let analytic_q = (p.jump_mu + p.jump_sigma * p.jump_sigma / 2.0).exp();
        let q_mean = q_sum / n as f64;
        assert!((q_mean / analytic_q - 1.0).abs() < 0.02, "{q_mean} vs {analytic_q}");
        let total_mean = total_sum / n as f64;
        let analytic_total = analytic_q + 50.0;
        assert!((total_mean / analytic_total - 1.0).abs() < 0.02);
    }

    #[test]
    fn release_peak_median() {
        let p = ModelParams::default();
        let mut rng = RngStream::new(22, 0);
        let mut xs: Vec<f64> = (0..1_000_000).map(|_| draw_release_peak(&p, &mut rng)).collect();
        xs.sort_by(f64::total_cmp);
        let median = xs[xs.len() / 2];
        assert!((median / 1.2f64.exp() - 1.0).abs() < 0.02, "median {median}");
    }

    #[test]
    fn spike_moments() {
        let p = ModelParams::default();
        let mut rng = RngStream::new(33, 0);
        let n = 1_000_000;
        let xs: Vec<f64> = (0..n).map(|_| draw_single_spike(&p, &mut rng)).collect();
        assert!(xs.iter().all(|&x| x > 0.0 && x < 100.0));
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!((mean - 50.0).abs() < 0.3, "mean {mean}");
        assert!((var / (100.0f64.powi(2) / 12.0) - 1.0).abs() < 0.02, "var {var}");
    }

    #[test]
    fn peak_memory_cases() {
        let p = ModelParams::default();
        let mem = MemoryParams { s_c: 10.0, s_s: 0.0 };
        let mut rng = RngStream::new(1, 0);
        assert_eq!(draw_peak_memory(2, 500.0, &mem, &p, &mut rng).unwrap(), 50.0);
        assert_eq!(draw_peak_memory(2, 0.0, &mem, &p, &mut rng).unwrap(), 0.0);
        let noisy = MemoryParams { s_c: 10.0, s_s: 50.0 };
        assert_eq!(peak_from_memory(500.0, &noisy, -1e9), 0.0);
        assert!(draw_peak_memory(0, 1.0, &mem, &p, &mut rng).is_err());

        // First album falls back to the log-normal peak on the same draws.
        let mut a = RngStream::new(4, 2);
        let mut b = RngStream::new(4, 2);
        assert_eq!(
            draw_peak_memory(1, 0.0, &mem, &p, &mut a).unwrap(),
            draw_release_peak(&p, &mut b)
        );
    }
}
