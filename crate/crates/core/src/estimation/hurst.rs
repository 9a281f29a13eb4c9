//! Hurst exponent by rescaled range (R/S) or order-1 detrended fluctuation
//! analysis, both as log-log slopes over dyadic window sizes.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HurstMethod {
    RescaledRange,
    Dfa,
}

impl std::str::FromStr for HurstMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rs" | "rescaled_range" | "rescaled-range" => Ok(HurstMethod::RescaledRange),
            "dfa" => Ok(HurstMethod::Dfa),
            other => Err(format!("unknown Hurst method `{other}`")),
        }
    }
}

/// Window range; `max_window = None` means `n / 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HurstOptions {
    pub min_window: usize,
    pub max_window: Option<usize>,
}

impl Default for HurstOptions {
    fn default() -> Self {
        HurstOptions {
            min_window: 8,
            max_window: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HurstEstimate {
    pub h: f64,
    pub method: HurstMethod,
    pub min_window: usize,
    pub max_window: usize,
    /// `(window, statistic)` points entering the regression.
    pub points: Vec<(usize, f64)>,
}

const MIN_LEN: usize = 64;

pub fn estimate_hurst(series: &[f64], method: HurstMethod, opts: HurstOptions) -> Result<HurstEstimate> {
    let n = series.len();
    if n < MIN_LEN {
        return Err(Error::InsufficientData(format!(
            "Hurst estimation needs at least {MIN_LEN} observations, got {n}"
        )));
    }
    if series.iter().all(|&x| x == series[0]) {
        return Err(Error::ZeroVariance("Hurst exponent of a constant series".into()));
    }
    let max_window = opts.max_window.unwrap_or(n / 4).min(n);
    let min_window = opts.min_window.max(4);
    let windows: Vec<usize> = std::iter::successors(Some(min_window.next_power_of_two()), |w| Some(w * 2))
        .take_while(|&w| w <= max_window)
        .collect();

    let points: Vec<(usize, f64)> = windows
        .iter()
        .filter_map(|&w| {
            let stat = match method {
                HurstMethod::RescaledRange => rescaled_range(series, w),
                HurstMethod::Dfa => dfa_fluctuation(series, w),
            };
            stat.filter(|v| *v > 0.0).map(|v| (w, v))
        })
        .collect();
    if points.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "window range {min_window}..={max_window} gives {} usable scales, need 2",
            points.len()
        )));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(w, v)| ((w as f64).ln(), v.ln())).collect();
    Ok(HurstEstimate {
        h: slope(&logs),
        method,
        min_window,
        max_window,
        points,
    })
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Mean R/S over non-overlapping blocks of length `w`.
fn rescaled_range(x: &[f64], w: usize) -> Option<f64> {
    let mut acc = 0.0;
    let mut used = 0;
    for block in x.chunks_exact(w) {
        let m = block.iter().sum::<f64>() / w as f64;
        let (mut cum, mut lo, mut hi, mut ss) = (0.0, 0.0f64, 0.0f64, 0.0);
        for &v in block {
            cum += v - m;
            lo = lo.min(cum);
            hi = hi.max(cum);
            ss += (v - m) * (v - m);
        }
        let sd = (ss / w as f64).sqrt();
        if sd > 0.0 {
            acc += (hi - lo) / sd;
            used += 1;
        }
    }
    (used > 0).then(|| acc / used as f64)
}

/// Root-mean-square residual of linear fits to the integrated profile.
fn dfa_fluctuation(x: &[f64], w: usize) -> Option<f64> {
    let m = x.iter().sum::<f64>() / x.len() as f64;
    let profile: Vec<f64> = x
        .iter()
        .scan(0.0, |acc, v| {
            *acc += v - m;
            Some(*acc)
        })
        .collect();
    // Abscissa 0..w centred once; the same for every segment.
    let tm = (w as f64 - 1.0) / 2.0;
    let stt: f64 = (0..w).map(|t| (t as f64 - tm).powi(2)).sum();
    let mut total = 0.0;
    let mut segments = 0;
    for seg in profile.chunks_exact(w) {
        let ym = seg.iter().sum::<f64>() / w as f64;
        let sty: f64 = seg.iter().enumerate().map(|(t, y)| (t as f64 - tm) * (y - ym)).sum();
        let b = sty / stt;
        total += seg
            .iter()
            .enumerate()
            .map(|(t, y)| (y - ym - b * (t as f64 - tm)).powi(2))
            .sum::<f64>();
        segments += 1;
    }
    (segments > 0).then(|| (total / (segments * w) as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    fn noise(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = RngStream::new(seed, 0);
        (0..n).map(|_| rng.normal()).collect()
    }

    #[test]
    fn errors() {
        assert!(estimate_hurst(&[1.0; 32], HurstMethod::Dfa, HurstOptions::default()).is_err());
        assert!(matches!(
            estimate_hurst(&[1.0; 128], HurstMethod::RescaledRange, HurstOptions::default()),
            Err(Error::ZeroVariance(_))
        ));
    }

    #[test]
    fn window_range_is_reported() {
        let e = estimate_hurst(&noise(1024, 1), HurstMethod::Dfa, HurstOptions::default()).unwrap();
        assert_eq!(e.min_window, 8);
        assert_eq!(e.max_window, 256);
        assert_eq!(e.points.first().unwrap().0, 8);
        assert_eq!(e.points.last().unwrap().0, 256);
    }

    fn cumsum(x: &[f64]) -> Vec<f64> {
        x.iter()
            .scan(0.0, |a, v| {
                *a += v;
                Some(*a)
            })
            .collect()
    }

    #[test]
    fn white_noise_is_half() {
        let x = noise(1 << 14, 40);
        for method in [HurstMethod::Dfa, HurstMethod::RescaledRange] {
            let h = estimate_hurst(&x, method, HurstOptions::default()).unwrap().h;
            assert!((h - 0.5).abs() <= 0.05, "{method:?}: {h}");
        }
    }

    #[test]
    fn integrated_noise_scaling() {
        // A random walk: R/S slope ~1, DFA-1 fluctuation slope ~1.5.
        let walk = cumsum(&noise(1 << 14, 41));
        let rs = estimate_hurst(&walk, HurstMethod::RescaledRange, HurstOptions::default()).unwrap();
        let dfa = estimate_hurst(&walk, HurstMethod::Dfa, HurstOptions::default()).unwrap();
        assert!((rs.h - 1.0).abs() <= 0.1, "R/S {}", rs.h);
        assert!((dfa.h - 1.5).abs() <= 0.1, "DFA {}", dfa.h);
    }

    #[test]
    fn method_names_parse() {
        assert_eq!("dfa".parse::<HurstMethod>().unwrap(), HurstMethod::Dfa);
        assert_eq!("rs".parse::<HurstMethod>().unwrap(), HurstMethod::RescaledRange);
    }
}
