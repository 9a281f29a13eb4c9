use crate::analytics::moving_average;
use crate::calendar::WEEKS_PER_YEAR;
use crate::error::{Error, Result};
use crate::simulator::SeasonalProfile;

/// Release hazard by week-of-year: histogram of release weeks smoothed by a
/// frame-3 moving average (not wrapped at the year boundary).
///
/// `c` holds the smoothed counts and `mean_c` their mean, so `c / mean_c` is
/// the normalized correction.
pub fn estimate_seasonal_profile(release_weeks: &[u32]) -> Result<SeasonalProfile> {
    if release_weeks.is_empty() {
        return Err(Error::InsufficientData("no releases to build a seasonal profile".into()));
    }
    let mut hist = vec![0.0; WEEKS_PER_YEAR];
    for &w in release_weeks {
        if !(1..=52).contains(&w) {
            return Err(Error::param("release_weeks", format!("week-of-year {w} outside 1..=52")));
        }
        hist[w as usize - 1] += 1.0;
    }
    SeasonalProfile::new(moving_average(&hist, 3)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    #[test]
    fn single_week_spreads_to_neighbours() {
        let p = estimate_seasonal_profile(&[40; 30]).unwrap();
        for (i, &c) in p.c().iter().enumerate() {
            let expected = if (38..=40).contains(&i) { 10.0 } else { 0.0 };
            assert_eq!(c, expected, "week {}", i + 1);
        }
    }

    #[test]
    fn uniform_releases_are_flat() {
        let weeks: Vec<u32> = (0..52 * 20).map(|i| (i % 52) as u32 + 1).collect();
        let p = estimate_seasonal_profile(&weeks).unwrap();
        assert!((1..=52).all(|w| (p.ratio(w) - 1.0).abs() < 1e-12));
    }

    #[test]
    fn autumn_three_times_rest() {
        // Weight 3 on weeks 36..=48, sampled by inversion.
        let mut rng = RngStream::new(8, 0);
        let weights: Vec<f64> = (1..=52).map(|w| if (36..=48).contains(&w) { 3.0 } else { 1.0 }).collect();
        let total: f64 = weights.iter().sum();
        let weeks: Vec<u32> = (0..200_000)
            .map(|_| {
                let mut u = rng.unit() * total;
                for (i, w) in weights.iter().enumerate() {
                    if u < *w {
                        return i as u32 + 1;
                    }
                    u -= w;
                }
                52
            })
            .collect();
        let p = estimate_seasonal_profile(&weeks).unwrap();
        // Interior bins away from the window edges, where smoothing mixes levels.
        let autumn: f64 = (38..=46).map(|w| p.ratio(w)).sum::<f64>() / 9.0;
        let rest: f64 = (3..=33).map(|w| p.ratio(w)).sum::<f64>() / 31.0;
        assert!((autumn / rest - 3.0).abs() < 0.1, "ratio {}", autumn / rest);
    }

    #[test]
    fn invariants_and_errors() {
        let p = estimate_seasonal_profile(&[1, 1, 52, 17]).unwrap();
        let sum: f64 = (1..=52).map(|w| p.ratio(w)).sum();
        assert!((sum - 52.0).abs() < 1e-9);
        assert!(estimate_seasonal_profile(&[]).is_err());
        assert!(estimate_seasonal_profile(&[53]).is_err());
    }
}
