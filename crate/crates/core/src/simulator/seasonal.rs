use crate::calendar::WEEKS_PER_YEAR;
use crate::error::{Error, Result};

/// Week-of-year correction `c(t)` of the album-release hazard.
///
/// The hazard in week-of-year `w` is `q12 * c[w] / mean_c`, so the profile
/// only shapes the release calendar and leaves the yearly average unchanged.
#[derive(Debug, Clone, PartialEq)]
pub struct SeasonalProfile {
    c: Vec<f64>,
    mean_c: f64,
}

impl SeasonalProfile {
    pub fn new(c: Vec<f64>) -> Result<Self> {
        if c.len() != WEEKS_PER_YEAR {
            return Err(Error::param(
                "seasonal",
                format!("profile needs {WEEKS_PER_YEAR} entries, got {}", c.len()),
            ));
        }
        if let Some((i, v)) = c.iter().enumerate().find(|(_, v)| !(**v >= 0.0) || !v.is_finite()) {
            return Err(Error::param(
                "seasonal",
                format!("entry for week {} is {v}; entries must be finite and >= 0", i + 1),
            ));
        }
        let mean_c = c.iter().sum::<f64>() / WEEKS_PER_YEAR as f64;
        if !(mean_c > 0.0) {
            return Err(Error::param("seasonal", "profile has zero mean"));
        }
        Ok(SeasonalProfile { c, mean_c })
    }

    /// Flat profile: the non-stationary hazard equals `q12` every week.
    pub fn uniform() -> Self {
        SeasonalProfile {
            c: vec![1.0; WEEKS_PER_YEAR],
            mean_c: 1.0,
        }
    }

    /// `factor` times the base intensity over weeks `first..=last`, 1 elsewhere.
    pub fn elevated(first: u32, last: u32, factor: f64) -> Result<Self> {
        if !(1..=52).contains(&first) || !(first..=52).contains(&last) {
            return Err(Error::param("seasonal", format!("bad week window {first}..={last}")));
        }
        let c = (1..=52u32)
            .map(|w| if (first..=last).contains(&w) { factor } else { 1.0 })
            .collect();
        Self::new(c)
    }

    /// Autumn release season: weeks 36..=48 (September to November) at three
    /// times the intensity of the rest of the year.
    pub fn autumn() -> Self {
        Self::elevated(36, 48, 3.0).expect("static profile is valid")
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn mean_c(&self) -> f64 {
        self.mean_c
    }

    /// `c(w) / mean_c` for week-of-year `w` in 1..=52.
    pub fn ratio(&self, week_of_year: u32) -> f64 {
        self.c[week_of_year as usize - 1] / self.mean_c
    }

    pub fn max_ratio(&self) -> f64 {
        self.c.iter().copied().fold(0.0, f64::max) / self.mean_c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalisation_invariants() {
        for p in [
            SeasonalProfile::uniform(),
            SeasonalProfile::autumn(),
            SeasonalProfile::new((0..52).map(|i| (i % 7) as f64 + 0.5).collect()).unwrap(),
        ] {
            let sum: f64 = (1..=52).map(|w| p.ratio(w)).sum();
            assert!((sum - 52.0).abs() < 1e-9);
            let mean = p.c().iter().sum::<f64>() / 52.0;
            assert!((mean - p.mean_c()).abs() < 1e-12);
            assert!(p.mean_c() > 0.0);
        }
    }

    #[test]
    fn autumn_is_three_times_the_rest() {
        let p = SeasonalProfile::autumn();
        assert!((p.ratio(40) / p.ratio(10) - 3.0).abs() < 1e-12);
        assert!((p.max_ratio() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_profiles() {
        assert!(SeasonalProfile::new(vec![1.0; 51]).is_err());
        assert!(SeasonalProfile::new(vec![0.0; 52]).is_err());
        let mut c = vec![1.0; 52];
        c[3] = -1.0;
        assert!(SeasonalProfile::new(c).is_err());
    }
}
