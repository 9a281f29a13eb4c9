use crate::calendar::CalendarOrigin;
use crate::error::{Error, Result};

/// One artist's weekly sales in k-units (1 = 1000 copies) with a censoring mask.
///
/// A censored week is one where the true value fell under the chart threshold
/// and was recorded as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WeeklySeries {
    pub artist_id: String,
    pub start_week: i64,
    pub values: Vec<f64>,
    pub censored: Vec<bool>,
}

impl WeeklySeries {
    /// Builds a series, checking the non-negativity and censoring invariants.
    pub fn new(
        artist_id: impl Into<String>,
        start_week: i64,
        values: Vec<f64>,
        censored: Vec<bool>,
    ) -> Result<Self> {
        let s = WeeklySeries {
            artist_id: artist_id.into(),
            start_week,
            values,
            censored,
        };
        s.validate()?;
        Ok(s)
    }

    /// Fully observed series.
    pub fn uncensored(artist_id: impl Into<String>, start_week: i64, values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        Self::new(artist_id, start_week, values, vec![false; n])
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.len() != self.censored.len() {
            return Err(Error::Invariant(format!(
                "series `{}`: {} values but {} censoring flags",
                self.artist_id,
                self.values.len(),
                self.censored.len()
            )));
        }
        for (i, (&v, &c)) in self.values.iter().zip(&self.censored).enumerate() {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::Invariant(format!(
                    "series `{}`: value {v} at offset {i} is not a finite non-negative number",
                    self.artist_id
                )));
            }
            if c && v != 0.0 {
                return Err(Error::Invariant(format!(
                    "series `{}`: censored week at offset {i} carries value {v}",
                    self.artist_id
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Global week index one past the last observation.
    pub fn end_week(&self) -> i64 {
        self.start_week + self.values.len() as i64
    }

    pub fn censored_count(&self) -> usize {
        self.censored.iter().filter(|&&c| c).count()
    }

    /// Value at a global week, if the series covers it.
    pub fn at(&self, global_week: i64) -> Option<(f64, bool)> {
        let i = global_week - self.start_week;
        if i < 0 || i >= self.values.len() as i64 {
            return None;
        }
        let i = i as usize;
        Some((self.values[i], self.censored[i]))
    }
}

/// A set of series on one shared global calendar.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Panel {
    pub series: Vec<WeeklySeries>,
    pub calendar_origin: CalendarOrigin,
}

impl Panel {
    pub fn new(series: Vec<WeeklySeries>, calendar_origin: CalendarOrigin) -> Self {
        Panel {
            series,
            calendar_origin,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    /// First and one-past-last global week covered by any series.
    pub fn span(&self) -> Option<(i64, i64)> {
        let lo = self.series.iter().filter(|s| !s.is_empty()).map(|s| s.start_week).min()?;
        let hi = self.series.iter().filter(|s| !s.is_empty()).map(|s| s.end_week()).max()?;
        Some((lo, hi))
    }

    /// Sum over artists per global week across the panel span, censored weeks as zero.
    pub fn total_by_week(&self) -> Vec<f64> {
        let Some((lo, hi)) = self.span() else {
            return Vec::new();
        };
        let mut out = vec![0.0; (hi - lo) as usize];
        for s in &self.series {
            let base = (s.start_week - lo) as usize;
            for (i, v) in s.values.iter().enumerate() {
                out[base + i] += v;
            }
        }
        out
    }

    pub fn total_sales(&self) -> f64 {
        self.series.iter().flat_map(|s| s.values.iter()).sum()
    }

    pub fn censored_count(&self) -> usize {
        self.series.iter().map(WeeklySeries::censored_count).sum()
    }

    pub fn get(&self, artist_id: &str) -> Option<&WeeklySeries> {
        self.series.iter().find(|s| s.artist_id == artist_id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_broken_invariants() {
        assert!(WeeklySeries::new("a", 0, vec![1.0], vec![]).is_err());
        assert!(WeeklySeries::new("a", 0, vec![-1.0], vec![false]).is_err());
        assert!(WeeklySeries::new("a", 0, vec![2.0], vec![true]).is_err());
        assert!(WeeklySeries::new("a", 0, vec![0.0, 2.0], vec![true, false]).is_ok());
    }

    #[test]
    fn totals_align_on_calendar() {
        let a = WeeklySeries::uncensored("a", 0, vec![1.0, 2.0]).unwrap();
        let b = WeeklySeries::uncensored("b", 1, vec![10.0, 20.0]).unwrap();
        let p = Panel::new(vec![a, b], CalendarOrigin::default());
        assert_eq!(p.span(), Some((0, 3)));
        assert_eq!(p.total_by_week(), vec![1.0, 12.0, 20.0]);
        assert_eq!(p.total_sales(), 33.0);
    }
}
