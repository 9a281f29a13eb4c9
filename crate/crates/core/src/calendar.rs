//! Fixed 52-week calendar shared by ingestion, simulation and analytics.

/// Number of weeks in a calendar year. ISO week 53 is folded into week 52.
pub const WEEKS_PER_YEAR: usize = 52;

/// Anchors global week index 0 to a (year, week-of-year) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CalendarOrigin {
    pub year: i32,
    /// Week-of-year of global week 0, in 1..=52.
    pub week: u32,
}

impl Default for CalendarOrigin {
    fn default() -> Self {
        CalendarOrigin { year: 2003, week: 1 }
    }
}

impl CalendarOrigin {
    pub fn new(year: i32, week: u32) -> Self {
        assert!((1..=52).contains(&week), "week-of-year must be in 1..=52");
        CalendarOrigin { year, week }
    }

    /// Offset of global week 0 from the start of its year.
    pub fn offset(&self) -> i64 {
        i64::from(self.week) - 1
    }

    /// Week-of-year (1..=52) of a global week index.
    pub fn week_of_year(&self, global_week: i64) -> u32 {
        week_of_year(global_week, self)
    }

    /// Calendar year of a global week index.
    pub fn year_of(&self, global_week: i64) -> i32 {
        self.year + (global_week + self.offset()).div_euclid(52) as i32
    }

    /// Global week index of a (year, week-of-year) pair.
    pub fn global_week(&self, year: i32, week: u32) -> i64 {
        (i64::from(year) - i64::from(self.year)) * 52 + i64::from(week) - i64::from(self.week)
    }
}

/// `((global_week + offset) mod 52) + 1`.
pub fn week_of_year(global_week: i64, origin: &CalendarOrigin) -> u32 {
    ((global_week + origin.offset()).rem_euclid(52) + 1) as u32
}
