use std::fmt;
use std::str::FromStr;

/// Market regime of one artist in one week.
///
/// `Popularity` is the elevated sub-state of a promotion episode and carries
/// the drift `a + q` in force while it lasts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegimeState {
    Base,
    Promotion,
    Popularity { elevated_drift: f64 },
}

/// Regime label without the attached drift, used for masks and file I/O.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegimeKind {
    Base,
    Promotion,
    Popularity,
}

impl RegimeState {
    pub fn kind(&self) -> RegimeKind {
        match self {
            RegimeState::Base => RegimeKind::Base,
            RegimeState::Promotion => RegimeKind::Promotion,
            RegimeState::Popularity { .. } => RegimeKind::Popularity,
        }
    }

    /// Promotion or its popularity sub-state.
    pub fn in_promotion(&self) -> bool {
        self.kind().in_promotion()
    }

    /// Drift in force this week given the base drift `a`.
    pub fn drift(&self, a: f64) -> f64 {
        match *self {
            RegimeState::Popularity { elevated_drift } => elevated_drift,
            _ => a,
        }
    }
}

impl RegimeKind {
    pub fn in_promotion(self) -> bool {
        matches!(self, RegimeKind::Promotion | RegimeKind::Popularity)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RegimeKind::Base => "base",
            RegimeKind::Promotion => "promotion",
            RegimeKind::Popularity => "popularity",
        }
    }
}

impl fmt::Display for RegimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegimeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "base" | "1" => Ok(RegimeKind::Base),
            "promotion" | "2" => Ok(RegimeKind::Promotion),
            "popularity" | "2'" => Ok(RegimeKind::Popularity),
            other => Err(format!("unknown regime `{other}`")),
        }
    }
}
