use crate::error::{Error, Result};
use crate::regime::RegimeKind;

/// Per-week switching rate out of one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEstimate {
    pub value: f64,
    /// Observed switches.
    pub events: usize,
    /// Weeks spent in the state with an observed successor week.
    pub exposure: usize,
    /// No switch was observed; the zero rate is only a lower bound.
    pub low_confidence: bool,
}

impl RateEstimate {
    fn from_counts(events: usize, exposure: usize) -> Option<Self> {
        (exposure > 0).then(|| RateEstimate {
            value: events as f64 / exposure as f64,
            events,
            exposure,
            low_confidence: events == 0,
        })
    }

    /// Mean sojourn `1 / rate` in weeks.
    pub fn mean_sojourn(&self) -> f64 {
        1.0 / self.value
    }
}

/// Release rate `q12` and promotion exit rate `q22_exit`.
///
/// A state never visited has no estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionEstimate {
    pub q12: Option<RateEstimate>,
    pub q22_exit: Option<RateEstimate>,
}

/// Counts switches over consecutive weeks; Popularity counts as Promotion.
pub fn estimate_transition_probs(regimes: &[RegimeKind]) -> Result<TransitionEstimate> {
    let (mut base_weeks, mut releases, mut promo_weeks, mut exits) = (0, 0, 0, 0);
    for w in regimes.windows(2) {
        if w[0].in_promotion() {
            promo_weeks += 1;
            exits += usize::from(w[1] == RegimeKind::Base);
        } else {
            base_weeks += 1;
            releases += usize::from(w[1].in_promotion());
        }
    }
    let est = TransitionEstimate {
        q12: RateEstimate::from_counts(releases, base_weeks),
        q22_exit: RateEstimate::from_counts(exits, promo_weeks),
    };
    if est.q12.is_none() && est.q22_exit.is_none() {
        return Err(Error::InsufficientData(format!(
            "regime path of length {} has no week-to-week transitions",
            regimes.len()
        )));
    }
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use RegimeKind::*;

    #[test]
    fn single_promotion_episode() {
        let e = estimate_transition_probs(&[Promotion, Promotion, Promotion, Promotion, Base]).unwrap();
        assert_eq!(e.q22_exit.unwrap().value, 0.25);
        assert!(e.q12.is_none());
    }

    #[test]
    fn all_base_is_flagged_zero() {
        let e = estimate_transition_probs(&[Base; 40]).unwrap();
        let q12 = e.q12.unwrap();
        assert_eq!(q12.value, 0.0);
        assert!(q12.low_confidence);
        assert!(e.q22_exit.is_none());
    }

    #[test]
    fn popularity_counts_as_promotion() {
        let e = estimate_transition_probs(&[Base, Promotion, Popularity, Promotion, Base, Base]).unwrap();
        assert_eq!(e.q12.unwrap().value, 0.5);
        assert_eq!(e.q22_exit.unwrap().value, 1.0 / 3.0);
    }

    #[test]
    fn too_short() {
        assert!(estimate_transition_probs(&[Base]).is_err());
        assert!(estimate_transition_probs(&[]).is_err());
    }
}
