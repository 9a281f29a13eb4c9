//! Regime labels for empirical series.
//!
//! Chart data carry no regime information. This labeler is plumbing, not part
//! of the model: a charting run that follows at least `min_gap` censored
//! weeks (or opens the series) is read as a promotion episode starting with a
//! release, and the episode lasts until the last charting week before the
//! next such gap. Everything else is Base.

use crate::regime::RegimeKind;
use crate::series::WeeklySeries;
use crate::simulator::SimulationOutput;

use super::memory::AlbumRecord;

pub fn label_from_presence(series: &WeeklySeries, min_gap: usize) -> Vec<RegimeKind> {
    let n = series.len();
    let mut labels = vec![RegimeKind::Base; n];
    let mut t = 0;
    while t < n {
        if series.censored[t] {
            t += 1;
            continue;
        }
        // Extend the run across censored gaps shorter than `min_gap`.
        let start = t;
        let mut last_charting = t;
        let mut gap = 0;
        t += 1;
        while t < n {
            if series.censored[t] {
                gap += 1;
                if gap >= min_gap {
                    break;
                }
            } else {
                gap = 0;
                last_charting = t;
            }
            t += 1;
        }
        for l in &mut labels[start..=last_charting] {
            *l = RegimeKind::Promotion;
        }
        t = last_charting + 1;
    }
    labels
}

/// Per-album (release-week value, episode total) from a labelled series.
///
/// Episodes are maximal runs of promotion labels; the release peak is read as
/// the sales of the first week of the run.
pub fn album_records(series: &WeeklySeries, labels: &[RegimeKind]) -> Vec<AlbumRecord> {
    let mut out = Vec::new();
    let mut t = 0;
    let n = labels.len().min(series.len());
    while t < n {
        if !labels[t].in_promotion() {
            t += 1;
            continue;
        }
        let start = t;
        while t < n && labels[t].in_promotion() {
            t += 1;
        }
        out.push(AlbumRecord {
            peak: series.values[start],
            total: series.values[start..t].iter().sum(),
        });
    }
    out
}

impl SimulationOutput {
    pub fn regime_kinds(&self) -> Vec<RegimeKind> {
        self.regimes.iter().map(|r| r.kind()).collect()
    }
}
