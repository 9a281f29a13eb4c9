use super::{EventKind, SimulationOutput};

/// One promotion episode, from its release week to the week before Base resumes.
#[derive(Debug, Clone, PartialEq)]
pub struct Episode {
    pub album_index: u32,
    pub start: usize,
    /// Exclusive end; `None` if the episode was still running at the horizon.
    pub end: Option<usize>,
    /// Release peak as recorded on the release event.
    pub peak: f64,
    /// Sum of weekly sales over the episode.
    pub total: f64,
    pub singles: usize,
    pub popularity_entries: usize,
}

impl Episode {
    pub fn is_complete(&self) -> bool {
        self.end.is_some()
    }

    pub fn duration(&self) -> Option<usize> {
        self.end.map(|e| e - self.start)
    }
}

/// Splits a trajectory into its promotion episodes.
pub fn episodes(out: &SimulationOutput) -> Vec<Episode> {
    let mut eps: Vec<Episode> = Vec::new();
    let mut events = out.events.iter().peekable();
    let mut open: Option<Episode> = None;
    for (week, regime) in out.regimes.iter().enumerate() {
        while let Some(ev) = events.next_if(|e| e.week == week) {
            match ev.kind {
                EventKind::AlbumRelease {
                    album_index,
                    peak_value,
                } => {
                    if let Some(prev) = open.take() {
                        eps.push(prev);
                    }
                    open = Some(Episode {
                        album_index,
                        start: week,
                        end: None,
                        peak: peak_value,
                        total: 0.0,
                        singles: 0,
                        popularity_entries: 0,
                    });
                }
                EventKind::SingleRelease { success } => {
                    if let Some(ep) = open.as_mut() {
                        ep.singles += 1;
                        ep.popularity_entries += usize::from(success);
                    }
                }
            }
        }
        match open.as_mut() {
            Some(ep) if regime.in_promotion() => ep.total += out.series.values[week],
            Some(ep) if ep.end.is_none() => {
                ep.end = Some(week);
                eps.push(open.take().expect("episode is open"));
            }
            _ => {}
        }
    }
    eps.extend(open);
    eps
}

/// Trajectory offsets of album releases.
pub fn release_weeks(out: &SimulationOutput) -> Vec<usize> {
    out.events
        .iter()
        .filter(|e| matches!(e.kind, EventKind::AlbumRelease { .. }))
        .map(|e| e.week)
        .collect()
}

/// Regime and event statistics pooled over many trajectories.
///
/// Episode-level figures use completed episodes only, so an episode cut by
/// the horizon does not bias lengths or counts downward.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EnsembleSummary {
    pub trajectories: usize,
    pub releases: usize,
    pub release_intervals: usize,
    pub mean_release_interval: f64,
    pub completed_episodes: usize,
    pub mean_promotion_length: f64,
    pub singles_per_album: f64,
    /// Popularity entries per album (successful singles per album).
    pub popularity_per_album: f64,
    /// Share of albums that enter Popularity at least once.
    pub popularity_ever_fraction: f64,
}

impl EnsembleSummary {
    pub fn from_outputs<'a, I>(outputs: I) -> Self
    where
        I: IntoIterator<Item = &'a SimulationOutput>,
    {
        let mut s = EnsembleSummary::default();
        let (mut gap_sum, mut len_sum, mut singles, mut entries, mut ever) = (0.0, 0.0, 0, 0, 0);
        for out in outputs {
            s.trajectories += 1;
            let rel = release_weeks(out);
            s.releases += rel.len();
            for w in rel.windows(2) {
                gap_sum += (w[1] - w[0]) as f64;
                s.release_intervals += 1;
            }
            for ep in episodes(out).into_iter().filter(Episode::is_complete) {
                s.completed_episodes += 1;
                len_sum += ep.duration().unwrap_or(0) as f64;
                singles += ep.singles;
                entries += ep.popularity_entries;
                ever += usize::from(ep.popularity_entries > 0);
            }
        }
        let per = |x: f64, n: usize| if n == 0 { f64::NAN } else { x / n as f64 };
        s.mean_release_interval = per(gap_sum, s.release_intervals);
        s.mean_promotion_length = per(len_sum, s.completed_episodes);
        s.singles_per_album = per(singles as f64, s.completed_episodes);
        s.popularity_per_album = per(entries as f64, s.completed_episodes);
        s.popularity_ever_fraction = per(ever as f64, s.completed_episodes);
        s
    }
}
