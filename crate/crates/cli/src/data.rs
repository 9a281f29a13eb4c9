use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use popsales::estimation::label_from_presence;
use popsales::ingestion::{parse_chart_file, read_regimes, read_table, ParseOptions, ParseReport, ThresholdRule, Week53Policy};
use popsales::{Panel, RegimeKind, WeeklySeries};

use crate::config::RunConfig;
use crate::{DataArgs, UsageError};

pub struct Dataset {
    pub panel: Panel,
    pub report: ParseReport,
    /// One label vector per series, aligned with its weeks.
    pub labels: Vec<Vec<RegimeKind>>,
    pub labels_from_file: bool,
}

impl Dataset {
    /// Global release weeks per artist: weeks whose label enters promotion
    /// from Base.
    pub fn release_weeks(&self) -> Vec<Vec<i64>> {
        self.panel
            .series
            .iter()
            .zip(&self.labels)
            .map(|(s, l)| {
                (1..l.len())
                    .filter(|&t| l[t].in_promotion() && !l[t - 1].in_promotion())
                    .map(|t| s.start_week + t as i64)
                    .collect()
            })
            .collect()
    }
}

pub fn require_file(path: &Path) -> Result<()> {
    if !path.is_file() {
        return Err(UsageError(format!("input file {} does not exist", path.display())).into());
    }
    Ok(())
}

pub fn load(cfg: &RunConfig, args: &DataArgs) -> Result<Dataset> {
    require_file(&args.data)?;
    let opts = ParseOptions {
        precision: args.precision,
        threshold_rule: if args.apply_threshold {
            ThresholdRule::BelowThreshold
        } else {
            ThresholdRule::ExplicitZero
        },
        week53: if args.merge_week53 {
            Week53Policy::MergeInto52
        } else {
            Week53Policy::Reject
        },
    };
    let (panel, report) = parse_chart_file(&args.data, &opts)?;
    if panel.is_empty() {
        return Err(popsales::Error::InsufficientData(format!("{} holds no rows", args.data.display())).into());
    }
    let (labels, labels_from_file) = match &args.labels {
        Some(path) => (labels_from_file(&panel, path)?, true),
        None => (
            panel
                .series
                .iter()
                .map(|s| label_from_presence(s, cfg.analysis.label_min_gap))
                .collect(),
            false,
        ),
    };
    Ok(Dataset {
        panel,
        report,
        labels,
        labels_from_file,
    })
}

fn labels_from_file(panel: &Panel, path: &PathBuf) -> Result<Vec<Vec<RegimeKind>>> {
    require_file(path)?;
    let rows = read_regimes(path, &panel.calendar_origin)?;
    panel
        .series
        .iter()
        .map(|s| {
            let (start, kinds) = rows.get(&s.artist_id).ok_or_else(|| {
                popsales::Error::Schema {
                    path: path.clone(),
                    reason: format!("no regime labels for artist `{}`", s.artist_id),
                }
            })?;
            let offset = s.start_week - start;
            if offset < 0 || offset as usize + s.len() > kinds.len() {
                return Err(popsales::Error::Schema {
                    path: path.clone(),
                    reason: format!("regime labels for `{}` do not cover its sales weeks", s.artist_id),
                }
                .into());
            }
            Ok(kinds[offset as usize..offset as usize + s.len()].to_vec())
        })
        .collect()
}

/// Singles counted per album from an event log, in album order per artist.
pub fn singles_per_album(path: &Path) -> Result<Vec<u64>> {
    require_file(path)?;
    let t = read_table(path)?;
    let col = |name: &str| {
        t.column(name)
            .ok_or_else(|| anyhow!("event log {} has no `{name}` column", path.display()))
    };
    let (artist, event) = (col("artist_id")?, col("event")?);
    let mut per_artist: BTreeMap<&str, Vec<u64>> = BTreeMap::new();
    for row in &t.rows {
        let albums = per_artist.entry(row[artist].as_str()).or_default();
        match row[event].as_str() {
            "album" => albums.push(0),
            "single" => {
                if let Some(last) = albums.last_mut() {
                    *last += 1;
                }
            }
            other => {
                return Err(popsales::Error::Schema {
                    path: path.to_path_buf(),
                    reason: format!("unknown event `{other}`"),
                })
                .context("reading event log")
            }
        }
    }
    Ok(per_artist.into_values().flatten().collect())
}

pub fn all_censored(s: &WeeklySeries) -> bool {
    s.censored.iter().all(|&c| c)
}

pub fn prepare_out(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating output directory {}", dir.display()))
}

impl Dataset {
    /// Adds the ingestion counts to a summary.
    pub fn describe(&self, summary: &mut crate::report::Summary) {
        let r = &self.report;
        summary.add("input_rows", r.rows);
        summary.add("gap_weeks_filled", r.gap_weeks_filled);
        if r.explicit_zero_rows > 0 {
            summary.add("explicit_zero_rows", r.explicit_zero_rows);
        }
        if r.below_threshold_rows > 0 {
            summary.add("below_threshold_rows", r.below_threshold_rows);
        }
        if r.week53_merged > 0 {
            summary.add("week53_rows_merged", r.week53_merged);
        }
        if r.off_precision_rows > 0 {
            summary.note(format!("{} rows are not multiples of the reporting precision", r.off_precision_rows));
        }
        if !self.labels_from_file {
            summary.note("regimes labelled from chart presence");
        }
    }
}
