use std::collections::BTreeMap;
use std::path::Path;

use super::table::read_table_with_lines;
use crate::calendar::CalendarOrigin;
use crate::error::{Error, Result};
use crate::series::{Panel, WeeklySeries};

const CHART_HEADER: [&str; 4] = ["artist_id", "year", "week", "sales_units"];
const PANEL_HEADER: [&str; 5] = ["artist_id", "year", "week", "sales_k", "censored"];

/// What to do with rows labelled week 53.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Week53Policy {
    /// Parse error naming the row.
    #[default]
    Reject,
    /// Add the row's sales to week 52 of the same year and log a notice.
    MergeInto52,
}

/// Which rows of a chart file count as censored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThresholdRule {
    /// Only explicit zeros (and gaps) are censored.
    #[default]
    ExplicitZero,
    /// Rows below the optional `threshold` column are also censored and zeroed.
    BelowThreshold,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    /// Chart precision in copies; values off this grid are counted, not rejected.
    pub precision: u64,
    pub threshold_rule: ThresholdRule,
    pub week53: Week53Policy,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            precision: 100,
            threshold_rule: ThresholdRule::ExplicitZero,
            week53: Week53Policy::Reject,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParseReport {
    pub rows: usize,
    pub artists: usize,
    pub gap_weeks_filled: usize,
    pub explicit_zero_rows: usize,
    pub below_threshold_rows: usize,
    pub week53_merged: usize,
    /// Rows whose `sales_units` is not a multiple of the precision.
    pub off_precision_rows: usize,
    /// Sum of uncensored raw copies; `None` for exported-panel input.
    pub total_units: Option<u64>,
}

#[derive(Debug, Clone, Copy)]
enum Sales {
    Units(u64),
    K(f64, bool),
}

struct Row {
    year: i32,
    week: u32,
    sales: Sales,
    line: u64,
    from_week53: bool,
    merged: bool,
}

fn field<T: std::str::FromStr>(path: &Path, line: u64, name: &str, raw: &str) -> Result<T> {
    raw.parse().map_err(|_| Error::Parse {
        path: path.to_path_buf(),
        line,
        reason: format!("invalid {name} `{raw}`"),
    })
}

/// Reads a chart file (or an exported panel) into a [`Panel`].
///
/// Rows are grouped per artist. Every week inside an artist's first..last
/// span that has no row is filled with a censored zero, explicit zero rows
/// are censored too, and raw copies are divided by 1000. Global week 0 is
/// week 1 of the earliest year in the file.
pub fn parse_chart_file(path: impl AsRef<Path>, opts: &ParseOptions) -> Result<(Panel, ParseReport)> {
    let path = path.as_ref();
    if opts.precision == 0 {
        return Err(Error::param("precision", "must be at least 1"));
    }
    let (table, lines) = read_table_with_lines(path)?;
    let is_chart = table.header.len() >= 4
        && table.header[..4] == CHART_HEADER
        && (table.header.len() == 4 || (table.header.len() == 5 && table.header[4] == "threshold"));
    let is_panel = table.header == PANEL_HEADER;
    if !is_chart && !is_panel {
        return Err(Error::Schema {
            path: path.to_path_buf(),
            reason: format!(
                "header `{}` matches neither `{}[,threshold]` nor `{}`",
                table.header.join(","),
                CHART_HEADER.join(","),
                PANEL_HEADER.join(",")
            ),
        });
    }

    let mut report = ParseReport {
        rows: table.rows.len(),
        total_units: is_chart.then_some(0),
        ..ParseReport::default()
    };
    let mut by_artist: BTreeMap<String, BTreeMap<(i32, u32), Row>> = BTreeMap::new();
    for (cells, &line) in table.rows.iter().zip(&lines) {
        let artist = cells[0].clone();
        if artist.is_empty() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line,
                reason: "empty artist_id".into(),
            });
        }
        let year: i32 = field(path, line, "year", &cells[1])?;
        let mut week: u32 = field(path, line, "week", &cells[2])?;
        let from_week53 = week == 53;
        if week == 53 && opts.week53 == Week53Policy::MergeInto52 {
            log::info!("{}:{line}: week 53 of {year} merged into week 52", path.display());
            report.week53_merged += 1;
            week = 52;
        } else if !(1..=52).contains(&week) {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line,
                reason: format!("week {week} outside 1..=52"),
            });
        }
        let sales = if is_chart {
            let mut units: u64 = field(path, line, "sales_units", &cells[3])?;
            if !units.is_multiple_of(opts.precision) {
                report.off_precision_rows += 1;
                log::warn!(
                    "{}:{line}: sales_units {units} is not a multiple of {}",
                    path.display(),
                    opts.precision
                );
            }
            if cells.len() == 5 && opts.threshold_rule == ThresholdRule::BelowThreshold && !cells[4].is_empty() {
                let threshold: u64 = field(path, line, "threshold", &cells[4])?;
                if units > 0 && units < threshold {
                    report.below_threshold_rows += 1;
                    units = 0;
                }
            }
            Sales::Units(units)
        } else {
            let v: f64 = field(path, line, "sales_k", &cells[3])?;
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line,
                    reason: format!("sales_k must be a finite non-negative number, got {v}"),
                });
            }
            let censored = match cells[4].as_str() {
                "0" | "false" => false,
                "1" | "true" => true,
                other => {
                    return Err(Error::Parse {
                        path: path.to_path_buf(),
                        line,
                        reason: format!("invalid censored flag `{other}`"),
                    })
                }
            };
            if censored && v != 0.0 {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line,
                    reason: format!("censored week carries sales {v}"),
                });
            }
            Sales::K(v, censored)
        };

        let rows = by_artist.entry(artist.clone()).or_default();
        match rows.get_mut(&(year, week)) {
            Some(prev) if prev.from_week53 != from_week53 && !prev.merged => {
                prev.merged = true;
                prev.sales = match (prev.sales, sales) {
                    (Sales::Units(a), Sales::Units(b)) => Sales::Units(a + b),
                    (Sales::K(a, _), Sales::K(b, _)) => Sales::K(a + b, a + b == 0.0),
                    _ => unreachable!("one schema per file"),
                };
            }
            Some(prev) => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line,
                    reason: format!(
                        "duplicate row for artist `{artist}`, year {year}, week {week} (first seen on line {})",
                        prev.line
                    ),
                })
            }
            None => {
                rows.insert(
                    (year, week),
                    Row {
                        year,
                        week,
                        sales,
                        line,
                        from_week53,
                        merged: false,
                    },
                );
            }
        }
    }

    let first_year = by_artist.values().flat_map(|r| r.keys().map(|k| k.0)).min();
    let origin = first_year.map_or_else(CalendarOrigin::default, |y| CalendarOrigin::new(y, 1));
    let mut series = Vec::with_capacity(by_artist.len());
    for (artist, rows) in by_artist {
        let first = rows.values().next().expect("artists have rows");
        let start = origin.global_week(first.year, first.week);
        let last = rows.values().next_back().expect("artists have rows");
        let len = (origin.global_week(last.year, last.week) - start + 1) as usize;
        let mut values = vec![0.0; len];
        let mut censored = vec![true; len];
        report.gap_weeks_filled += len - rows.len();
        for row in rows.values() {
            let i = (origin.global_week(row.year, row.week) - start) as usize;
            let (v, c) = match row.sales {
                Sales::Units(u) => {
                    if u > 0 {
                        *report.total_units.as_mut().expect("chart input") += u;
                    }
                    (u as f64 / 1000.0, u == 0)
                }
                Sales::K(v, c) => (v, c),
            };
            if c {
                report.explicit_zero_rows += 1;
            }
            values[i] = v;
            censored[i] = c;
        }
        series.push(WeeklySeries::new(artist, start, values, censored)?);
    }
    report.artists = series.len();
    Ok((Panel::new(series, origin), report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(content: &str) -> (tempfile::TempDir, std::path::PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("chart.csv");
        std::fs::write(&p, content).unwrap();
        (dir, p)
    }

    #[test]
    fn consecutive_weeks() {
        let (_d, p) = write("artist_id,year,week,sales_units\nA,2003,10,5000\nA,2003,11,3200\n");
        let (panel, report) = parse_chart_file(&p, &ParseOptions::default()).unwrap();
        assert_eq!(panel.series.len(), 1);
        let s = &panel.series[0];
        assert_eq!(s.values, vec![5.0, 3.2]);
        assert_eq!(s.censored_count(), 0);
        assert_eq!(s.start_week, 9);
        assert_eq!(panel.calendar_origin, CalendarOrigin::new(2003, 1));
        assert_eq!(report.total_units, Some(8200));
    }

    #[test]
    fn gap_and_zero_are_censored() {
        let (_d, p) = write("artist_id,year,week,sales_units\nA,2003,51,100\nA,2004,1,0\nA,2004,2,700\nA,2003,52,0\nB,2004,1,200\n");
        let (panel, report) = parse_chart_file(&p, &ParseOptions::default()).unwrap();
        let a = panel.get("A").unwrap();
        assert_eq!(a.values, vec![0.1, 0.0, 0.0, 0.7]);
        assert_eq!(a.censored, vec![false, true, true, false]);
        let b = panel.get("B").unwrap();
        assert_eq!(b.start_week, 52);
        assert_eq!(report.explicit_zero_rows, 2);

        let (_d, p) = write("artist_id,year,week,sales_units\nA,2003,1,100\nA,2003,4,100\n");
        let (panel, report) = parse_chart_file(&p, &ParseOptions::default()).unwrap();
        assert_eq!(panel.series[0].censored, vec![false, true, true, false]);
        assert_eq!(report.gap_weeks_filled, 2);
    }

    #[test]
    fn week_53() {
        let text = "artist_id,year,week,sales_units\nA,2004,52,1000\nA,2004,53,500\nA,2005,1,300\n";
        let (_d, p) = write(text);
        let err = parse_chart_file(&p, &ParseOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(err.to_string().contains("week 53"));

        let opts = ParseOptions {
            week53: Week53Policy::MergeInto52,
            ..ParseOptions::default()
        };
        let (panel, report) = parse_chart_file(&p, &opts).unwrap();
        assert_eq!(panel.series[0].values, vec![1.5, 0.3]);
        assert_eq!(report.week53_merged, 1);
        assert_eq!(report.total_units, Some(1800));
    }

    #[test]
    fn malformed_rows() {
        for (body, line) in [
            ("A,2003,1,100\nA,2003,1,200\n", 3),
            ("A,2003,0,100\n", 2),
            ("A,2003,1,-100\n", 2),
            ("A,2003,x,100\n", 2),
            ("A,2003,1,100\nB,2003\n", 3),
        ] {
            let (_d, p) = write(&format!("artist_id,year,week,sales_units\n{body}"));
            match parse_chart_file(&p, &ParseOptions::default()) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{body}"),
                other => panic!("{body}: {other:?}"),
            }
        }
    }

    #[test]
    fn schema_errors() {
        let (_d, p) = write("");
        assert!(matches!(parse_chart_file(&p, &ParseOptions::default()), Err(Error::Schema { .. })));
        let (_d, p) = write("artist,year,week,sales\n");
        assert!(matches!(parse_chart_file(&p, &ParseOptions::default()), Err(Error::Schema { .. })));
        let (_d, p) = write("artist_id,year,week,sales_units\n");
        let (panel, _) = parse_chart_file(&p, &ParseOptions::default()).unwrap();
        assert!(panel.is_empty());
    }

    #[test]
    fn non_utf8_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.csv");
        std::fs::write(&p, b"artist_id,year,week,sales_units\n\xff\xfe,2003,1,100\n").unwrap();
        let err = parse_chart_file(&p, &ParseOptions::default()).unwrap_err();
        assert!(err.to_string().contains("UTF-8"), "{err}");
    }

    #[test]
    fn precision_and_threshold() {
        let (_d, p) = write("artist_id,year,week,sales_units,threshold\nA,2003,1,150,1000\nA,2003,2,2000,1000\n");
        let (panel, report) = parse_chart_file(&p, &ParseOptions::default()).unwrap();
        assert_eq!(report.off_precision_rows, 1);
        assert_eq!(panel.series[0].censored, vec![false, false]);
        let opts = ParseOptions {
            threshold_rule: ThresholdRule::BelowThreshold,
            ..ParseOptions::default()
        };
        let (panel, report) = parse_chart_file(&p, &opts).unwrap();
        assert_eq!(panel.series[0].censored, vec![true, false]);
        assert_eq!(report.below_threshold_rows, 1);
        assert_eq!(report.total_units, Some(2000));
    }
}
