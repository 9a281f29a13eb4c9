use std::collections::BTreeMap;
use std::path::Path;

use super::table::{read_table_with_lines, write_table, Table};
use crate::analytics::{bartlett_band, IntervalHistogram, Spectrum, WeekOfYearAggregate};
use crate::calendar::CalendarOrigin;
use crate::clustering::{CorrelationMatrix, CorrelationTree};
use crate::error::{Error, Result};
use crate::regime::RegimeKind;
use crate::series::Panel;
use crate::simulator::{EventKind, SimulationOutput};

/// Nine significant digits, shortest form that reads back to the same value.
pub fn format_float(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{v:.8e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

fn week_cells(origin: &CalendarOrigin, g: i64) -> [String; 2] {
    [origin.year_of(g).to_string(), origin.week_of_year(g).to_string()]
}

/// `artist_id,year,week,sales_k,censored`, sorted by artist then week.
pub fn export_panel(panel: &Panel, path: impl AsRef<Path>) -> Result<()> {
    let mut t = Table::new(["artist_id", "year", "week", "sales_k", "censored"]);
    let mut order: Vec<_> = panel.series.iter().collect();
    order.sort_by(|a, b| a.artist_id.cmp(&b.artist_id));
    for s in order {
        for (i, (&v, &c)) in s.values.iter().zip(&s.censored).enumerate() {
            let [y, w] = week_cells(&panel.calendar_origin, s.start_week + i as i64);
            t.push(vec![s.artist_id.clone(), y, w, format_float(v), u8::from(c).to_string()]);
        }
    }
    write_table(path, &t)
}

/// `artist_id,year,week,regime` for `(artist, start_week, labels)` triples.
pub fn export_regimes<'a>(
    labels: impl IntoIterator<Item = (&'a str, i64, &'a [RegimeKind])>,
    origin: &CalendarOrigin,
    path: impl AsRef<Path>,
) -> Result<()> {
    let mut order: Vec<_> = labels.into_iter().collect();
    order.sort_by(|a, b| a.0.cmp(b.0));
    let mut t = Table::new(["artist_id", "year", "week", "regime"]);
    for (artist, start, kinds) in order {
        for (i, k) in kinds.iter().enumerate() {
            let [y, w] = week_cells(origin, start + i as i64);
            t.push(vec![artist.to_owned(), y, w, k.as_str().to_owned()]);
        }
    }
    write_table(path, &t)
}

/// Reads a regime file written by [`export_regimes`] onto `origin`'s
/// calendar. Each artist's weeks must be contiguous.
pub fn read_regimes(path: impl AsRef<Path>, origin: &CalendarOrigin) -> Result<BTreeMap<String, (i64, Vec<RegimeKind>)>> {
    let path = path.as_ref();
    let (t, lines) = read_table_with_lines(path)?;
    if t.header != ["artist_id", "year", "week", "regime"] {
        return Err(Error::Schema {
            path: path.to_path_buf(),
            reason: format!("expected header `artist_id,year,week,regime`, found `{}`", t.header.join(",")),
        });
    }
    let bad = |line: u64, reason: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut rows: BTreeMap<String, BTreeMap<i64, RegimeKind>> = BTreeMap::new();
    for (cells, &line) in t.rows.iter().zip(&lines) {
        let year: i32 = cells[1].parse().map_err(|_| bad(line, format!("invalid year `{}`", cells[1])))?;
        let week: u32 = cells[2].parse().map_err(|_| bad(line, format!("invalid week `{}`", cells[2])))?;
        if !(1..=52).contains(&week) {
            return Err(bad(line, format!("week {week} outside 1..=52")));
        }
        let kind: RegimeKind = cells[3].parse().map_err(|_| bad(line, format!("unknown regime `{}`", cells[3])))?;
        let g = origin.global_week(year, week);
        if rows.entry(cells[0].clone()).or_default().insert(g, kind).is_some() {
            return Err(bad(line, format!("duplicate regime row for `{}`", cells[0])));
        }
    }
    let mut out = BTreeMap::new();
    for (artist, weeks) in rows {
        let start = *weeks.keys().next().expect("non-empty");
        let end = *weeks.keys().next_back().expect("non-empty");
        if (end - start + 1) as usize != weeks.len() {
            return Err(Error::Schema {
                path: path.to_path_buf(),
                reason: format!("regime labels for `{artist}` skip weeks"),
            });
        }
        out.insert(artist, (start, weeks.into_values().collect()));
    }
    Ok(out)
}

/// `artist_id,year,week,event,album_index,peak_k,success`; fields that do not
/// apply to an event kind are left empty.
pub fn export_events(outputs: &[SimulationOutput], origin: &CalendarOrigin, path: impl AsRef<Path>) -> Result<()> {
    let mut order: Vec<_> = outputs.iter().collect();
    order.sort_by(|a, b| a.series.artist_id.cmp(&b.series.artist_id));
    let mut t = Table::new(["artist_id", "year", "week", "event", "album_index", "peak_k", "success"]);
    for out in order {
        for e in &out.events {
            let [y, w] = week_cells(origin, out.series.start_week + e.week as i64);
            let (kind, album, peak, success) = match e.kind {
                EventKind::AlbumRelease {
                    album_index,
                    peak_value,
                } => ("album", album_index.to_string(), format_float(peak_value), String::new()),
                EventKind::SingleRelease { success } => {
                    ("single", String::new(), String::new(), u8::from(success).to_string())
                }
            };
            t.push(vec![out.series.artist_id.clone(), y, w, kind.into(), album, peak, success]);
        }
    }
    write_table(path, &t)
}

/// `frequency,period_weeks,power`.
pub fn export_spectrum(spectrum: &Spectrum, path: impl AsRef<Path>) -> Result<()> {
    let mut t = Table::new(["frequency", "period_weeks", "power"]);
    for (&f, &p) in spectrum.frequencies.iter().zip(&spectrum.power) {
        let period = if f > 0.0 { format_float(1.0 / f) } else { String::new() };
        t.push(vec![format_float(f), period, format_float(p)]);
    }
    write_table(path, &t)
}

/// `lag,acf,band`, the band being the two-sided 95% white-noise bound for a
/// series of length `n`.
pub fn export_acf(acf: &[f64], n: usize, path: impl AsRef<Path>) -> Result<()> {
    let band = format_float(bartlett_band(n));
    let mut t = Table::new(["lag", "acf", "band"]);
    for (k, &r) in acf.iter().enumerate() {
        t.push(vec![k.to_string(), format_float(r), band.clone()]);
    }
    write_table(path, &t)
}

/// `week,raw,smoothed`.
pub fn export_aggregate(agg: &WeekOfYearAggregate, path: impl AsRef<Path>) -> Result<()> {
    let mut t = Table::new(["week", "raw", "smoothed"]);
    for (i, (&r, &s)) in agg.raw.iter().zip(&agg.smoothed).enumerate() {
        t.push(vec![(i + 1).to_string(), format_float(r), format_float(s)]);
    }
    write_table(path, &t)
}

/// `bin_start,bin_end,count`, bins half-open in weeks.
pub fn export_histogram(hist: &IntervalHistogram, path: impl AsRef<Path>) -> Result<()> {
    let mut t = Table::new(["bin_start", "bin_end", "count"]);
    for (k, &c) in hist.counts.iter().enumerate() {
        let lo = hist.bin_start(k);
        t.push(vec![lo.to_string(), (lo + hist.bin_width).to_string(), c.to_string()]);
    }
    write_table(path, &t)
}

/// `artist_a,artist_b,rho,overlap` for every unordered pair; `rho` is empty
/// where the correlation is undefined.
pub fn export_correlation(cm: &CorrelationMatrix, path: impl AsRef<Path>) -> Result<()> {
    let mut t = Table::new(["artist_a", "artist_b", "rho", "overlap"]);
    for i in 0..cm.len() {
        for j in i + 1..cm.len() {
            t.push(vec![
                cm.labels[i].clone(),
                cm.labels[j].clone(),
                cm.rho[i][j].map(format_float).unwrap_or_default(),
                cm.overlap[i][j].to_string(),
            ]);
        }
    }
    write_table(path, &t)
}

/// One edge of a tree file.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeRow {
    pub node_a: String,
    pub node_b: String,
    pub distance: f64,
}

/// `node_a,node_b,distance`, one row per edge. Dendrogram clusters are
/// named `cluster_<k>` after the merge that formed them.
pub fn export_tree(tree: &CorrelationTree, path: impl AsRef<Path>) -> Result<()> {
    let mut t = Table::new(["node_a", "node_b", "distance"]);
    for e in &tree.edges {
        t.push(vec![tree.node_name(e.a), tree.node_name(e.b), format_float(e.distance)]);
    }
    write_table(path, &t)
}

pub fn read_tree(path: impl AsRef<Path>) -> Result<Vec<TreeRow>> {
    let path = path.as_ref();
    let (t, lines) = read_table_with_lines(path)?;
    if t.header != ["node_a", "node_b", "distance"] {
        return Err(Error::Schema {
            path: path.to_path_buf(),
            reason: format!("expected header `node_a,node_b,distance`, found `{}`", t.header.join(",")),
        });
    }
    t.rows
        .into_iter()
        .zip(lines)
        .map(|(cells, line)| {
            let distance = cells[2].parse().map_err(|_| Error::Parse {
                path: path.to_path_buf(),
                line,
                reason: format!("invalid distance `{}`", cells[2]),
            })?;
            let [a, b, _] = <[String; 3]>::try_from(cells).expect("three columns");
            Ok(TreeRow {
                node_a: a,
                node_b: b,
                distance,
            })
        })
        .collect()
}
