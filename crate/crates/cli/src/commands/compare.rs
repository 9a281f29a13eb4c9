use anyhow::{Context, Result};
use popsales::analytics::aggregate_week_of_year;
use popsales::clustering::{correlation_distance, correlation_matrix, minimum_spanning_tree, CorrelationTree};
use popsales::ingestion::{export_tree, format_float, write_table, Table};
use popsales::simulator::{release_weeks, simulate_ensemble};
use popsales::{Execution, Panel};

use super::diagnostics::Diagnostics;
use crate::config::RunConfig;
use crate::data::{load, prepare_out};
use crate::report::{opt_float, Summary};
use crate::DataArgs;

struct Side {
    diag: Diagnostics,
    tree: CorrelationTree,
    artists: usize,
    weeks: usize,
    releases: usize,
}

fn tree(panel: &Panel, min_overlap: usize) -> popsales::Result<CorrelationTree> {
    let cm = correlation_matrix(panel, min_overlap, Execution::default())?;
    minimum_spanning_tree(&correlation_distance(&cm))
}

fn data_side(cfg: &RunConfig, args: &DataArgs) -> Result<Side> {
    let data = load(cfg, args)?;
    let releases = data.release_weeks();
    let total = data.panel.total_by_week();
    Ok(Side {
        diag: Diagnostics::new(
            &total,
            aggregate_week_of_year(&data.panel),
            &releases,
            cfg.analysis.interval_bin_weeks,
        ),
        tree: tree(&data.panel, cfg.analysis.min_overlap)?,
        artists: data.panel.series.len(),
        weeks: total.len(),
        releases: releases.iter().map(Vec::len).sum(),
    })
}

/// Aggregates are summed over ensemble members; the tree uses the first.
fn model_side(cfg: &RunConfig) -> Result<Side> {
    let params = cfg.model_params()?;
    let model = cfg.model_kind()?;
    let cohorts = simulate_ensemble(
        &params,
        &model,
        cfg.cohort.n_artists,
        cfg.cohort.horizon_weeks,
        cfg.seed,
        cfg.cohort.n_ensembles,
        Execution::default(),
    )?;
    let mut aggregate = aggregate_week_of_year(&cohorts[0].panel);
    let mut total = cohorts[0].panel.total_by_week();
    for c in &cohorts[1..] {
        let agg = aggregate_week_of_year(&c.panel);
        for w in 0..aggregate.raw.len() {
            aggregate.raw[w] += agg.raw[w];
            aggregate.smoothed[w] += agg.smoothed[w];
        }
        for (t, v) in c.panel.total_by_week().into_iter().enumerate() {
            total[t] += v;
        }
    }
    let releases: Vec<Vec<i64>> = cohorts
        .iter()
        .flat_map(|c| c.outputs.iter())
        .map(|o| release_weeks(o).into_iter().map(|w| w as i64).collect())
        .collect();
    Ok(Side {
        diag: Diagnostics::new(&total, aggregate, &releases, cfg.analysis.interval_bin_weeks),
        tree: tree(&cohorts[0].panel, cfg.analysis.min_overlap)?,
        artists: cfg.cohort.n_artists * cfg.cohort.n_ensembles,
        weeks: total.len(),
        releases: releases.iter().map(Vec::len).sum(),
    })
}

pub fn run(cfg: &RunConfig, args: &DataArgs) -> Result<()> {
    let data = data_side(cfg, args).context("data side")?;
    let model = model_side(cfg).context("model side")?;
    let out = &cfg.outputs;
    prepare_out(out)?;

    let mut agg = Table::new([
        "week", "data_raw", "data_smoothed", "data_percent_of_base", "model_raw", "model_smoothed",
        "model_percent_of_base",
    ]);
    let (dp, mp) = (data.diag.percent_of_base(), model.diag.percent_of_base());
    for w in 0..52 {
        let pct = |p: &Option<Vec<f64>>| opt_float(p.as_ref().map(|v| v[w]));
        agg.push(vec![
            (w + 1).to_string(),
            format_float(data.diag.aggregate.raw[w]),
            format_float(data.diag.aggregate.smoothed[w]),
            pct(&dp),
            format_float(model.diag.aggregate.raw[w]),
            format_float(model.diag.aggregate.smoothed[w]),
            pct(&mp),
        ]);
    }
    write_table(out.join("compare_aggregate.csv"), &agg)?;

    let mut hist = Table::new(["bin_start", "bin_end", "data_count", "data_share", "model_count", "model_share"]);
    let width = cfg.analysis.interval_bin_weeks;
    let counts = |s: &Side| s.diag.intervals.as_ref().map(|h| h.counts.clone()).unwrap_or_default();
    let (dc, mc) = (counts(&data), counts(&model));
    let share = |c: &[u64], k: usize| {
        let n: u64 = c.iter().sum();
        if n == 0 {
            String::new()
        } else {
            format_float(c.get(k).copied().unwrap_or(0) as f64 / n as f64)
        }
    };
    for k in 0..dc.len().max(mc.len()) {
        let lo = k as u64 * width;
        hist.push(vec![
            lo.to_string(),
            (lo + width).to_string(),
            dc.get(k).copied().unwrap_or(0).to_string(),
            share(&dc, k),
            mc.get(k).copied().unwrap_or(0).to_string(),
            share(&mc, k),
        ]);
    }
    write_table(out.join("compare_intervals.csv"), &hist)?;

    export_tree(&data.tree, out.join("data_mst.csv"))?;
    export_tree(&model.tree, out.join("model_mst.csv"))?;

    let mut t = Table::new(["statistic", "data", "model"]);
    let rows: [(&str, String, String); 7] = [
        ("artists", data.artists.to_string(), model.artists.to_string()),
        ("weeks", data.weeks.to_string(), model.weeks.to_string()),
        ("releases", data.releases.to_string(), model.releases.to_string()),
        (
            "peak_to_base_percent",
            opt_float(data.diag.peak_to_base.as_ref().ok().copied()),
            opt_float(model.diag.peak_to_base.as_ref().ok().copied()),
        ),
        ("dominant_period_weeks", opt_float(data.diag.dominant_period()), opt_float(model.diag.dominant_period())),
        ("mean_release_interval_weeks", opt_float(data.diag.mean_gap()), opt_float(model.diag.mean_gap())),
        ("mst_total_distance", format_float(data.tree.total_weight()), format_float(model.tree.total_weight())),
    ];
    let mut summary = Summary::new(format!(
        "compare: {} vs {} x {} model cohorts",
        args.data.display(),
        cfg.cohort.n_ensembles,
        cfg.cohort.n_artists
    ));
    for (name, d, m) in rows {
        summary.add(name, format!("data {d:<14} model {m}"));
        t.push(vec![name.into(), d, m]);
    }
    write_table(out.join("compare_summary.csv"), &t)?;
    summary.print();
    Ok(())
}
