use std::path::Path;

use anyhow::Result;
use popsales::estimation::{
    album_records, estimate_hurst, estimate_mr_params, estimate_seasonal_profile, estimate_transition_probs,
    fit_memory_params, fit_singles_count, HurstMethod, HurstOptions, DEFAULT_BINOMIAL_CAP,
};
use popsales::ingestion::{format_float, write_table, Table};
use popsales::{RegimeKind, WeeklySeries};

use crate::config::RunConfig;
use crate::data::{all_censored, load, prepare_out, singles_per_album};
use crate::report::Summary;
use crate::DataArgs;

const REGIMES: [RegimeKind; 3] = [RegimeKind::Base, RegimeKind::Promotion, RegimeKind::Popularity];
const POOLED: &str = "pooled";

/// Joins artists into one series with a censored week between neighbours,
/// so no transition crosses from one artist to the next.
fn pooled(series: &[&WeeklySeries], labels: &[&Vec<RegimeKind>]) -> (WeeklySeries, Vec<RegimeKind>) {
    let (mut values, mut censored, mut kinds) = (Vec::new(), Vec::new(), Vec::new());
    for (s, l) in series.iter().zip(labels) {
        if !values.is_empty() {
            values.push(0.0);
            censored.push(true);
            kinds.push(RegimeKind::Base);
        }
        values.extend_from_slice(&s.values);
        censored.extend_from_slice(&s.censored);
        kinds.extend_from_slice(l);
    }
    (WeeklySeries::new(POOLED, 0, values, censored).expect("parts are valid series"), kinds)
}

pub fn run(cfg: &RunConfig, args: &DataArgs, events: Option<&Path>) -> Result<()> {
    let data = load(cfg, args)?;
    let params = cfg.model_params()?;
    let mode = params.noise_mode;
    let out = &cfg.outputs;
    prepare_out(out)?;

    let mut summary = Summary::new(format!("estimate: {}", args.data.display()));
    summary.add("artists", data.panel.series.len());
    summary.add("censored_weeks", data.panel.censored_count());
    summary.add("labels", if data.labels_from_file { "file" } else { "chart presence" });

    let mut skipped = Table::new(["artist_id", "reason"]);
    let mut kept: Vec<(&WeeklySeries, &Vec<RegimeKind>)> = Vec::new();
    for (s, l) in data.panel.series.iter().zip(&data.labels) {
        if all_censored(s) {
            skipped.push(vec![s.artist_id.clone(), "all weeks censored".into()]);
            summary.note(format!("skipped artist `{}`: all weeks censored", s.artist_id));
        } else {
            kept.push((s, l));
        }
    }
    write_table(out.join("skipped.csv"), &skipped)?;
    summary.add("artists_used", kept.len());
    if kept.is_empty() {
        return Err(popsales::Error::AllCensored("every artist in the data is fully censored".into()).into());
    }

    // Mean-reversion parameters per regime, pooled and per artist.
    let mut mr = Table::new([
        "scope", "artist_id", "regime", "a", "b", "s", "log_likelihood", "n_used", "excluded_censored",
        "excluded_regime", "excluded_zero", "status",
    ]);
    let series: Vec<&WeeklySeries> = kept.iter().map(|k| k.0).collect();
    let labels: Vec<&Vec<RegimeKind>> = kept.iter().map(|k| k.1).collect();
    let (pool, pool_labels) = pooled(&series, &labels);
    let mut scopes = vec![(POOLED, "", &pool, &pool_labels)];
    scopes.extend(kept.iter().map(|(s, l)| ("artist", s.artist_id.as_str(), *s, *l)));
    for (scope, artist, s, l) in scopes {
        for regime in REGIMES {
            let row = match estimate_mr_params(s, l, regime, mode) {
                Ok(e) => {
                    if scope == POOLED {
                        summary.add(
                            format!("{regime}_mr"),
                            format!(
                                "a = {}, b = {}, s = {} (n = {})",
                                format_float(e.a),
                                format_float(e.b),
                                format_float(e.s),
                                e.n_used
                            ),
                        );
                    }
                    vec![
                        format_float(e.a),
                        format_float(e.b),
                        format_float(e.s),
                        format_float(e.log_likelihood),
                        e.n_used.to_string(),
                        e.excluded_censored.to_string(),
                        e.excluded_regime.to_string(),
                        e.excluded_zero.to_string(),
                        "ok".into(),
                    ]
                }
                Err(err) => {
                    if scope == POOLED {
                        summary.note(format!("{regime} mean reversion not estimated: {err}"));
                    }
                    let mut r = vec![String::new(); 8];
                    r.push(err.to_string());
                    r
                }
            };
            let mut full = vec![scope.to_string(), artist.to_string(), regime.to_string()];
            full.extend(row);
            mr.push(full);
        }
    }
    write_table(out.join("mr.csv"), &mr)?;

    // Switching rates: events and exposures summed over artists.
    let mut tr = Table::new(["scope", "artist_id", "rate", "value", "events", "exposure", "low_confidence"]);
    let mut totals = [(0usize, 0usize); 2];
    for (s, l) in &kept {
        let Ok(est) = estimate_transition_probs(l) else { continue };
        for (k, (name, rate)) in [("q12", est.q12), ("q22_exit", est.q22_exit)].into_iter().enumerate() {
            if let Some(r) = rate {
                totals[k].0 += r.events;
                totals[k].1 += r.exposure;
                tr.push(vec![
                    "artist".into(),
                    s.artist_id.clone(),
                    name.into(),
                    format_float(r.value),
                    r.events.to_string(),
                    r.exposure.to_string(),
                    r.low_confidence.to_string(),
                ]);
            }
        }
    }
    for (name, (events, exposure)) in ["q12", "q22_exit"].into_iter().zip(totals) {
        if exposure == 0 {
            summary.note(format!("{name}: state never visited"));
            continue;
        }
        let value = events as f64 / exposure as f64;
        tr.rows.insert(
            0,
            vec![
                POOLED.into(),
                String::new(),
                name.into(),
                format_float(value),
                events.to_string(),
                exposure.to_string(),
                (events == 0).to_string(),
            ],
        );
        summary.add(
            name,
            format!("{} (mean sojourn {} weeks, {events} switches)", format_float(value), format_float(1.0 / value)),
        );
    }
    write_table(out.join("transitions.csv"), &tr)?;

    // Singles per album need the event log; sales alone do not show singles.
    match events {
        Some(path) => {
            let counts = singles_per_album(path)?;
            match fit_singles_count(&counts, DEFAULT_BINOMIAL_CAP) {
                Ok(fit) => {
                    let mut t = Table::new([
                        "albums", "poisson_lambda", "poisson_log_likelihood", "binomial_n", "binomial_theta",
                        "binomial_log_likelihood", "preferred",
                    ]);
                    let preferred = if fit.binomial_preferred() { "binomial" } else { "poisson" };
                    t.push(vec![
                        fit.albums.to_string(),
                        format_float(fit.poisson_lambda),
                        format_float(fit.poisson_log_likelihood),
                        fit.binomial_n.to_string(),
                        format_float(fit.binomial_theta),
                        format_float(fit.binomial_log_likelihood),
                        preferred.into(),
                    ]);
                    write_table(out.join("singles.csv"), &t)?;
                    summary.add(
                        "singles_per_album",
                        format!("{} over {} albums ({preferred} preferred)", format_float(fit.poisson_lambda), fit.albums),
                    );
                }
                Err(err) => summary.note(format!("singles count not fitted: {err}")),
            }
        }
        None => summary.note("singles count not fitted: pass --events to count singles per album"),
    }

    // Seasonal release profile from label onsets.
    let origin = data.panel.calendar_origin;
    let release_weeks: Vec<u32> = data
        .release_weeks()
        .iter()
        .flatten()
        .map(|&g| origin.week_of_year(g))
        .collect();
    match estimate_seasonal_profile(&release_weeks) {
        Ok(profile) => {
            let mut t = Table::new(["week", "c", "ratio"]);
            for (i, &c) in profile.c().iter().enumerate() {
                let w = i as u32 + 1;
                t.push(vec![w.to_string(), format_float(c), format_float(profile.ratio(w))]);
            }
            write_table(out.join("seasonal.csv"), &t)?;
            summary.add("releases_for_seasonality", release_weeks.len());
            summary.num("seasonal_max_ratio", profile.max_ratio());
        }
        Err(err) => summary.note(format!("seasonal profile not estimated: {err}")),
    }

    // Peak memory from per-album (peak, total) records.
    let albums: Vec<_> = kept.iter().map(|(s, l)| album_records(s, l)).collect();
    match cfg.grid().and_then(|grid| Ok(fit_memory_params(&albums, &grid)?)) {
        Ok(fit) => {
            let mut t = Table::new(["s_c", "s_s", "score", "pairs"]);
            t.push(vec![
                format_float(fit.params.s_c),
                format_float(fit.params.s_s),
                format_float(fit.mse),
                fit.pairs.to_string(),
            ]);
            write_table(out.join("memory.csv"), &t)?;
            summary.add(
                "peak_memory",
                format!("s_c = {}, s_s = {} ({} album pairs)", format_float(fit.params.s_c), format_float(fit.params.s_s), fit.pairs),
            );
        }
        Err(err) => summary.note(format!("peak memory not fitted: {err:#}")),
    }

    // Hurst exponents of the aggregate and of each artist.
    let mut hurst = Table::new(["scope", "artist_id", "method", "h", "min_window", "max_window", "n", "status"]);
    let total = data.panel.total_by_week();
    let mut targets: Vec<(&str, &str, &[f64])> = vec![("aggregate", "", &total)];
    targets.extend(kept.iter().map(|(s, _)| ("artist", s.artist_id.as_str(), s.values.as_slice())));
    for (scope, artist, x) in targets {
        for method in [HurstMethod::RescaledRange, HurstMethod::Dfa] {
            let name = match method {
                HurstMethod::RescaledRange => "rs",
                HurstMethod::Dfa => "dfa",
            };
            let mut row = vec![scope.to_string(), artist.to_string(), name.to_string()];
            match estimate_hurst(x, method, HurstOptions::default()) {
                Ok(h) => {
                    if scope == "aggregate" {
                        summary.num(format!("hurst_{name}"), h.h);
                    }
                    row.extend([
                        format_float(h.h),
                        h.min_window.to_string(),
                        h.max_window.to_string(),
                        x.len().to_string(),
                        "ok".into(),
                    ]);
                }
                Err(err) => row.extend([String::new(), String::new(), String::new(), x.len().to_string(), err.to_string()]),
            }
            hurst.push(row);
        }
    }
    write_table(out.join("hurst.csv"), &hurst)?;

    summary.print();
    summary.write(&out.join("estimate_summary.csv"))
}
