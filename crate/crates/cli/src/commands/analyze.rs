use anyhow::Result;
use popsales::analytics::{acf, aggregate_week_of_year, bartlett_band};
use popsales::ingestion::{export_acf, export_aggregate, export_histogram, export_spectrum, format_float};

use super::diagnostics::Diagnostics;
use crate::config::RunConfig;
use crate::data::{load, prepare_out};
use crate::report::Summary;
use crate::DataArgs;

pub fn run(cfg: &RunConfig, args: &DataArgs) -> Result<()> {
    let data = load(cfg, args)?;
    let out = &cfg.outputs;
    prepare_out(out)?;
    let total = data.panel.total_by_week();
    let n = total.len();

    let mut summary = Summary::new(format!("analyze: {}", args.data.display()));
    data.describe(&mut summary);
    summary.add("artists", data.panel.series.len());
    summary.add("weeks", n);
    summary.add("censored_weeks", data.panel.censored_count());

    let max_lag = cfg.analysis.max_lag.min(n.saturating_sub(1));
    match acf(&total, max_lag) {
        Ok(r) => {
            export_acf(&r, n, out.join("acf.csv"))?;
            let band = bartlett_band(n);
            let inside = r[1..].iter().filter(|v| v.abs() <= band).count();
            summary.add("acf_max_lag", max_lag);
            summary.num("acf_band", band);
            if max_lag > 0 {
                summary.num("acf_share_inside_band", inside as f64 / max_lag as f64);
            }
            match r.iter().skip(1).position(|&v| v <= band) {
                Some(k) => summary.add("acf_first_lag_inside_band", k + 1),
                None => summary.add("acf_first_lag_inside_band", format!("> {max_lag}")),
            }
        }
        Err(err) => summary.note(format!("acf not computed: {err}")),
    }

    let releases = data.release_weeks();
    let diag = Diagnostics::new(
        &total,
        aggregate_week_of_year(&data.panel),
        &releases,
        cfg.analysis.interval_bin_weeks,
    );
    match &diag.spectrum {
        Ok(spectrum) => {
            export_spectrum(spectrum, out.join("spectrum.csv"))?;
            match diag.dominant_period() {
                Some(p) => summary.num("dominant_period_weeks", p),
                None => summary.note("periodogram has no nonzero frequency"),
            }
        }
        Err(err) => summary.note(format!("periodogram not computed: {err}")),
    }
    export_aggregate(&diag.aggregate, out.join("aggregate.csv"))?;
    match &diag.peak_to_base {
        Ok(r) => summary.add("peak_to_base_percent", format_float(*r)),
        Err(err) => summary.note(format!("peak-to-base ratio not computed: {err}")),
    }
    match &diag.intervals {
        Ok(h) => {
            export_histogram(h, out.join("intervals.csv"))?;
            summary.add("release_intervals", h.gaps.len());
            if let Some(m) = h.mean_gap() {
                summary.num("mean_release_interval_weeks", m);
            }
            if let Some(k) = h.modal_bin() {
                summary.add("modal_interval_bin", format!("{}..{}", h.bin_start(k), h.bin_start(k) + h.bin_width));
            }
            for w in &h.warnings {
                summary.note(w.clone());
            }
        }
        Err(err) => summary.note(format!("release intervals not computed: {err}")),
    }

    summary.print();
    summary.write(&out.join("analyze_summary.csv"))
}
