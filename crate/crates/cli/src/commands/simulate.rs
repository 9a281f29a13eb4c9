use anyhow::Result;
use popsales::ingestion::{export_events, export_panel, export_regimes};
use popsales::simulator::{simulate_cohort, EnsembleSummary};
use popsales::{Execution, Panel, RegimeKind};

use crate::config::RunConfig;
use crate::data::prepare_out;
use crate::report::Summary;

pub fn run(cfg: &RunConfig) -> Result<()> {
    let params = cfg.model_params()?;
    let model = cfg.model_kind()?;
    let cohort = simulate_cohort(
        &params,
        &model,
        cfg.cohort.n_artists,
        cfg.cohort.horizon_weeks,
        cfg.seed,
        Execution::default(),
    )?;
    let origin = cohort.panel.calendar_origin;

    let out = &cfg.outputs;
    let traj_dir = out.join("trajectories");
    prepare_out(&traj_dir)?;
    for o in &cohort.outputs {
        let one = Panel::new(vec![o.series.clone()], origin);
        export_panel(&one, traj_dir.join(format!("{}.csv", o.series.artist_id)))?;
    }
    export_panel(&cohort.panel, out.join("panel.csv"))?;
    let kinds: Vec<(String, i64, Vec<RegimeKind>)> = cohort
        .outputs
        .iter()
        .map(|o| (o.series.artist_id.clone(), o.series.start_week, o.regime_kinds()))
        .collect();
    export_regimes(kinds.iter().map(|(a, s, k)| (a.as_str(), *s, k.as_slice())), &origin, out.join("regimes.csv"))?;
    export_events(&cohort.outputs, &origin, out.join("events.csv"))?;

    let s = EnsembleSummary::from_outputs(&cohort.outputs);
    let mut summary = Summary::new(format!("simulate: {} artists x {} weeks", s.trajectories, cfg.cohort.horizon_weeks));
    summary.add("model", if cfg.cohort.nonstationary { "nonstationary" } else { "stationary" });
    summary.add("seed", cfg.seed);
    summary.add("releases", s.releases);
    summary.add("completed_episodes", s.completed_episodes);
    summary.num("mean_release_interval_weeks", s.mean_release_interval);
    summary.num("mean_promotion_length_weeks", s.mean_promotion_length);
    summary.num("singles_per_album", s.singles_per_album);
    summary.num("popularity_entries_per_album", s.popularity_per_album);
    summary.num("popularity_album_fraction", s.popularity_ever_fraction);
    if let Some(w) = cohort.outputs.iter().flat_map(|o| o.warnings.first()).next() {
        summary.note(w.clone());
    }
    if s.completed_episodes < 10_000 {
        summary.note(format!(
            "{} completed episodes; rate estimates settle to within a few percent only from about 10^4",
            s.completed_episodes
        ));
    }
    summary.print();
    summary.write(&out.join("summary.csv"))
}
