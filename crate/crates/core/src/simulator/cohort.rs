use super::{simulate_nonstationary_with_warmup, simulate_stationary, SeasonalProfile, SimulationOutput};
use crate::calendar::CalendarOrigin;
use crate::error::Result;
use crate::exec::Execution;
use crate::params::{MemoryParams, ModelParams};
use crate::rng::RngStream;
use crate::series::Panel;

/// Which engine a cohort runs.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelKind {
    Stationary,
    NonStationary {
        profile: SeasonalProfile,
        memory: MemoryParams,
        /// Unrecorded weeks simulated before week 0.
        warmup_weeks: usize,
    },
}

/// Independent artists simulated on one calendar.
#[derive(Debug, Clone, PartialEq)]
pub struct Cohort {
    pub panel: Panel,
    pub outputs: Vec<SimulationOutput>,
}

impl ModelKind {
    fn simulate(&self, params: &ModelParams, horizon: usize, rng: &mut RngStream) -> Result<SimulationOutput> {
        match self {
            ModelKind::Stationary => simulate_stationary(params, horizon, rng),
            ModelKind::NonStationary {
                profile,
                memory,
                warmup_weeks,
            } => simulate_nonstationary_with_warmup(params, profile, memory, *warmup_weeks, horizon, rng),
        }
    }
}

/// `n_artists` trajectories on streams `(seed, 0..n_artists)`.
pub fn simulate_cohort(
    params: &ModelParams,
    model: &ModelKind,
    n_artists: usize,
    horizon_weeks: usize,
    seed: u64,
    exec: Execution,
) -> Result<Cohort> {
    simulate_streams(params, model, 0, n_artists, horizon_weeks, seed, exec)
}

/// `n_ensembles` cohorts; ensemble `e` uses streams `e * n_artists ..`.
///
/// Ensemble 0 is identical to [`simulate_cohort`] with the same seed.
pub fn simulate_ensemble(
    params: &ModelParams,
    model: &ModelKind,
    n_artists: usize,
    horizon_weeks: usize,
    seed: u64,
    n_ensembles: usize,
    exec: Execution,
) -> Result<Vec<Cohort>> {
    let n_total = n_artists * n_ensembles;
    let all = run_streams(params, model, 0, n_total, horizon_weeks, seed, exec)?;
    let mut it = all.into_iter();
    Ok((0..n_ensembles)
        .map(|_| assemble(it.by_ref().take(n_artists).collect()))
        .collect())
}

fn simulate_streams(
    params: &ModelParams,
    model: &ModelKind,
    first_stream: u64,
    n: usize,
    horizon: usize,
    seed: u64,
    exec: Execution,
) -> Result<Cohort> {
    Ok(assemble(run_streams(params, model, first_stream, n, horizon, seed, exec)?))
}

fn run_streams(
    params: &ModelParams,
    model: &ModelKind,
    first_stream: u64,
    n: usize,
    horizon: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<SimulationOutput>> {
    params.validate()?;
    exec.map_indexed(n, |i| {
        let mut rng = RngStream::new(seed, first_stream + i as u64);
        model.simulate(params, horizon, &mut rng)
    })
    .into_iter()
    .collect()
}

fn assemble(outputs: Vec<SimulationOutput>) -> Cohort {
    let series = outputs.iter().map(|o| o.series.clone()).collect();
    Cohort {
        panel: Panel::new(series, CalendarOrigin::default()),
        outputs,
    }
}
