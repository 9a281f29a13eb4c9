//! Weekly simulation of the regime-switching, mean-reverting jump diffusion.
//!
//! Each simulated week runs the same fixed sequence, and the random draws are
//! consumed in exactly this order:
//!
//! 1. regime transition: one uniform. Base moves to Promotion with the
//!    (possibly seasonal) release hazard; Promotion and Popularity fall back
//!    to Base with probability `q22_exit`.
//! 2. album release, only on a Base to Promotion transition: the release peak
//!    (one normal, log-normal or peak-memory law) then the first single's
//!    spike (one uniform).
//! 3. singles, only while promoted: one uniform for the single trial; on a
//!    single, its spike (one uniform) and one uniform for success. A
//!    successful single enters Popularity with drift `a + q`, `q` a fresh
//!    spike draw (one uniform). Any single released during Popularity ends
//!    that popularity spell first.
//! 4. diffusion: one normal, Euler step from last week's level with the drift
//!    now in force, floored at zero, then the week's jumps are added.

mod cohort;
mod draws;
mod seasonal;
mod stats;

pub use cohort::{simulate_cohort, simulate_ensemble, Cohort, ModelKind};
pub use draws::{
    draw_peak_memory, draw_release_jump, draw_release_peak, draw_single_spike, euler_step,
    peak_from_memory, step_base,
};
pub use seasonal::SeasonalProfile;
pub use stats::{episodes, release_weeks, Episode, EnsembleSummary};

use crate::calendar::CalendarOrigin;
use crate::error::Result;
use crate::params::{MemoryParams, ModelParams};
use crate::regime::RegimeState;
use crate::rng::RngStream;
use crate::series::WeeklySeries;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EventKind {
    /// `peak_value` is the release peak itself (log-normal or peak-memory
    /// draw), without the first single's spike.
    AlbumRelease { album_index: u32, peak_value: f64 },
    SingleRelease { success: bool },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimEvent {
    /// Offset from the start of the trajectory.
    pub week: usize,
    pub kind: EventKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationOutput {
    pub series: WeeklySeries,
    pub regimes: Vec<RegimeState>,
    pub events: Vec<SimEvent>,
    /// Non-fatal notices, e.g. a seasonal hazard clamped at 1.
    pub warnings: Vec<String>,
}

/// Release-hazard law and peak law of one engine run.
#[derive(Debug, Clone, Copy)]
enum Engine<'a> {
    Stationary,
    Seasonal {
        profile: &'a SeasonalProfile,
        memory: &'a MemoryParams,
        origin: CalendarOrigin,
    },
}

/// Trajectory under the stationary model, starting in Base at `a / b`.
pub fn simulate_stationary(
    params: &ModelParams,
    horizon_weeks: usize,
    rng: &mut RngStream,
) -> Result<SimulationOutput> {
    params.validate()?;
    run(params, Engine::Stationary, 0, horizon_weeks, rng)
}

/// Trajectory with a seasonal release hazard and peak memory.
///
/// Week 0 of the trajectory is week 1 of the calendar year.
pub fn simulate_nonstationary(
    params: &ModelParams,
    profile: &SeasonalProfile,
    memory: &MemoryParams,
    horizon_weeks: usize,
    rng: &mut RngStream,
) -> Result<SimulationOutput> {
    simulate_nonstationary_with_warmup(params, profile, memory, 0, horizon_weeks, rng)
}

/// Like [`simulate_nonstationary`], but first runs `warmup_weeks` unrecorded
/// weeks so the recorded part starts from a settled regime mix and peak
/// memory. The warm-up ends right before week 1 of a calendar year when
/// `warmup_weeks` is a multiple of 52.
pub fn simulate_nonstationary_with_warmup(
    params: &ModelParams,
    profile: &SeasonalProfile,
    memory: &MemoryParams,
    warmup_weeks: usize,
    horizon_weeks: usize,
    rng: &mut RngStream,
) -> Result<SimulationOutput> {
    params.validate()?;
    memory.validate()?;
    let engine = Engine::Seasonal {
        profile,
        memory,
        origin: CalendarOrigin::default(),
    };
    run(params, engine, warmup_weeks, horizon_weeks, rng)
}

fn run(
    params: &ModelParams,
    engine: Engine<'_>,
    warmup: usize,
    horizon: usize,
    rng: &mut RngStream,
) -> Result<SimulationOutput> {
    let mut warnings = Vec::new();
    if let Engine::Seasonal { profile, .. } = engine {
        let peak_hazard = params.q12 * profile.max_ratio();
        if peak_hazard > 1.0 {
            let msg = format!(
                "seasonal release hazard q12 * max(c) / mean_c = {peak_hazard:.6} exceeds 1; clamped to 1"
            );
            log::warn!("{msg}");
            warnings.push(msg);
        }
    }

    let mut values = Vec::with_capacity(horizon);
    let mut regimes = Vec::with_capacity(horizon);
    let mut events = Vec::new();

    let mut state = RegimeState::Base;
    let mut x = params.base_level();
    let mut album_index = 0u32;
    let mut episode_total = 0.0;
    let mut last_episode_total = 0.0;

    for step in 0..warmup + horizon {
        let recording = step >= warmup;
        let week = step.wrapping_sub(warmup);
        let previous = state;

        let hazard = match engine {
            Engine::Stationary => params.q12,
            Engine::Seasonal { profile, origin, .. } => {
                let w = origin.week_of_year(step as i64 - warmup as i64);
                (params.q12 * profile.ratio(w)).clamp(0.0, 1.0)
            }
        };
        let u = rng.unit();
        let released = matches!(previous, RegimeState::Base) && u < hazard;
        state = match previous {
            RegimeState::Base if released => RegimeState::Promotion,
            RegimeState::Base => RegimeState::Base,
            promoted => {
                if u < params.q22_exit {
                    RegimeState::Base
                } else {
                    promoted
                }
            }
        };

        let mut jump = 0.0;
        if released {
            album_index += 1;
            let peak = match engine {
                Engine::Stationary => draw_release_peak(params, rng),
                Engine::Seasonal { memory, .. } => {
                    draw_peak_memory(album_index, last_episode_total, memory, params, rng)?
                }
            };
            jump += peak + draw_single_spike(params, rng);
            episode_total = 0.0;
            if recording {
                events.push(SimEvent {
                    week,
                    kind: EventKind::AlbumRelease {
                        album_index,
                        peak_value: peak,
                    },
                });
            }
        }

        if state.in_promotion() && rng.bernoulli(params.p) {
            jump += draw_single_spike(params, rng);
            let success = rng.bernoulli(params.p_prime);
            state = if success {
                let q = draw_single_spike(params, rng);
                RegimeState::Popularity {
                    elevated_drift: params.a + q,
                }
            } else {
                RegimeState::Promotion
            };
            if recording {
                events.push(SimEvent {
                    week,
                    kind: EventKind::SingleRelease { success },
                });
            }
        }

        x = euler_step(x, state.drift(params.a), params, rng.normal()) + jump;
        if recording {
            values.push(x);
            regimes.push(state);
        }

        if state.in_promotion() {
            episode_total += x;
        } else if previous.in_promotion() {
            last_episode_total = episode_total;
        }
    }

    let artist_id = format!("artist_{:03}", rng.stream_id());
    let series = WeeklySeries::uncensored(artist_id, 0, values)?;
    Ok(SimulationOutput {
        series,
        regimes,
        events,
        warnings,
    })
}
