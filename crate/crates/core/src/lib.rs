//! Simulation, calibration and diagnostics for weekly record-sales trajectories.
//!
//! Sales follow a mean-reverting geometric random walk that switches between
//! a Base regime and an album Promotion regime (with a Popularity sub-state),
//! with log-normal release peaks and uniform single spikes. A non-stationary
//! variant adds a seasonal release hazard and a release-peak memory.
//!
//! Modules:
//! - [`simulator`]: trajectories, cohorts and ensembles.
//! - [`estimation`]: calibrating the model from data.
//! - [`analytics`]: autocorrelation, periodogram, seasonal aggregates.
//! - [`clustering`]: correlation-distance trees over artists.
//! - [`ingestion`]: chart-file parsing and CSV export.

pub mod analytics;
pub mod calendar;
pub mod clustering;
pub mod error;
pub mod estimation;
pub mod exec;
pub mod ingestion;
pub mod params;
pub mod regime;
pub mod rng;
pub mod series;
pub mod simulator;

pub use calendar::{week_of_year, CalendarOrigin};
pub use error::{Error, Result};
pub use exec::Execution;
pub use params::{MemoryParams, ModelParams, NoiseMode};
pub use regime::{RegimeKind, RegimeState};
pub use rng::RngStream;
pub use series::{Panel, WeeklySeries};
