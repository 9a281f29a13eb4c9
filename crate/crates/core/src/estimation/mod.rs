//! Calibration of the sales model from observed or simulated data.

mod counts;
mod hurst;
mod labels;
mod memory;
mod mr;
mod seasonal;
mod transitions;

pub use counts::{fit_singles_count, CountFit, DEFAULT_BINOMIAL_CAP};
pub use hurst::{estimate_hurst, HurstEstimate, HurstMethod, HurstOptions};
pub use labels::{album_records, label_from_presence};
pub use memory::{fit_memory_params, AlbumRecord, MemoryFit, MemoryGrid};
pub use mr::{estimate_mr_params, mr_log_likelihood, usable_pairs, MrEstimate, UsablePairs};
pub use seasonal::estimate_seasonal_profile;
pub use transitions::{estimate_transition_probs, RateEstimate, TransitionEstimate};
