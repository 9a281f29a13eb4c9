pub mod analyze;
pub mod cluster;
pub mod compare;
pub mod estimate;
pub mod simulate;
pub mod diagnostics;
