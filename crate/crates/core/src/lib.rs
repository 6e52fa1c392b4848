pub mod approx;
pub mod cli;
pub mod error;
pub mod exact;
pub mod format;
pub mod game;
pub mod planar;
pub mod rational;
pub mod reductions;
pub mod report;
pub mod smooth;
pub mod stats;
