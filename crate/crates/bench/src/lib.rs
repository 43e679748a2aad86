//! Benchmark harness for outlier-robust k-means seeding: experiment
//! configuration, the repetition runner, table renderers, and the
//! verification suite. The CLI in `main.rs` is a thin shell over these.

pub mod config;
pub mod report;
pub mod runner;
pub mod verify;
