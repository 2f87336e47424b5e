//! Benchmark harness for the cipherbench suite: deterministic workloads,
//! timed runs over the cipher × mode × size grid, and the reports built from
//! them.

pub mod fixtures;
pub mod harness;
pub mod memory;
pub mod report;
pub mod stats;
pub mod workload;

pub use harness::{
    resolve_seed, run_case, run_suite, run_suite_with_progress, BenchConfig, BenchError,
    BenchResult, Direction, RunOptions, Sample, DEFAULT_SEED, SEED_ENV,
};
pub use memory::sample_peak_memory;
pub use workload::{generate_workload, Workload, MIB, WORKLOAD_GENERATOR};

/// Timing statistics in the precision the harness records.
pub type TimingSummary = stats::Summary<f64>;
